#include "conekit/document.hpp"

#include <algorithm>
#include <cstdio>
#include <regex>
#include <set>

#include "conekit/errors.hpp"

namespace conekit {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& why) { throw Error("SchemaError", path + ": " + why); }
[[noreturn]] void shape(const std::string& path, const std::string& why) { throw Error("RankMismatch", path + ": " + why); }

std::string at(const std::string& path, const std::string& key) { return path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) schema(path, "expected an object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok |= k == a;
    if (!ok) schema(at(path, k), "unknown field");
  }
}

const json& need(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) schema(at(path, key), "missing field");
  return j.at(key);
}

const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array");
  return j;
}

Int read_int(const json& j, const std::string& path) {
  static const std::regex digits("-?[0-9]+");
  if (j.is_number_integer()) return Int(j.dump());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (!std::regex_match(s, digits)) schema(path, "not an integer: \"" + s + "\"");
    return Int(s);
  }
  schema(path, "expected an integer or a decimal string");
}

Rat read_rat(const json& j, const std::string& path) {
  static const std::regex frac("(-?[0-9]+)(/([0-9]+))?");
  if (j.is_number_integer()) return Rat(Int(j.dump()));
  std::smatch m;
  if (!j.is_string()) schema(path, "expected a rational \"a/b\"");
  const auto& s = j.get_ref<const std::string&>();
  if (!std::regex_match(s, m, frac)) schema(path, "not a rational: \"" + s + "\"");
  Int den = m[3].matched ? Int(m[3].str()) : Int(1);
  if (den == 0) schema(path, "zero denominator");
  Rat r(Int(m[1].str()), den);
  r.canonicalize();
  return r;
}

std::size_t read_size(const json& j, const std::string& path) {
  Int v = read_int(j, path);
  if (v < 0 || v > 1'000'000) schema(path, "expected a small nonnegative integer");
  return v.get_ui();
}

IntVec read_vec(const json& j, const std::string& path, std::size_t n) {
  array(j, path);
  if (j.size() != n) shape(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
  IntVec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(read_int(j[i], at(path, i)));
  return v;
}

std::vector<IntVec> read_vecs(const json& j, const std::string& path, std::size_t n) {
  array(j, path);
  std::vector<IntVec> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_vec(j[i], at(path, i), n));
  return out;
}

RatVec read_ratvec(const json& j, const std::string& path, std::size_t n) {
  array(j, path);
  if (j.size() != n) shape(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
  RatVec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(read_rat(j[i], at(path, i)));
  return v;
}

IntMatrix read_matrix(const json& j, const std::string& path, std::size_t rows, std::size_t cols) {
  array(j, path);
  if (j.size() != rows) shape(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  return IntMatrix::from_rows(read_vecs(j, path, cols), cols);
}

// Library errors raised while assembling a value are re-tagged with the field path.
template <class F>
auto guarded(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    std::string msg = e.what();
    std::string prefix = e.kind() + ": ";
    if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
    throw Error(e.kind(), path + ": " + msg);
  }
}

FineMonoid read_monoid(const json& j, const std::string& path) {
  check_keys(j, path, {"ambient_rank", "generators", "presentation"});
  if (j.contains("presentation")) {
    if (j.contains("generators")) schema(path, "give either generators or a presentation");
    const json& p = j.at("presentation");
    std::string pp = at(path, "presentation");
    check_keys(p, pp, {"generators", "relations"});
    std::size_t k = read_size(need(p, pp, "generators"), at(pp, "generators"));
    auto rel = read_vecs(need(p, pp, "relations"), at(pp, "relations"), k);
    return guarded(pp, [&] { return FineMonoid::from_presentation(k, rel); });
  }
  std::size_t n = read_size(need(j, path, "ambient_rank"), at(path, "ambient_rank"));
  auto gens = read_vecs(need(j, path, "generators"), at(path, "generators"), n);
  return guarded(path, [&] { return FineMonoid(n, gens); });
}

NamedVectors read_names(const json& j, const std::string& path, std::size_t n) {
  if (!j.is_object()) schema(path, "expected an object of named vectors");
  NamedVectors out;
  for (const auto& [k, v] : j.items()) out.emplace_back(k, read_vec(v, at(path, k), n));
  return out;  // nlohmann orders keys, so this is sorted
}

struct BaseDefault {
  std::optional<FineMonoid> base;
  const json* base_map = nullptr;
  std::string base_map_path;
};

BaseDefault read_base_default(const json& j, const std::string& path) {
  BaseDefault d;
  if (j.contains("base")) d.base = read_monoid(j.at("base"), at(path, "base"));
  if (j.contains("base_map")) {
    if (!d.base) schema(at(path, "base_map"), "base_map without base");
    d.base_map = &j.at("base_map");
    d.base_map_path = at(path, "base_map");
  }
  return d;
}

PoGroup read_cell(const json& j, const std::string& path, const BaseDefault& def) {
  check_keys(j, path, {"rank", "positives", "realization", "base", "base_map"});
  std::size_t n = read_size(need(j, path, "rank"), at(path, "rank"));
  Cone pos;
  if (j.contains("positives") == j.contains("realization")) schema(path, "give exactly one of positives, realization");
  if (j.contains("positives")) {
    pos = Cone::from_generators(n, read_vecs(j.at("positives"), at(path, "positives"), n));
  } else {
    pos = Cone::from_generators(n, read_vecs(j.at("realization"), at(path, "realization"), n)).dual();
  }
  BaseDefault own = read_base_default(j, path);
  const BaseDefault& b = own.base ? own : def;
  if (!b.base) return guarded(path, [&] { return PoGroup(n, pos); });
  IntMatrix bm(n, b.base->ambient());
  if (b.base_map)
    bm = read_matrix(*b.base_map, b.base_map_path, n, b.base->ambient());
  else if (b.base->ambient() != 0)
    schema(at(path, "base_map"), "missing field");
  return guarded(path, [&] { return PoGroup(n, pos, *b.base, bm); });
}

MultiCharacter read_multichar(const json& j, const std::string& path, std::size_t n) {
  return guarded(path, [&] { return MultiCharacter(n, read_vecs(j, path, n)); });
}

}  // namespace

Document parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error("SchemaError", "line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
  }
  return document_from_json(j);
}

Document document_from_json(const json& j) {
  const std::string root = "$";
  if (!j.is_object()) schema(root, "expected an object");
  Document d;
  const json& kind = need(j, root, "kind");
  if (!kind.is_string()) schema("$.kind", "expected a string");
  d.kind = kind.get<std::string>();
  if (j.contains("schema") && j.at("schema") != kSchemaVersion)
    schema("$.schema", std::string("unsupported version, expected ") + kSchemaVersion);
  if (j.contains("name")) {
    if (!j.at("name").is_string()) schema("$.name", "expected a string");
    d.name = j.at("name").get<std::string>();
  }
  if (j.contains("note")) {
    if (!j.at("note").is_string()) schema("$.note", "expected a string");
    d.note = j.at("note").get<std::string>();
  }
  if (j.contains("expected")) {
    if (!j.at("expected").is_object()) schema("$.expected", "expected an object");
    d.expected = j.at("expected");
  }
  if (j.contains("points")) {
    const json& p = array(j.at("points"), "$.points");
    for (std::size_t i = 0; i < p.size(); ++i) {
      std::string pp = at("$.points", i);
      d.points.push_back(read_vec(p[i], pp, array(p[i], pp).size()));
    }
  }
  auto keys = [&](std::initializer_list<const char*> extra) {
    std::vector<const char*> all{"kind", "schema", "name", "note", "expected", "points"};
    all.insert(all.end(), extra.begin(), extra.end());
    for (const auto& [k, v] : j.items())
      if (std::find_if(all.begin(), all.end(), [&](const char* a) { return k == a; }) == all.end())
        schema(at(root, k), "unknown field for kind " + d.kind);
  };

  if (d.kind == "monoid") {
    keys({"ambient_rank", "generators", "presentation"});
    json body = json::object();
    for (const char* k : {"ambient_rank", "generators", "presentation"})
      if (j.contains(k)) body[k] = j.at(k);
    d.monoid = read_monoid(body, root);
  } else if (d.kind == "morphism") {
    keys({"source", "target", "matrix", "source_names", "target_names"});
    FineMonoid s = read_monoid(need(j, root, "source"), "$.source");
    FineMonoid t = read_monoid(need(j, root, "target"), "$.target");
    const json& m = array(need(j, root, "matrix"), "$.matrix");
    if (m.size() != t.ambient())
      shape("$.matrix", std::to_string(m.size()) + " rows for a target of rank " + std::to_string(t.ambient()));
    for (std::size_t i = 0; i < m.size(); ++i)
      if (array(m[i], at("$.matrix", i)).size() != s.ambient())
        shape(at("$.matrix", i), std::to_string(m[i].size()) + " columns for a source of rank " + std::to_string(s.ambient()));
    IntMatrix mat = read_matrix(m, "$.matrix", t.ambient(), s.ambient());
    d.morphism = guarded(root, [&] { return MonoidMap(s, t, mat); });
    if (j.contains("source_names")) d.source_names = read_names(j.at("source_names"), "$.source_names", s.ambient());
    if (j.contains("target_names")) d.target_names = read_names(j.at("target_names"), "$.target_names", t.ambient());
  } else if (d.kind == "complex") {
    keys({"cells", "pieces", "gluings", "shared_ambient", "base", "base_map"});
    BaseDefault def = read_base_default(j, root);
    if (j.contains("pieces") == j.contains("cells")) schema(root, "give exactly one of cells, pieces");
    Complex c;
    if (j.contains("pieces")) {
      if (j.contains("gluings") || j.contains("shared_ambient")) schema(root, "pieces are glued automatically");
      const json& p = array(j.at("pieces"), "$.pieces");
      std::vector<PoGroup> pieces;
      for (std::size_t i = 0; i < p.size(); ++i) pieces.push_back(read_cell(p[i], at("$.pieces", i), def));
      c = guarded("$.pieces", [&] { return Complex::from_pieces(pieces); });
    } else {
      const json& cs = array(j.at("cells"), "$.cells");
      for (std::size_t i = 0; i < cs.size(); ++i) c.cells.push_back(read_cell(cs[i], at("$.cells", i), def));
      if (j.contains("shared_ambient")) {
        if (!j.at("shared_ambient").is_boolean()) schema("$.shared_ambient", "expected a boolean");
        c.shared_ambient = j.at("shared_ambient").get<bool>();
      }
      if (j.contains("gluings")) {
        const json& gs = array(j.at("gluings"), "$.gluings");
        for (std::size_t i = 0; i < gs.size(); ++i) {
          std::string gp = at("$.gluings", i);
          check_keys(gs[i], gp, {"a", "pa", "b", "pb"});
          Gluing g;
          g.a = read_size(need(gs[i], gp, "a"), at(gp, "a"));
          g.b = read_size(need(gs[i], gp, "b"), at(gp, "b"));
          if (g.a >= c.cells.size()) schema(at(gp, "a"), "cell index out of range");
          if (g.b >= c.cells.size()) schema(at(gp, "b"), "cell index out of range");
          const json& pa = array(need(gs[i], gp, "pa"), at(gp, "pa"));
          const json& pb = array(need(gs[i], gp, "pb"), at(gp, "pb"));
          g.pa = read_matrix(pa, at(gp, "pa"), pa.size(), c.cells[g.a].rank());
          g.pb = read_matrix(pb, at(gp, "pb"), pa.size(), c.cells[g.b].rank());
          c.gluings.push_back(g);
        }
      }
      guarded(root, [&] {
        c.validate();
        return 0;
      });
    }
    d.complex = c;
  } else if (d.kind == "subdivision") {
    keys({"sigma", "pieces", "base", "base_map"});
    BaseDefault def = read_base_default(j, root);
    d.sigma = read_cell(need(j, root, "sigma"), "$.sigma", def);
    const json& p = array(need(j, root, "pieces"), "$.pieces");
    for (std::size_t i = 0; i < p.size(); ++i) {
      d.pieces.push_back(read_cell(p[i], at("$.pieces", i), def));
      if (d.pieces.back().rank() != d.sigma->rank()) shape(at("$.pieces", i), "rank differs from sigma");
    }
  } else if (d.kind == "multichar") {
    keys({"ambient_rank", "characters", "cone", "base", "base_map"});
    std::size_t n = read_size(need(j, root, "ambient_rank"), "$.ambient_rank");
    d.multichar = read_multichar(need(j, root, "characters"), "$.characters", n);
    BaseDefault def = read_base_default(j, root);
    if (j.contains("cone")) {
      d.sigma = read_cell(j.at("cone"), "$.cone", def);
      if (d.sigma->rank() != n) shape("$.cone.rank", "cone rank differs from ambient_rank");
    }
  } else if (d.kind == "flags") {
    keys({"fan", "bundle_rank", "flags", "psi"});
    const json& f = need(j, root, "fan");
    check_keys(f, "$.fan", {"rank", "rays", "cones"});
    d.fan.n = read_size(need(f, "$.fan", "rank"), "$.fan.rank");
    d.fan.rays = read_vecs(need(f, "$.fan", "rays"), "$.fan.rays", d.fan.n);
    const json& cs = array(need(f, "$.fan", "cones"), "$.fan.cones");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      std::string cp = at("$.fan.cones", i);
      std::vector<std::size_t> idx;
      for (std::size_t k = 0; k < array(cs[i], cp).size(); ++k) {
        idx.push_back(read_size(cs[i][k], at(cp, k)));
        if (idx.back() >= d.fan.rays.size()) schema(at(cp, k), "ray index out of range");
      }
      d.fan.cones.push_back(idx);
    }
    std::size_t r = read_size(need(j, root, "bundle_rank"), "$.bundle_rank");
    const json& fl = array(need(j, root, "flags"), "$.flags");
    if (fl.size() != d.fan.rays.size()) shape("$.flags", "one flag per ray expected");
    for (std::size_t i = 0; i < fl.size(); ++i) {
      std::string fp = at("$.flags", i);
      check_keys(fl[i], fp, {"weights", "steps"});
      WeightedFlag w;
      w.r = r;
      const json& ws = array(need(fl[i], fp, "weights"), at(fp, "weights"));
      for (std::size_t k = 0; k < ws.size(); ++k) w.weights.push_back(read_int(ws[k], at(at(fp, "weights"), k)));
      const json& st = array(need(fl[i], fp, "steps"), at(fp, "steps"));
      if (st.size() != ws.size()) shape(at(fp, "steps"), "one step per weight expected");
      for (std::size_t k = 0; k < st.size(); ++k) {
        std::string sp = at(at(fp, "steps"), k);
        std::vector<RatVec> span;
        for (std::size_t m = 0; m < array(st[k], sp).size(); ++m) span.push_back(read_ratvec(st[k][m], at(sp, m), r));
        w.steps.emplace_back(r, span);
      }
      guarded(fp, [&] {
        w.validate();
        return 0;
      });
      d.flags.push_back(w);
    }
    const json& ps = array(need(j, root, "psi"), "$.psi");
    if (ps.size() != d.fan.cones.size()) shape("$.psi", "one multicharacter per cone expected");
    for (std::size_t i = 0; i < ps.size(); ++i) {
      d.psi.push_back(read_multichar(ps[i], at("$.psi", i), d.fan.n));
      if (d.psi.back().rank() != r) shape(at("$.psi", i), "expected " + std::to_string(r) + " characters");
    }
  } else if (d.kind == "lattice_chain") {
    keys({"prime", "lattices"});
    LatticeChain c;
    c.prime = read_int(need(j, root, "prime"), "$.prime");
    const json& ls = array(need(j, root, "lattices"), "$.lattices");
    for (std::size_t i = 0; i < ls.size(); ++i) {
      std::string lp = at("$.lattices", i);
      if (array(ls[i], lp).size() != 2) shape(lp, "a lattice is given by two columns");
      c.lattices.push_back({read_ratvec(ls[i][0], at(lp, 0), 2), read_ratvec(ls[i][1], at(lp, 1), 2)});
    }
    d.chain = c;
  } else {
    schema("$.kind", "unknown kind \"" + d.kind + "\"");
  }
  return d;
}

namespace {

json vec_json(const IntVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}
json vecs_json(const std::vector<IntVec>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(vec_json(v));
  return a;
}
json ratvec_json(const RatVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}
json monoid_json(const FineMonoid& m) {
  return {{"ambient_rank", m.ambient()}, {"generators", vecs_json(m.generators())}};
}
json names_json(const NamedVectors& ns) {
  json o = json::object();
  for (const auto& [k, v] : ns) o[k] = vec_json(v);
  return o;
}
json cell_json(const PoGroup& c) {
  return {{"rank", c.rank()},
          {"positives", vecs_json(c.positives().generators())},
          {"base", monoid_json(c.base())},
          {"base_map", vecs_json(c.base_map().row_list())}};
}
json chars_json(const MultiCharacter& m) { return vecs_json(m.chars); }

}  // namespace

json to_json(const Document& d) {
  json j = json::object();
  j["schema"] = kSchemaVersion;
  j["kind"] = d.kind;
  if (!d.name.empty()) j["name"] = d.name;
  if (!d.note.empty()) j["note"] = d.note;
  if (!d.expected.empty()) j["expected"] = d.expected;
  if (!d.points.empty()) j["points"] = vecs_json(d.points);
  if (d.kind == "monoid") {
    j.update(monoid_json(*d.monoid));
  } else if (d.kind == "morphism") {
    j["source"] = monoid_json(d.morphism->source());
    j["target"] = monoid_json(d.morphism->target());
    j["matrix"] = vecs_json(d.morphism->matrix().row_list());
    if (!d.source_names.empty()) j["source_names"] = names_json(d.source_names);
    if (!d.target_names.empty()) j["target_names"] = names_json(d.target_names);
  } else if (d.kind == "complex") {
    json cells = json::array();
    for (const auto& c : d.complex->cells) cells.push_back(cell_json(c));
    json gl = json::array();
    for (const auto& g : d.complex->gluings)
      gl.push_back({{"a", g.a}, {"pa", vecs_json(g.pa.row_list())}, {"b", g.b}, {"pb", vecs_json(g.pb.row_list())}});
    j["cells"] = cells;
    j["gluings"] = gl;
    j["shared_ambient"] = d.complex->shared_ambient;
  } else if (d.kind == "subdivision") {
    j["sigma"] = cell_json(*d.sigma);
    json p = json::array();
    for (const auto& c : d.pieces) p.push_back(cell_json(c));
    j["pieces"] = p;
  } else if (d.kind == "multichar") {
    j["ambient_rank"] = d.multichar->ambient;
    j["characters"] = chars_json(*d.multichar);
    if (d.sigma) j["cone"] = cell_json(*d.sigma);
  } else if (d.kind == "flags") {
    json cones = json::array();
    for (const auto& c : d.fan.cones) cones.push_back(c);
    j["fan"] = {{"rank", d.fan.n}, {"rays", vecs_json(d.fan.rays)}, {"cones", cones}};
    j["bundle_rank"] = d.flags.empty() ? std::size_t(0) : d.flags[0].r;
    json fl = json::array();
    for (const auto& f : d.flags) {
      json ws = json::array();
      for (const auto& w : f.weights) ws.push_back(to_string(w));
      json st = json::array();
      for (const auto& s : f.steps) {
        json b = json::array();
        for (const auto& v : s.basis()) b.push_back(ratvec_json(v));
        st.push_back(b);
      }
      fl.push_back({{"weights", ws}, {"steps", st}});
    }
    j["flags"] = fl;
    json ps = json::array();
    for (const auto& m : d.psi) ps.push_back(chars_json(m));
    j["psi"] = ps;
  } else if (d.kind == "lattice_chain") {
    j["prime"] = to_string(d.chain->prime);
    json ls = json::array();
    for (const auto& l : d.chain->lattices) ls.push_back(json::array({ratvec_json(l[0]), ratvec_json(l[1])}));
    j["lattices"] = ls;
  }
  return j;
}

std::string serialize(const Document& d) { return to_json(d).dump(2) + "\n"; }

IntVec parse_element(const std::string& text, std::size_t n, const NamedVectors& names) {
  std::string t = text;
  t.erase(0, t.find_first_not_of(" \t"));
  t.erase(t.find_last_not_of(" \t") + 1);
  for (const auto& [k, v] : names)
    if (k == t) return v;
  json j;
  if (!t.empty() && t[0] == '[') {
    try {
      j = json::parse(t);
    } catch (const json::parse_error&) {
      schema("element", "malformed array \"" + text + "\"");
    }
  } else {
    j = json::array();
    std::size_t start = 0;
    while (start <= t.size()) {
      std::size_t end = t.find(',', start);
      if (end == std::string::npos) end = t.size();
      std::string tok = t.substr(start, end - start);
      tok.erase(0, tok.find_first_not_of(" \t"));
      tok.erase(tok.find_last_not_of(" \t") + 1);
      if (tok.empty()) schema("element", "cannot read \"" + text + "\" as a name or an integer vector");
      j.push_back(tok);
      start = end + 1;
    }
  }
  return read_vec(j, "element", n);
}

std::string render_element(const IntVec& v, const NamedVectors& names) {
  for (const auto& [k, x] : names)
    if (x == v) return k;
  return to_string(v);
}

std::string digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace conekit
