#include "conekit/run.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <sstream>

namespace conekit {

using nlohmann::json;

namespace {

[[noreturn]] void precondition(const std::string& why) { throw Error("PreconditionError", why); }

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

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

const MonoidMap& need_morphism(const Document& d) {
  if (!d.morphism) precondition("command needs a morphism document, got " + d.kind);
  return *d.morphism;
}

Complex complex_of(const Document& d) {
  if (d.complex) return *d.complex;
  if (d.kind == "subdivision") return Complex::from_pieces(d.pieces);
  precondition("command needs a complex or subdivision document, got " + d.kind);
}

const PoGroup& need_cone(const Document& d) {
  if (d.kind != "multichar" || !d.sigma) precondition("command needs a multichar document with a cone");
  return *d.sigma;
}

// ---- morphism properties ----

Verdict single_verdict(const MonoidMap& h, const std::string& name, const RunOptions& opt) {
  try {
    if (name == "local" || name == "injective_gp" || name == "vertical") {
      BasicFlags f = basic_flags(h);
      return name == "local" ? f.local : name == "injective_gp" ? f.injective_gp : f.vertical;
    }
    if (name == "exact") return is_exact(h);
    if (name == "localizations_exact") return localizations_exact(h);
    if (name == "integral") return is_integral(h, {opt.paranoid, 2});
    if (name == "saturated") return is_saturated(h);
    const std::string qs = "quasisaturated_upto_";
    if (name.rfind(qs, 0) == 0) {
      int n = std::stoi(name.substr(qs.size()));
      if (n < 1) precondition("quasisaturation bound must be positive");
      return quasisaturated_upto(h, n);
    }
  } catch (const Error& e) {
    Verdict v;
    v.error = e.what();
    return v;
  }
  precondition("unknown property " + name);
}

bool is_property_key(const std::string& k) {
  static const std::vector<std::string> names{"local", "injective_gp", "vertical", "exact", "localizations_exact",
                                              "integral", "saturated"};
  for (const auto& n : names)
    if (k == n) return true;
  const std::string qs = "quasisaturated_upto_";
  return k.rfind(qs, 0) == 0 && k.size() > qs.size() &&
         k.find_first_not_of("0123456789", qs.size()) == std::string::npos;
}

json verdict_json(const Verdict& v, const CertificateCheck& chk) {
  json j;
  j["value"] = v.error ? json("error") : json(v.holds);
  j["procedure"] = v.procedure;
  if (v.error) j["error"] = *v.error;
  if (!v.cert.note.empty() || !v.cert.items.empty()) {
    json items = json::array();
    for (const auto& [label, x] : v.cert.items) items.push_back({{"label", label}, {"vector", vec_json(x)}});
    j["certificate"] = {{"note", v.cert.note}, {"items", items}};
  }
  if (!v.holds && !v.error) j["reverified"] = chk.ok;
  return j;
}

std::string render_inf(const InfResult& r, const Document& d) {
  if (r.localized) return to_string(r);
  auto el = [&](const IntVec& v) { return render_element(v, d.source_names); };
  switch (r.kind) {
    case InfResult::Kind::NoLowerBound:
      return "NoLowerBound";
    case InfResult::Kind::Max:
      return "Max(" + el(r.value) + ")";
    case InfResult::Kind::NoMax: {
      std::vector<std::string> xs;
      for (const auto& m : r.maximal) xs.push_back(el(m));
      std::sort(xs.begin(), xs.end());
      return "NoMax{" + join(xs, ", ") + "}";
    }
  }
  return "";
}

// Every reported lower bound m lies in P^gp with h(m) <= q.
bool reverify_inf(const MonoidMap& h, const IntVec& q, const InfResult& r) {
  if (r.localized) return true;
  for (const auto& m : r.maximal)
    if (!h.source().group().contains(m) || !h.target().contains(sub(q, h(m)))) return false;
  return true;
}

std::vector<IntVec> query_points(const Document& d, const std::vector<std::string>& given, std::size_t n,
                                 const NamedVectors& names) {
  std::vector<IntVec> qs;
  for (const auto& s : given) qs.push_back(parse_element(s, n, names));
  if (qs.empty())
    for (const auto& p : d.points) {
      if (p.size() != n) throw Error("RankMismatch", "point " + to_string(p) + " has the wrong length");
      qs.push_back(p);
    }
  if (qs.empty()) precondition("no query element given");
  return qs;
}

// ---- bundle helpers ----

json flag_json(const WeightedFlag& f) {
  json w = json::array(), dims = json::array(), steps = json::array();
  for (const auto& x : f.weights) w.push_back(to_string(x));
  for (auto x : f.dims()) dims.push_back(x);
  for (const auto& s : f.steps) {
    json b = json::array();
    for (const auto& v : s.basis()) b.push_back(ratvec_json(v));
    steps.push_back(b);
  }
  return {{"weights", w}, {"dims", dims}, {"steps", steps}};
}

std::string flag_text(const WeightedFlag& f) {
  std::vector<std::string> parts;
  auto dims = f.dims();
  for (std::size_t i = 0; i < f.weights.size(); ++i) parts.push_back(to_string(f.weights[i]) + ":" + std::to_string(dims[i]));
  return "weights:dims " + join(parts, " ");
}

bool hull_equals(const PoGroup& a, const PoGroup& b) { return a.positives() == b.positives(); }

Rat rpow(const Int& p, const Int& e) {
  Rat r = 1;
  for (Int k = 0; k < abs(e); ++k) r *= p;
  return e >= 0 ? r : Rat(1) / r;
}

bool reverify_apartment(const LatticeChain& c, const Apartment& a) {
  for (std::size_t k = 0; k < c.lattices.size(); ++k) {
    RatVec e = a.e, f = a.f;
    for (auto& x : e) x *= rpow(c.prime, a.exponents[k].first);
    for (auto& x : f) x *= rpow(c.prime, a.exponents[k].second);
    if (tree_distance(c.prime, c.lattices[k], {e, f}) != 0) return false;
  }
  return true;
}

struct Out {
  json result = json::object();
  std::ostringstream text;
  int exit = 0;
  void fail() { exit = std::max(exit, 1); }
};

// ---- commands ----

void cmd_check(const Document& d, const RunOptions& opt, Out& o) {
  json verdicts = json::object();
  bool any_false = false, any_error = false;
  auto put = [&](const std::string& name, const Verdict& v, const CertificateCheck& chk) {
    verdicts[name] = verdict_json(v, chk);
    any_false |= !v.holds && !v.error;
    any_error |= v.error.has_value();
    if (!chk.ok) throw Error("CertificateMismatch", chk.detail);
    o.text << name << ": " << (v.error ? "error (" + *v.error + ")" : v.holds ? "true" : "false");
    if (!v.procedure.empty()) o.text << "  [" << v.procedure << "]";
    o.text << "\n";
    if (!v.holds && !v.error) {
      if (!v.cert.note.empty()) o.text << "    " << v.cert.note << "\n";
      for (const auto& [label, x] : v.cert.items) o.text << "    " << label << " = " << to_string(x) << "\n";
    }
  };
  auto plain = [](bool holds, std::string procedure) {
    Verdict v;
    v.holds = holds;
    v.procedure = std::move(procedure);
    return v;
  };
  if (d.kind == "morphism") {
    const MonoidMap& h = *d.morphism;
    CheckOptions co;
    co.integrality.paranoid = opt.paranoid;
    PropertyReport rep = check_all(h, co);
    for (const auto& [name, v] : rep.verdicts) put(name, v, verify_certificate(h, name, v));
    for (const auto& [k, _] : d.expected.items())
      if (is_property_key(k) && !verdicts.contains(k)) {
        Verdict v = single_verdict(h, k, opt);
        put(k, v, verify_certificate(h, k, v));
      }
  } else if (d.kind == "monoid") {
    put("sharp", plain(d.monoid->is_sharp(), "lineality of the cone"), {});
    put("saturated", plain(d.monoid->is_saturated(), "Hilbert basis of the cone in the group"), {});
  } else if (d.kind == "complex" || d.kind == "subdivision") {
    Complex c = complex_of(d);
    auto prof = integrality_profile(c, {opt.paranoid, 2});
    for (std::size_t i = 0; i < prof.size(); ++i) {
      put("cell_" + std::to_string(i) + ".integral", prof[i].integral, {});
      put("cell_" + std::to_string(i) + ".exact", prof[i].exact, {});
    }
  } else {
    precondition("check does not apply to " + d.kind + " documents");
  }
  o.result["verdicts"] = verdicts;
  if (any_false)
    o.fail();
  else if (any_error)
    o.exit = 2;
}

void cmd_inf(const Document& d, const RunOptions& opt, Out& o) {
  const MonoidMap& h = need_morphism(d);
  json rows = json::array();
  for (const auto& q : query_points(d, opt.q, h.target().ambient(), d.target_names)) {
    InfResult r = infimum(h, q);
    if (!reverify_inf(h, q, r)) throw Error("CertificateMismatch", "lower bound does not lie below q");
    std::string s = render_inf(r, d);
    const char* kind = r.kind == InfResult::Kind::Max ? "Max" : r.kind == InfResult::Kind::NoMax ? "NoMax" : "NoLowerBound";
    rows.push_back({{"q", vec_json(q)},
                    {"kind", kind},
                    {"maximal", vecs_json(r.maximal)},
                    {"localized", r.localized},
                    {"rendered", s}});
    o.text << "inf(" << render_element(q, d.target_names) << ") = " << s << "\n";
    if (r.kind != InfResult::Kind::Max) o.fail();
  }
  o.result["infima"] = rows;
}

void cmd_hilbert(const Document& d, const RunOptions&, Out& o) {
  FineMonoid m;
  if (d.monoid)
    m = *d.monoid;
  else if (d.morphism)
    m = d.morphism->target();
  else
    precondition("hilbert needs a monoid or morphism document");
  std::vector<IntVec> hb = saturated_generators(m.cone(), m.group());
  o.result["hilbert_basis"] = vecs_json(hb);
  o.result["minimal_generators"] = vecs_json(m.minimal_generators());
  o.result["saturated"] = m.is_saturated();
  o.text << "Hilbert basis (" << hb.size() << "):\n";
  for (const auto& v : hb) o.text << "  " << to_string(v) << "\n";
  o.text << "monoid is " << (m.is_saturated() ? "" : "not ") << "saturated\n";
}

IntMatrix point_rows(const Document& d, const RunOptions& opt, std::size_t n) {
  std::vector<IntVec> rows;
  for (const auto& s : opt.x) rows.push_back(parse_element(s, n));
  if (rows.empty() && !d.points.empty()) {
    if (d.points[0].size() != n) throw Error("RankMismatch", "point has the wrong length");
    rows.push_back(d.points[0]);
  }
  if (rows.empty()) precondition("no point given (use --x)");
  return IntMatrix::from_rows(rows, n);
}

void cmd_star(const Document& d, const RunOptions& opt, Out& o) {
  PoGroup sigma;
  if (d.kind == "subdivision")
    sigma = *d.sigma;
  else if (d.kind == "complex") {
    if (opt.cell >= d.complex->cells.size()) precondition("cell index out of range");
    sigma = d.complex->cells[opt.cell];
  } else if (d.kind == "multichar")
    sigma = need_cone(d);
  else
    precondition("star needs a subdivision, complex or multichar document");
  IntMatrix x = point_rows(d, opt, sigma.rank());
  PoGroup s = star(sigma, ComplexPoint{0, x});
  o.result["star"] = {{"positives", vecs_json(s.positives().generators())},
                      {"dim", s.positives().dim()},
                      {"lineality_dim", s.positives().lineality_dim()}};
  o.text << "star positives: " << s.positives().str() << "\n";
  if (d.kind == "subdivision") {
    std::vector<PoGroup> local;
    json used = json::array();
    for (std::size_t i = 0; i < d.pieces.size(); ++i)
      if (is_point_of(d.pieces[i], x)) {
        local.push_back(star(d.pieces[i], ComplexPoint{0, x}));
        used.push_back(i);
      }
    SubdivisionReport r = check_subdivision(s, local);
    o.result["pieces_through_point"] = used;
    o.result["stars_subdivide"] = r.holds;
    o.text << used.size() << " pieces contain the point; their stars " << (r.holds ? "subdivide" : "do not subdivide")
           << " the star" << (r.holds ? "" : " (" + r.detail + ")") << "\n";
    if (!r.holds) o.fail();
  }
}

void cmd_subdivision(const Document& d, const RunOptions&, Out& o) {
  if (d.kind != "subdivision") precondition("subdivision needs a subdivision document");
  SubdivisionReport r = check_subdivision(*d.sigma, d.pieces);
  json seps = json::array();
  for (const auto& [ij, f] : r.separators) {
    if (!d.pieces[ij.first].positives().contains(f) || !d.pieces[ij.second].positives().contains(neg(f)))
      throw Error("CertificateMismatch", "separator does not separate");
    seps.push_back({{"pair", {ij.first, ij.second}}, {"functional", vec_json(f)}});
  }
  o.result["holds"] = r.holds;
  o.result["failed_condition"] = r.failed_condition;
  o.result["detail"] = r.detail;
  o.result["separators"] = seps;
  o.result["spot_checks"] = r.spot_checks;
  o.text << "subdivision: " << (r.holds ? "true" : "false");
  if (!r.holds) o.text << " (condition " << r.failed_condition << ": " << r.detail << ")";
  o.text << "\n" << r.spot_checks << " rank-2 points sampled\n";
  if (!r.holds) o.fail();
}

void cmd_cofinal(const Document& d, const RunOptions& opt, Out& o) {
  IntersectionComplexes ic = intersection_complexes(complex_of(d), {opt.paranoid, 2});
  CofinalReport r = is_cofinal(ic.I, ic.J);
  json faces = json::array();
  for (std::size_t i = 0; i < ic.faces.size(); ++i) {
    const auto& f = ic.faces[i];
    faces.push_back({{"label", ic.J.labels[i]},
                     {"cell", f.cell},
                     {"rays", vecs_json(f.cone.rays())},
                     {"integral", f.integral},
                     {"exact", f.exact}});
  }
  o.result["J"] = faces;
  o.result["I"] = ic.I;
  o.result["cofinal"] = r.holds;
  if (r.failing) o.result["failing"] = ic.J.labels[*r.failing];
  o.text << "|J| = " << ic.J.size() << ", |I| = " << ic.I.size() << "\n";
  o.text << "I cofinal in J: " << (r.holds ? "true" : "false") << (r.holds ? "" : " (" + r.detail + ")") << "\n";
  if (!r.holds) o.fail();
}

void cmd_pl(const Document& d, const RunOptions&, Out& o) {
  AbelianGroup g = pl_classes(complex_of(d));
  json tors = json::array();
  for (const auto& t : g.torsion) tors.push_back(to_string(t));
  o.result["group"] = g.str();
  o.result["free_rank"] = g.free_rank;
  o.result["torsion"] = tors;
  o.text << "conewise linear classes: " << g.str() << "\n";
}

void cmd_aut(const Document& d, const RunOptions&, Out& o) {
  if (!d.multichar) precondition("bundle-aut needs a multichar document");
  std::size_t n = aut_dimension(need_cone(d), *d.multichar);
  o.result["aut_dimension"] = n;
  o.text << "dim Aut = " << n << "\n";
}

void cmd_hull(const Document& d, const RunOptions&, Out& o) {
  if (!d.multichar) precondition("bundle-hull needs a multichar document");
  const PoGroup& sigma = need_cone(d);
  InfMatrix m = inf_matrix(sigma, *d.multichar);
  json rows = json::array();
  for (const auto& row : m.entries) {
    json r = json::array();
    for (const auto& e : row) r.push_back(to_string(e));
    rows.push_back(r);
  }
  o.result["inf_matrix"] = rows;
  o.result["representable"] = m.representable;
  o.text << "inf matrix:\n" << m.str();
  if (!m.representable) {
    o.result["warning"] = m.warning;
    o.fail();
    return;
  }
  PoGroup hull = weyl_hull(sigma, *d.multichar);
  o.result["hull"] = {{"positives", vecs_json(hull.positives().generators())},
                      {"equals_sigma", hull_equals(hull, sigma)}};
  o.text << "Weyl hull positives: " << hull.positives().str() << (hull_equals(hull, sigma) ? " (= sigma)" : "") << "\n";
}

void cmd_klyachko(const Document& d, const RunOptions&, Out& o) {
  if (!d.multichar) precondition("bundle-klyachko needs a multichar document");
  json flags = json::array();
  if (d.multichar->ambient == 1) {
    WeightedFlag f = klyachko_filtration(*d.multichar);
    flags.push_back(flag_json(f));
    o.text << flag_text(f) << "\n";
  } else {
    const PoGroup& sigma = need_cone(d);
    Cone real = sigma.realization();
    for (const auto& r : real.rays()) {
      Cone ray = Cone::from_generators(real.ambient(), {r});
      Restriction res = restrict_multichar(*d.multichar, real, ray);
      WeightedFlag f = klyachko_filtration(res.chars);
      json fj = flag_json(f);
      fj["ray"] = vec_json(r);
      flags.push_back(fj);
      o.text << "ray " << to_string(r) << ": " << flag_text(f) << "\n";
    }
  }
  o.result["flags"] = flags;
}

void cmd_payne(const Document& d, const RunOptions&, Out& o) {
  if (d.kind != "flags") precondition("bundle-payne needs a flags document");
  PayneReport r = payne_compatibility(d.fan, d.flags, d.psi);
  o.result["holds"] = r.holds;
  if (r.cone) {
    json th = json::array();
    for (const auto& t : r.thresholds) th.push_back(to_string(t));
    o.result["cone"] = *r.cone;
    o.result["thresholds"] = th;
    o.result["lhs"] = r.lhs;
    o.result["rhs"] = r.rhs;
  }
  o.result["detail"] = r.detail;
  o.text << "compatible: " << (r.holds ? "true" : "false") << (r.detail.empty() ? "" : " (" + r.detail + ")") << "\n";
  if (!r.holds) o.fail();
}

void cmd_apartment(const Document& d, const RunOptions&, Out& o) {
  if (!d.chain) precondition("bundle-apartment needs a lattice_chain document");
  const LatticeChain& c = *d.chain;
  json dist = json::array();
  for (const auto& a : c.lattices) {
    json row = json::array();
    for (const auto& b : c.lattices) row.push_back(to_string(tree_distance(c.prime, a, b)));
    dist.push_back(row);
  }
  o.result["distances"] = dist;
  auto ap = common_apartment(c);
  if (!ap) {
    o.result["apartment"] = nullptr;
    o.text << "apartment: None\n";
    o.fail();
    return;
  }
  if (!reverify_apartment(c, *ap)) throw Error("CertificateMismatch", "basis does not re-expand the lattices");
  json ex = json::array();
  for (const auto& [a, b] : ap->exponents) ex.push_back(json::array({to_string(a), to_string(b)}));
  o.result["apartment"] = {{"e", ratvec_json(ap->e)}, {"f", ratvec_json(ap->f)}, {"exponents", ex}};
  o.text << "apartment: e = " << to_string(ap->e) << ", f = " << to_string(ap->f) << "\n";
  for (std::size_t k = 0; k < ap->exponents.size(); ++k)
    o.text << "  L" << k << " = <p^" << ap->exponents[k].first << " e, p^" << ap->exponents[k].second << " f>\n";
}

void cmd_present(const Document& d, const RunOptions& opt, Out& o) {
  SymbolicPresentation p = present_local_algebra(need_morphism(d), {opt.sliced});
  json gens = json::array();
  for (const auto& g : p.generators)
    gens.push_back({{"token", g.token}, {"degree", vec_json(g.degree)}, {"invertible", g.invertible}});
  o.result["generators"] = gens;
  o.result["relations"] = p.relations;
  o.result["eliminated"] = p.eliminated;
  o.result["sliced"] = opt.sliced;
  o.text << p.str() << "\n";
}

using Handler = std::function<void(const Document&, const RunOptions&, Out&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h{
      {"check", cmd_check},       {"inf", cmd_inf},
      {"hilbert", cmd_hilbert},   {"star", cmd_star},
      {"subdivision", cmd_subdivision}, {"cofinal", cmd_cofinal},
      {"pl", cmd_pl},             {"bundle-aut", cmd_aut},
      {"bundle-hull", cmd_hull},  {"bundle-klyachko", cmd_klyachko},
      {"bundle-payne", cmd_payne}, {"bundle-apartment", cmd_apartment},
      {"present", cmd_present},
  };
  return h;
}

json error_json(const std::string& kind, const std::string& message) { return {{"kind", kind}, {"message", message}}; }

Report finish(const std::string& command, const std::string& name, const std::string& digest_text, Out& o,
              std::chrono::steady_clock::time_point t0) {
  Report r;
  r.exit_code = o.exit;
  r.json = {{"tool", "conekit"},
            {"version", kToolVersion},
            {"command", command},
            {"name", name},
            {"input_digest", digest(digest_text)},
            {"result", o.result},
            {"exit_code", o.exit}};
  r.json["elapsed_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  r.text = o.text.str();
  return r;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, _] : handlers()) n.push_back(k);
    return n;
  }();
  return names;
}

Report run_command(const std::string& command, const Document& doc, const std::string& digest_text,
                   const RunOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  Out o;
  try {
    auto it = handlers().find(command);
    if (it == handlers().end()) throw Error("UsageError", "unknown command " + command);
    BudgetScope budget(opt.budget);
    it->second(doc, opt, o);
  } catch (const Error& e) {
    o.result = {{"error", error_json(e.kind(), e.what())}};
    o.text = std::ostringstream();
    o.text << "error: " << e.what() << "\n";
    o.exit = 2;
  }
  return finish(command, doc.name, digest_text, o, t0);
}

Report run_command(const std::string& command, const std::string& document_text, const RunOptions& opt) {
  Document doc;
  try {
    doc = parse_document(document_text);
  } catch (const Error& e) {
    Out o;
    o.result = {{"error", error_json(e.kind(), e.what())}};
    o.text << "error: " << e.what() << "\n";
    o.exit = 2;
    return finish(command, "", document_text, o, std::chrono::steady_clock::now());
  }
  return run_command(command, doc, document_text, opt);
}

std::vector<ExpectationCheck> evaluate_expected(const Document& d, const RunOptions& opt) {
  std::vector<ExpectationCheck> out;
  BudgetScope budget(opt.budget);
  for (const auto& [key, want] : d.expected.items()) {
    ExpectationCheck c;
    c.key = key;
    c.expected = want;
    try {
      if (d.kind == "morphism" && is_property_key(key)) {
        Verdict v = single_verdict(*d.morphism, key, opt);
        c.actual = v.error ? json("error: " + *v.error) : json(v.holds);
      } else if (d.kind == "morphism" && key.rfind("inf:", 0) == 0) {
        IntVec q = parse_element(key.substr(4), d.morphism->target().ambient(), d.target_names);
        c.actual = render_inf(infimum(*d.morphism, q), d);
      } else if (d.kind == "morphism" && (key == "present" || key == "present_sliced")) {
        c.actual = join(present_local_algebra(*d.morphism, {key == "present_sliced"}).relations, "; ");
      } else if (d.kind == "monoid" && key == "hilbert_basis_size") {
        c.actual = saturated_generators(d.monoid->cone(), d.monoid->group()).size();
      } else if (d.kind == "monoid" && key == "sharp") {
        c.actual = d.monoid->is_sharp();
      } else if (d.kind == "monoid" && key == "saturated") {
        c.actual = d.monoid->is_saturated();
      } else if (d.kind == "monoid" && key == "rank") {
        c.actual = d.monoid->rank();
      } else if (d.kind == "monoid" && key == "hilbert_basis") {
        c.actual = vecs_json(saturated_generators(d.monoid->cone(), d.monoid->group()));
      } else if (d.kind == "subdivision" && key == "subdivision") {
        c.actual = check_subdivision(*d.sigma, d.pieces).holds;
      } else if (d.kind == "subdivision" && key == "failed_condition") {
        c.actual = check_subdivision(*d.sigma, d.pieces).failed_condition;
      } else if (d.kind == "subdivision" && key == "stars_subdivide") {
        bool all = true;
        for (const auto& x : d.points) {
          IntMatrix X = IntMatrix::from_rows({x}, d.sigma->rank());
          if (!is_point_of(*d.sigma, X)) continue;
          std::vector<PoGroup> local;
          for (const auto& p : d.pieces)
            if (is_point_of(p, X)) local.push_back(star(p, ComplexPoint{0, X}));
          all &= check_subdivision(star(*d.sigma, ComplexPoint{0, X}), local).holds;
        }
        c.actual = all;
      } else if ((d.kind == "subdivision" || d.kind == "complex") && key == "non_integral_cells") {
        std::size_t bad = 0;
        for (const auto& p : integrality_profile(complex_of(d), {opt.paranoid, 2})) bad += !p.integral.holds;
        c.actual = bad;
      } else if ((d.kind == "subdivision" || d.kind == "complex") && key == "cofinal") {
        auto ic = intersection_complexes(complex_of(d), {opt.paranoid, 2});
        c.actual = is_cofinal(ic.I, ic.J).holds;
      } else if ((d.kind == "subdivision" || d.kind == "complex") && key == "pl") {
        c.actual = pl_classes(complex_of(d)).str();
      } else if (d.kind == "multichar" && key == "aut_dimension") {
        c.actual = aut_dimension(need_cone(d), *d.multichar);
      } else if (d.kind == "multichar" && key == "hull_representable") {
        c.actual = inf_matrix(need_cone(d), *d.multichar).representable;
      } else if (d.kind == "multichar" && key == "hull_positives") {
        c.actual = vecs_json(weyl_hull(need_cone(d), *d.multichar).positives().generators());
      } else if (d.kind == "multichar" && key == "hull_realization_dim_lineality") {
        Cone real = weyl_hull(need_cone(d), *d.multichar).realization();
        c.actual = json::array({real.dim(), real.lineality_dim()});
      } else if (d.kind == "multichar" && key == "hull_equals_sigma") {
        c.actual = hull_equals(weyl_hull(need_cone(d), *d.multichar), need_cone(d));
      } else if (d.kind == "flags" && key == "payne") {
        c.actual = payne_compatibility(d.fan, d.flags, d.psi).holds;
      } else if (d.kind == "lattice_chain" && key == "apartment") {
        auto ap = common_apartment(*d.chain);
        c.actual = ap ? json("basis") : json("None");
        if (ap && !reverify_apartment(*d.chain, *ap)) c.actual = "basis fails re-expansion";
      } else {
        c.actual = "unsupported";
      }
    } catch (const Error& e) {
      c.actual = std::string("error: ") + e.what();
    }
    c.ok = c.actual == c.expected;
    out.push_back(c);
  }
  return out;
}

}  // namespace conekit
