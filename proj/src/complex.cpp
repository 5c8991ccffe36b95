#include "conekit/complex.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "conekit/errors.hpp"

namespace conekit {

namespace {

Lattice units_of(const Cone& c) { return saturate_subgroup(c.lineality(), c.ambient()); }

Cone negated(const Cone& c) {
  std::vector<IntVec> g;
  for (const auto& v : c.generators()) g.push_back(neg(v));
  return Cone::from_generators(c.ambient(), g);
}

bool same_base(const PoGroup& a, const PoGroup& b) {
  return a.base() == b.base() && a.base_map() == b.base_map();
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

}  // namespace

// ---------------------------------------------------------------- PoGroup

PoGroup::PoGroup(std::size_t n, Cone positives, FineMonoid base, IntMatrix base_map)
    : n_(n), pos_(std::move(positives)), base_(std::move(base)), base_map_(std::move(base_map)) {
  if (pos_.ambient() != n_) throw Error("RankMismatch", "positives live in rank " + std::to_string(pos_.ambient()));
  if (base_map_.rows() != n_ || base_map_.cols() != base_.ambient())
    throw Error("RankMismatch", "base map must be " + std::to_string(n_) + "x" + std::to_string(base_.ambient()));
  for (const auto& g : base_.generators())
    if (!pos_.contains(base_map_ * g))
      throw Error("NotAHomomorphism", "base element " + to_string(g) + " maps to " + to_string(base_map_ * g) +
                                          ", which is not positive");
}

PoGroup::PoGroup(std::size_t n, Cone positives) : PoGroup(n, std::move(positives), FineMonoid(0, {}), IntMatrix(n, 0)) {}

PoGroup PoGroup::generated(std::size_t n, const std::vector<IntVec>& gens, FineMonoid base, IntMatrix base_map) {
  return PoGroup(n, Cone::from_generators(n, gens), std::move(base), std::move(base_map));
}

FineMonoid PoGroup::monoid() const { return FineMonoid(n_, saturated_generators(pos_, Lattice::full(n_))); }

FineMonoid PoGroup::sharpened() const { return base_morphism().target(); }

MonoidMap PoGroup::base_morphism() const {
  QuotientMap q = quotient_by(units_of(pos_));
  std::vector<IntVec> gens;
  for (const auto& g : saturated_generators(pos_, Lattice::full(n_))) {
    IntVec v = q.proj * g;
    if (!is_zero(v)) gens.push_back(v);
  }
  return MonoidMap(base_, FineMonoid(q.proj.rows(), gens), q.proj * base_map_);
}

std::string PoGroup::str() const { return "pogroup(rank " + std::to_string(n_) + ", positives " + pos_.str() + ")"; }

// ---------------------------------------------------------------- stars

ComplexPoint ComplexPoint::rank1(const IntVec& x, std::size_t cell) {
  return ComplexPoint{cell, IntMatrix::from_rows({x}, x.size())};
}

namespace {

// Successive kernels of a lexicographic point; nullopt if x is not a point.
std::optional<Cone> lex_kernel(const Cone& pos, const IntMatrix& x) {
  Cone cur = pos;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    IntVec row = x.row(i);
    for (const auto& r : cur.rays())
      if (dot(row, r) < 0) return std::nullopt;
    for (const auto& l : cur.lineality())
      if (dot(row, l) != 0) return std::nullopt;
    std::vector<IntVec> eq = cur.equations();
    eq.push_back(row);
    cur = Cone::from_inequalities(pos.ambient(), cur.facets(), eq);
  }
  return cur;
}

}  // namespace

bool is_point_of(const PoGroup& sigma, const IntMatrix& x) {
  if (x.cols() != sigma.rank()) throw Error("RankMismatch", "point has " + std::to_string(x.cols()) + " columns");
  return lex_kernel(sigma.positives(), x).has_value();
}

PoGroup star(const PoGroup& sigma, const ComplexPoint& x) {
  if (x.values.cols() != sigma.rank())
    throw Error("RankMismatch", "point has " + std::to_string(x.values.cols()) + " columns");
  auto ker = lex_kernel(sigma.positives(), x.values);
  if (!ker) throw Error("NotAPoint", "x is negative on a positive element");
  // the base is starred at the induced point: its positives shrink to the face killed by x
  std::vector<IntVec> bg;
  for (const auto& g : sigma.base().generators())
    if (ker->contains(sigma.base_map() * g)) bg.push_back(g);
  return PoGroup(sigma.rank(), *ker, FineMonoid(sigma.base().ambient(), bg), sigma.base_map());
}

// ---------------------------------------------------------------- subdivisions

SubdivisionReport check_subdivision(const PoGroup& sigma, const std::vector<PoGroup>& pieces) {
  SubdivisionReport rep;
  auto fail = [&](int cond, std::string why) {
    rep.holds = false;
    rep.failed_condition = cond;
    rep.detail = std::move(why);
    return rep;
  };
  const std::size_t n = sigma.rank();
  if (pieces.empty()) return fail(3, "no pieces");
  std::vector<Cone> C;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].rank() != n) return fail(1, "piece " + std::to_string(i) + " has a different group");
    if (!pieces[i].positives().contains(sigma.positives()))
      return fail(1, "piece " + std::to_string(i) + " does not refine the order");
    C.push_back(pieces[i].realization());
  }
  const Cone whole = sigma.realization();

  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      const std::string pair = std::to_string(i) + "," + std::to_string(j);
      if (C[i] == C[j]) return fail(2, "pieces " + pair + " coincide; their intersection is not a proper face");
      Cone meet = C[i].intersect(C[j]);
      Cone sep = pieces[i].positives().intersect(negated(pieces[j].positives()));
      IntVec f = sep.interior_point();
      if (C[i].face_at(f) != meet || C[j].face_at(neg(f)) != meet)
        return fail(2, "intersection of pieces " + pair + " is not a common face");
      rep.separators.push_back({{i, j}, f});
    }

  // support: the full-dimensional pieces form a pseudomanifold whose boundary is that of sigma
  const std::size_t d = whole.dim();
  std::map<Cone, int> facet_count;
  std::size_t maximal = 0;
  for (std::size_t i = 0; i < C.size(); ++i) {
    if (C[i].dim() != d) continue;
    ++maximal;
    for (const auto& a : C[i].facets()) ++facet_count[C[i].face_at(a)];
  }
  if (maximal == 0) return fail(3, "no piece has full dimension");
  for (const auto& [F, cnt] : facet_count) {
    bool boundary = false;
    for (const auto& a : whole.facets()) {
      bool vanish = true;
      for (const auto& g : F.generators())
        if (dot(a, g) != 0) vanish = false;
      if (vanish) boundary = true;
    }
    const int want = boundary ? 1 : 2;
    if (cnt != want)
      return fail(3, std::string(boundary ? "boundary" : "interior") + " wall " + F.str() + " is shared by " +
                         std::to_string(cnt) + " pieces");
  }

  // rank-2 points (v, w): v from faces of sigma, w from a small box
  std::vector<IntVec> vs;
  auto faces = face_lattice(whole);
  for (std::size_t k = 0; k < faces.size() && k < 64; ++k) vs.push_back(faces[k].interior_point());
  std::vector<IntVec> ws;
  if (n <= 4) {
    std::size_t total = 1;
    for (std::size_t k = 0; k < n; ++k) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      IntVec w(n);
      std::size_t c = code;
      for (std::size_t k = 0; k < n; ++k, c /= 3) w[k] = Int(static_cast<long>(c % 3)) - 1;
      ws.push_back(w);
    }
  } else {
    for (std::size_t k = 0; k < n; ++k) {
      ws.push_back(unit(n, k));
      ws.push_back(neg(unit(n, k)));
    }
  }
  for (const auto& v : vs)
    for (const auto& w : ws) {
      IntMatrix x = IntMatrix::from_rows({v, w}, n);
      if (!is_point_of(sigma, x)) continue;
      ++rep.spot_checks;
      bool hit = false;
      for (const auto& p : pieces)
        if (is_point_of(p, x)) {
          hit = true;
          break;
        }
      if (!hit) return fail(3, "rank-2 point (" + to_string(v) + ", " + to_string(w) + ") lies in no piece");
    }

  rep.holds = true;
  return rep;
}

// ---------------------------------------------------------------- complexes

PoGroup face_cell(const PoGroup& cell, const Cone& tau) {
  return PoGroup(cell.rank(), tau.dual(), cell.base(), cell.base_map());
}

IntMatrix face_projection(const PoGroup& cell, const Cone& tau) {
  Lattice perp = annihilator(Lattice::span(tau.generators(), cell.rank()));
  return quotient_by(saturate_subgroup(perp.basis_vectors(), cell.rank())).proj;
}

void Complex::validate() const {
  for (const auto& c : cells)
    if (!same_base(c, cells.front())) throw Error("SchemaError", "cells carry different base maps");
  for (std::size_t gi = 0; gi < gluings.size(); ++gi) {
    const auto& g = gluings[gi];
    const std::string at = "gluing " + std::to_string(gi);
    if (g.a >= cells.size() || g.b >= cells.size()) throw Error("SchemaError", at + ": cell index out of range");
    const PoGroup &A = cells[g.a], &B = cells[g.b];
    if (g.pa.cols() != A.rank() || g.pb.cols() != B.rank() || g.pa.rows() != g.pb.rows())
      throw Error("RankMismatch", at + ": projection shapes do not match the cells");
    auto check_face = [&](const PoGroup& c, const IntMatrix& p) {
      auto ker = integer_kernel(p);
      if (ker.size() + rank(p) != c.rank()) throw Error("SchemaError", at + ": projection is not surjective");
      if (!ker.empty()) {
        Cone killed = c.positives().intersect(Cone::from_inequalities(c.rank(), {}, annihilator(Lattice::span(ker, c.rank())).basis_vectors()));
        if (killed.dim() != ker.size()) throw Error("SchemaError", at + ": kernel is not generated by positives");
      }
    };
    check_face(A, g.pa);
    check_face(B, g.pb);
    if (image_cone(g.pa, A.positives()) != image_cone(g.pb, B.positives()))
      throw Error("SchemaError", at + ": the glued faces differ");
    if (!(g.pa * A.base_map() == g.pb * B.base_map())) throw Error("SchemaError", at + ": base maps disagree on the face");
  }
}

Complex Complex::from_pieces(const std::vector<PoGroup>& pieces) {
  Complex c;
  c.cells = pieces;
  c.shared_ambient = true;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      Cone ci = pieces[i].realization(), cj = pieces[j].realization();
      Cone meet = ci.intersect(cj);
      if (!meet.is_face_of(ci) || !meet.is_face_of(cj)) continue;
      c.gluings.push_back({i, face_projection(pieces[i], meet), j, face_projection(pieces[j], meet)});
    }
  return c;
}

std::vector<CellProfile> integrality_profile(const Complex& c, const IntegralityOptions& opt) {
  std::vector<CellProfile> out;
  for (const auto& cell : c.cells) {
    CellProfile p;
    try {
      MonoidMap m = cell.base_morphism();
      p.integral = is_integral(m, opt);
      p.exact = is_exact(m);
    } catch (const Error& e) {
      if (e.kind() == "BudgetExceeded") throw;
      p.integral.error = p.exact.error = e.what();
    }
    out.push_back(std::move(p));
  }
  return out;
}

// ---------------------------------------------------------------- posets

Poset Poset::from_relations(std::vector<std::string> labels, const std::vector<std::pair<std::size_t, std::size_t>>& less) {
  Poset p;
  const std::size_t n = labels.size();
  p.labels = std::move(labels);
  p.leq.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) p.leq[i][i] = true;
  for (auto [a, b] : less) {
    if (a >= n || b >= n) throw Error("SchemaError", "poset relation out of range");
    p.leq[a][b] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (p.leq[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (p.leq[k][j]) p.leq[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (p.leq[i][j] && p.leq[j][i]) throw Error("SchemaError", "poset relations contain a cycle");
  return p;
}

std::optional<std::size_t> Poset::index(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return i;
  return std::nullopt;
}

CofinalReport is_cofinal(const std::vector<std::size_t>& I, const Poset& J) {
  CofinalReport rep;
  for (auto i : I)
    if (i >= J.size()) throw Error("SchemaError", "I is not a subset of J");
  for (std::size_t j = 0; j < J.size(); ++j) {
    std::vector<std::size_t> up;
    for (auto i : I)
      if (J.leq[j][i]) up.push_back(i);
    if (up.empty()) {
      rep.failing = j;
      rep.detail = "nothing in I lies above " + J.labels[j];
      return rep;
    }
    std::vector<bool> seen(up.size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < up.size(); ++b)
        if (!seen[b] && (J.leq[up[a]][up[b]] || J.leq[up[b]][up[a]])) {
          seen[b] = true;
          stack.push_back(b);
        }
    }
    for (std::size_t b = 0; b < up.size(); ++b)
      if (!seen[b]) {
        rep.failing = j;
        rep.detail = "elements of I above " + J.labels[j] + " are disconnected (" + J.labels[up[0]] + " vs " +
                     J.labels[up[b]] + ")";
        return rep;
      }
  }
  rep.holds = true;
  return rep;
}

IntersectionComplexes intersection_complexes(const Complex& c, const IntegralityOptions& opt) {
  // union-find over (cell, face)
  std::map<std::pair<std::size_t, Cone>, std::size_t> id;
  std::vector<std::pair<std::size_t, Cone>> node;
  std::vector<std::size_t> parent;
  auto get = [&](std::size_t cell, const Cone& f) {
    auto key = std::make_pair(cell, f);
    auto it = id.find(key);
    if (it != id.end()) return it->second;
    std::size_t k = node.size();
    id.emplace(key, k);
    node.push_back(key);
    parent.push_back(k);
    return k;
  };
  auto find = [&](std::size_t k) {
    while (parent[k] != k) k = parent[k] = parent[parent[k]];
    return k;
  };
  for (std::size_t ci = 0; ci < c.cells.size(); ++ci)
    for (const auto& f : face_lattice(c.cells[ci].realization())) get(ci, f);
  for (const auto& g : c.gluings) {
    Cone shared = image_cone(g.pa, c.cells[g.a].positives()).dual();
    for (const auto& psi : face_lattice(shared)) {
      std::size_t a = get(g.a, image_cone(g.pa.transpose(), psi));
      std::size_t b = get(g.b, image_cone(g.pb.transpose(), psi));
      parent[find(a)] = find(b);
    }
  }

  // classes in order of first appearance, keeping those over the closed point of the base
  std::map<std::size_t, std::size_t> cls;
  IntersectionComplexes out;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < node.size(); ++k) {
    std::size_t r = find(k);
    if (cls.count(r)) continue;
    const auto& [cell, tau] = node[k];
    const PoGroup& P = c.cells[cell];
    IntVec x = tau.interior_point();
    bool over_closed = true;
    for (const auto& g : P.base().generators())
      if (dot(x, P.base_map() * g) <= 0) over_closed = false;
    if (!over_closed) {
      cls[r] = SIZE_MAX;
      continue;
    }
    cls[r] = out.faces.size();
    FaceEntry e{cell, tau};
    MonoidMap m = face_cell(P, tau).base_morphism();
    e.integral = is_integral(m, opt).holds;
    e.exact = is_exact(m).holds;
    out.faces.push_back(e);
    labels.push_back("cell" + std::to_string(cell) + ":" + tau.str());
  }
  std::vector<std::pair<std::size_t, std::size_t>> less;
  for (std::size_t a = 0; a < node.size(); ++a)
    for (std::size_t b = 0; b < node.size(); ++b) {
      if (a == b || node[a].first != node[b].first) continue;
      std::size_t ca = cls[find(a)], cb = cls[find(b)];
      if (ca == SIZE_MAX || cb == SIZE_MAX || ca == cb) continue;
      if (node[b].second.contains(node[a].second)) less.push_back({ca, cb});
    }
  out.J = Poset::from_relations(labels, less);
  for (std::size_t i = 0; i < out.faces.size(); ++i)
    if (out.faces[i].integral && out.faces[i].exact) out.I.push_back(i);
  return out;
}

// ---------------------------------------------------------------- PL functions

std::string AbelianGroup::str() const {
  std::vector<std::string> parts;
  if (free_rank == 1) parts.push_back("Z");
  if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  for (const auto& t : torsion) parts.push_back("Z/" + to_string(t));
  return parts.empty() ? "0" : join(parts, " + ");
}

AbelianGroup pl_classes(const Complex& c) {
  c.validate();
  std::vector<std::size_t> off{0};
  for (const auto& cell : c.cells) off.push_back(off.back() + cell.rank());
  const std::size_t N = off.back();

  std::vector<IntVec> rows;
  for (const auto& g : c.gluings)
    for (std::size_t r = 0; r < g.pa.rows(); ++r) {
      IntVec row(N);
      for (std::size_t k = 0; k < g.pa.cols(); ++k) row[off[g.a] + k] += g.pa(r, k);
      for (std::size_t k = 0; k < g.pb.cols(); ++k) row[off[g.b] + k] -= g.pb(r, k);
      rows.push_back(row);
    }
  std::vector<IntVec> pl_gens;
  if (rows.empty()) {
    for (std::size_t k = 0; k < N; ++k) pl_gens.push_back(unit(N, k));
  } else {
    pl_gens = integer_kernel(IntMatrix::from_rows(rows, N));
  }
  Lattice pl = Lattice::span(pl_gens, N);

  std::vector<IntVec> sub;
  const PoGroup& first = c.cells.front();
  for (const auto& e : first.base().group().basis_vectors()) {
    IntVec v(N);
    for (std::size_t ci = 0; ci < c.cells.size(); ++ci) {
      IntVec img = c.cells[ci].base_map() * e;
      for (std::size_t k = 0; k < img.size(); ++k) v[off[ci] + k] = img[k];
    }
    sub.push_back(v);
  }
  if (c.shared_ambient)
    for (std::size_t k = 0; k < first.rank(); ++k) {
      IntVec v(N);
      for (std::size_t ci = 0; ci < c.cells.size(); ++ci) v[off[ci] + k] = 1;
      sub.push_back(v);
    }
  std::vector<IntVec> coords;
  for (const auto& v : sub) {
    auto cv = pl.coordinates(v);
    if (!cv) throw Error("SchemaError", "a globally linear function violates the gluing");
    coords.push_back(*cv);
  }
  AbelianGroup out;
  if (coords.empty()) {
    out.free_rank = pl.rank();
    return out;
  }
  IntMatrix S = IntMatrix::from_rows(coords, pl.rank());
  auto inv = invariant_factors(S);
  out.free_rank = pl.rank() - inv.size();
  for (const auto& d : inv)
    if (d > 1) out.torsion.push_back(d);
  return out;
}

// ---------------------------------------------------------------- presentations

namespace {

using Monomial = std::map<std::size_t, Int>;  // generator index -> exponent

std::string render(const Monomial& m, const std::vector<SymbolicPresentation::Generator>& gens) {
  std::vector<std::string> parts;
  for (const auto& [k, e] : m) {
    if (e == 0) continue;
    parts.push_back(e == 1 ? gens[k].token : gens[k].token + "^" + to_string(e));
  }
  return parts.empty() ? "1" : join(parts, " ");
}

std::vector<std::string> names(const std::string& stem, std::size_t n) {
  if (n == 1) return {stem};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(stem + "_" + std::to_string(i + 1));
  return out;
}

}  // namespace

std::string SymbolicPresentation::str() const {
  std::vector<std::string> g;
  for (const auto& x : generators) g.push_back(x.invertible ? x.token + "^±" : x.token);
  std::string s = "generators: " + join(g, ", ") + "\nrelations:";
  for (const auto& r : relations) s += "\n  " + r;
  if (relations.empty()) s += " none";
  for (const auto& e : eliminated) s += "\neliminated: " + e;
  return s;
}

SymbolicPresentation present_local_algebra(const MonoidMap& h, const PresentationOptions& opt) {
  const FineMonoid &P = h.source(), &Q = h.target();
  for (const auto* m : {&P, &Q})
    if (!m->is_sharp() || !m->is_saturated())
      throw Error("HypothesisViolation", "presentations need fine, saturated, sharp monoids");
  const std::vector<IntVec> hb = Q.minimal_generators();
  const std::vector<IntVec> pg = P.minimal_generators();
  const FineMonoid Qhb(Q.ambient(), hb);
  const IntMatrix H = h.intrinsic_matrix();
  const std::size_t rP = P.rank();

  SymbolicPresentation out;
  auto& gens = out.generators;
  auto xs = names("x", hb.size());
  for (std::size_t i = 0; i < hb.size(); ++i) gens.push_back({xs[i], hb[i], false});
  const std::size_t u0 = gens.size();

  // unit lattice: all of P^gp, or only K = ker h^gp when sliced; coords maps P-intrinsic
  // coordinates to exponents of the u tokens
  std::vector<IntVec> ubasis;
  std::function<IntVec(const IntVec&)> ucoords;
  if (!opt.sliced) {
    for (std::size_t i = 0; i < rP; ++i) ubasis.push_back(unit(rP, i));
    ucoords = [](const IntVec& c) { return c; };
  } else {
    Lattice K = Lattice::span(H.cols() ? integer_kernel(H) : std::vector<IntVec>{}, rP);
    ubasis = K.basis_vectors();
    QuotientMap q = quotient_by(K);
    ucoords = [K, q](const IntVec& c) {
      IntVec k = sub(c, q.section * (q.proj * c));
      return *K.coordinates(k);
    };
  }
  auto us = names("u", ubasis.size());
  for (std::size_t i = 0; i < ubasis.size(); ++i)
    gens.push_back({us[i], h(P.from_intrinsic(ubasis[i])), true});
  const std::size_t s0 = gens.size();
  auto ss = names("s", pg.size());
  for (const auto& s : ss) gens.push_back({s, {}, false});

  std::vector<std::pair<Monomial, Monomial>> rels;
  for (std::size_t j = 0; j < pg.size(); ++j) {
    Monomial lhs, rhs;
    auto coef = Qhb.decompose(h(pg[j]));
    for (std::size_t i = 0; i < hb.size(); ++i)
      if ((*coef)[i] != 0) lhs[i] = (*coef)[i];
    IntVec e = ucoords(P.to_intrinsic(pg[j]));
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) rhs[u0 + i] = opt.sliced ? Int(e[i]) : Int(-e[i]);
    rhs[s0 + j] = 1;
    rels.push_back({lhs, rhs});
  }
  // binomials of the Hilbert basis relations of Q
  if (!hb.empty())
    for (auto k : integer_kernel(IntMatrix::from_cols(hb, Q.ambient()))) {
      auto lead = std::find_if(k.begin(), k.end(), [](const Int& a) { return a != 0; });
      if (lead != k.end() && *lead < 0) k = neg(k);
      Monomial lhs, rhs;
      for (std::size_t i = 0; i < k.size(); ++i) {
        if (k[i] > 0) lhs[i] = k[i];
        if (k[i] < 0) rhs[i] = -k[i];
      }
      rels.push_back({lhs, rhs});
    }

  // x_i - m where x_i occurs nowhere else: substitute it away
  auto occurrences = [&](std::size_t g) {
    int n = 0;
    for (const auto& [l, r] : rels) n += static_cast<int>(l.count(g) + r.count(g));
    return n;
  };
  std::vector<bool> drop(gens.size(), false);
  for (std::size_t ri = 0; ri < rels.size();) {
    auto& [l, r] = rels[ri];
    std::optional<std::size_t> var;
    for (const auto* side : {&l, &r})
      if (side->size() == 1 && side->begin()->first < u0 && side->begin()->second == 1 &&
          occurrences(side->begin()->first) == 1)
        var = side->begin()->first;
    if (!var) {
      ++ri;
      continue;
    }
    const Monomial& other = l.count(*var) ? r : l;
    out.eliminated.push_back(gens[*var].token + " = " + render(other, gens));
    drop[*var] = true;
    rels.erase(rels.begin() + static_cast<long>(ri));
  }
  for (const auto& [l, r] : rels) out.relations.push_back(render(l, gens) + " - " + render(r, gens));
  std::vector<SymbolicPresentation::Generator> kept;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!drop[i]) kept.push_back(gens[i]);
  gens = std::move(kept);
  return out;
}

}  // namespace conekit
