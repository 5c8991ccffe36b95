#include "conekit/cone.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

#include "conekit/errors.hpp"

namespace conekit {

namespace {

void sort_unique(std::vector<IntVec>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Orthogonal projection of v onto span(basis)^perp, made primitive.
IntVec project_out(const IntVec& v, const std::vector<IntVec>& basis) {
  if (basis.empty()) return primitive(v);
  const std::size_t k = basis.size();
  std::vector<RatVec> gram(k, RatVec(k));
  RatVec rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = Rat(dot(basis[i], basis[j]));
    rhs[i] = Rat(dot(basis[i], v));
  }
  auto c = rational_solve(gram, rhs, k);
  assert(c);
  RatVec r = to_rat(v);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < r.size(); ++j) r[j] -= (*c)[i] * basis[i][j];
  return primitive(r);
}

std::size_t active_rank(const std::vector<IntVec>& cons, const IntVec& r, std::size_t n) {
  std::vector<IntVec> act;
  for (const auto& c : cons)
    if (dot(c, r) == 0) act.push_back(c);
  return rank(act, n);
}

std::size_t common_active_rank(const std::vector<IntVec>& cons, const IntVec& p, const IntVec& q,
                               std::size_t n) {
  std::vector<IntVec> act;
  for (const auto& c : cons)
    if (dot(c, p) == 0 && dot(c, q) == 0) act.push_back(c);
  return rank(act, n);
}

}  // namespace

VRep vrep_from_hrep(std::size_t n, const std::vector<IntVec>& ineqs, const std::vector<IntVec>& eqs) {
  std::vector<IntVec> lin, rays, cons;
  for (std::size_t i = 0; i < n; ++i) lin.push_back(unit(n, i));

  auto step = [&](const IntVec& a) {
    if (is_zero(a)) return;
    std::vector<IntVec> next_rays;
    std::size_t idx = lin.size();
    for (std::size_t i = 0; i < lin.size(); ++i)
      if (dot(a, lin[i]) != 0) {
        idx = i;
        break;
      }
    if (idx < lin.size()) {
      IntVec l = lin[idx];
      Int al = dot(a, l);
      if (al < 0) {
        l = neg(l);
        al = -al;
      }
      std::vector<IntVec> next_lin;
      for (std::size_t j = 0; j < lin.size(); ++j) {
        if (j == idx) continue;
        next_lin.push_back(primitive(sub(scale(al, lin[j]), scale(dot(a, lin[j]), l))));
      }
      for (const auto& r : rays) {
        IntVec rr = primitive(sub(scale(al, r), scale(dot(a, r), l)));
        if (!is_zero(rr)) next_rays.push_back(rr);
      }
      next_rays.push_back(primitive(l));
      lin = std::move(next_lin);
    } else {
      std::vector<IntVec> pos, negs;
      for (const auto& r : rays) {
        Int s = dot(a, r);
        if (s >= 0) next_rays.push_back(r);
        if (s > 0) pos.push_back(r);
        if (s < 0) negs.push_back(r);
      }
      const std::size_t target = n - lin.size() - 2;
      for (const auto& p : pos)
        for (const auto& q : negs) {
          Budget::spend();
          if (n < lin.size() + 2 || common_active_rank(cons, p, q, n) != target) continue;
          next_rays.push_back(primitive(sub(scale(dot(a, p), q), scale(dot(a, q), p))));
        }
    }
    cons.push_back(a);
    rays.clear();
    for (auto& r : next_rays) {
      IntVec rr = project_out(r, lin);
      if (is_zero(rr)) continue;
      if (active_rank(cons, rr, n) + lin.size() + 1 != n) continue;
      rays.push_back(rr);
    }
    sort_unique(rays);
  };

  for (const auto& e : eqs) {
    step(e);
    step(neg(e));
  }
  for (const auto& a : ineqs) step(a);
  return VRep{rays, lin};
}

Cone Cone::zero(std::size_t n) { return from_generators(n, {}); }
Cone Cone::full(std::size_t n) { return from_inequalities(n, {}); }

Cone Cone::orthant(std::size_t n) {
  std::vector<IntVec> g;
  for (std::size_t i = 0; i < n; ++i) g.push_back(unit(n, i));
  return from_generators(n, g);
}

Cone Cone::from_generators(std::size_t n, const std::vector<IntVec>& gens) {
  Cone c;
  c.n_ = n;
  // the dual cone {y : g.y >= 0} gives equations (its lineality) and facets (its rays)
  VRep dual = vrep_from_hrep(n, gens, {});
  c.eqs_ = saturate_subgroup(dual.lineality, n).basis_vectors();
  for (const auto& f : dual.rays) c.facets_.push_back(project_out(f, c.eqs_));
  sort_unique(c.facets_);
  VRep v = vrep_from_hrep(n, c.facets_, c.eqs_);
  c.lin_ = saturate_subgroup(v.lineality, n).basis_vectors();
  for (const auto& r : v.rays) c.rays_.push_back(project_out(r, c.lin_));
  sort_unique(c.rays_);
  return c;
}

Cone Cone::from_inequalities(std::size_t n, const std::vector<IntVec>& ineqs, const std::vector<IntVec>& eqs) {
  VRep v = vrep_from_hrep(n, ineqs, eqs);
  std::vector<IntVec> gens = v.rays;
  for (const auto& l : v.lineality) {
    gens.push_back(l);
    gens.push_back(neg(l));
  }
  return from_generators(n, gens);
}

std::vector<IntVec> Cone::generators() const {
  std::vector<IntVec> g = rays_;
  for (const auto& l : lin_) {
    g.push_back(l);
    g.push_back(neg(l));
  }
  return g;
}

bool Cone::contains(const IntVec& v) const {
  assert(v.size() == n_);
  for (const auto& e : eqs_)
    if (dot(e, v) != 0) return false;
  for (const auto& f : facets_)
    if (dot(f, v) < 0) return false;
  return true;
}

bool Cone::contains(const Cone& o) const {
  for (const auto& g : o.generators())
    if (!contains(g)) return false;
  return true;
}

bool Cone::in_relative_interior(const IntVec& v) const {
  if (!contains(v)) return false;
  for (const auto& f : facets_)
    if (dot(f, v) <= 0) return false;
  return true;
}

IntVec Cone::interior_point() const {
  IntVec p(n_);
  for (const auto& r : rays_) p = add(p, r);
  return p;
}

bool Cone::operator==(const Cone& o) const {
  return n_ == o.n_ && rays_ == o.rays_ && lin_ == o.lin_;
}

bool Cone::operator<(const Cone& o) const {
  if (dim() != o.dim()) return dim() < o.dim();
  if (lin_ != o.lin_) return lin_ < o.lin_;
  return rays_ < o.rays_;
}

Cone Cone::dual() const {
  Cone d;
  d.n_ = n_;
  d.rays_ = facets_;
  d.lin_ = eqs_;
  d.facets_ = rays_;
  d.eqs_ = lin_;
  return d;
}

Cone Cone::intersect(const Cone& o) const {
  std::vector<IntVec> ineq = facets_, eq = eqs_;
  ineq.insert(ineq.end(), o.facets_.begin(), o.facets_.end());
  eq.insert(eq.end(), o.eqs_.begin(), o.eqs_.end());
  return from_inequalities(n_, ineq, eq);
}

Cone Cone::face_at(const IntVec& f) const {
  std::vector<IntVec> eq = eqs_;
  eq.push_back(f);
  return from_inequalities(n_, facets_, eq);
}

Cone Cone::minimal_face_containing(const IntVec& v) const {
  std::vector<IntVec> eq = eqs_;
  for (const auto& f : facets_)
    if (dot(f, v) == 0) eq.push_back(f);
  return from_inequalities(n_, facets_, eq);
}

bool Cone::is_face_of(const Cone& big) const {
  if (!big.contains(*this)) return false;
  return big.minimal_face_containing(interior_point()) == *this;
}

std::string Cone::str() const {
  std::string s = "cone(rays=[";
  for (std::size_t i = 0; i < rays_.size(); ++i) s += (i ? ", " : "") + to_string(rays_[i]);
  s += "], lineality=[";
  for (std::size_t i = 0; i < lin_.size(); ++i) s += (i ? ", " : "") + to_string(lin_[i]);
  return s + "])";
}

std::vector<Cone> face_lattice(const Cone& c) {
  const auto& rays = c.rays();
  const std::size_t m = rays.size();
  std::set<std::vector<bool>> seen;
  std::vector<std::vector<bool>> queue{std::vector<bool>(m, true)};
  seen.insert(queue[0]);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const auto cur = queue[qi];
    for (const auto& f : c.facets()) {
      std::vector<bool> nxt(m, false);
      for (std::size_t i = 0; i < m; ++i) nxt[i] = cur[i] && dot(f, rays[i]) == 0;
      if (seen.insert(nxt).second) queue.push_back(nxt);
    }
  }
  std::vector<Cone> faces;
  for (const auto& s : queue) {
    std::vector<IntVec> gens;
    for (std::size_t i = 0; i < m; ++i)
      if (s[i]) gens.push_back(rays[i]);
    for (const auto& l : c.lineality()) {
      gens.push_back(l);
      gens.push_back(neg(l));
    }
    faces.push_back(Cone::from_generators(c.ambient(), gens));
  }
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  return faces;
}

Cone image_cone(const IntMatrix& f, const Cone& c) {
  assert(f.cols() == c.ambient());
  std::vector<IntVec> g;
  for (const auto& v : c.generators()) g.push_back(f * v);
  return Cone::from_generators(f.rows(), g);
}

Cone preimage_cone(const IntMatrix& f, const Cone& c) {
  assert(f.rows() == c.ambient());
  IntMatrix ft = f.transpose();
  std::vector<IntVec> ineq, eq;
  for (const auto& a : c.facets()) ineq.push_back(ft * a);
  for (const auto& e : c.equations()) eq.push_back(ft * e);
  return Cone::from_inequalities(f.cols(), ineq, eq);
}

namespace {

// Placing triangulation of a full-dimensional pointed cone in R^d.
std::vector<std::vector<std::size_t>> triangulate(const std::vector<IntVec>& R, std::size_t d) {
  std::vector<std::size_t> init;
  std::vector<IntVec> cur;
  for (std::size_t i = 0; i < R.size() && init.size() < d; ++i) {
    cur.push_back(R[i]);
    if (rank(cur, d) == init.size() + 1)
      init.push_back(i);
    else
      cur.pop_back();
  }
  if (init.size() < d) throw Error("Internal", "triangulation needs a full-dimensional cone");
  std::vector<std::vector<std::size_t>> simplices{init};
  std::set<std::size_t> used(init.begin(), init.end());
  for (std::size_t i = 0; i < R.size(); ++i) {
    if (used.count(i)) continue;
    std::map<std::vector<std::size_t>, std::pair<int, std::size_t>> facets;
    for (const auto& s : simplices)
      for (std::size_t k = 0; k < s.size(); ++k) {
        std::vector<std::size_t> F;
        for (std::size_t j = 0; j < s.size(); ++j)
          if (j != k) F.push_back(s[j]);
        std::sort(F.begin(), F.end());
        auto& e = facets[F];
        e.first++;
        e.second = s[k];
      }
    std::vector<std::vector<std::size_t>> added;
    for (const auto& [F, info] : facets) {
      if (info.first != 1) continue;
      std::vector<RatVec> rows;
      for (auto j : F) rows.push_back(to_rat(R[j]));
      auto ker = rational_kernel(rows, d);
      assert(ker.size() == 1);
      IntVec nu = primitive(ker[0]);
      if (dot(nu, R[info.second]) < 0) nu = neg(nu);
      if (dot(nu, R[i]) < 0) {
        auto S = F;
        S.push_back(i);
        std::sort(S.begin(), S.end());
        added.push_back(S);
      }
    }
    simplices.insert(simplices.end(), added.begin(), added.end());
    used.insert(i);
  }
  return simplices;
}

// Lattice points of the half-open parallelepiped spanned by the columns of M.
std::vector<IntVec> parallelepiped_points(const IntMatrix& M) {
  const std::size_t d = M.rows();
  SmithForm s = smith_normal_form(M);
  IntMatrix Uinv = unimodular_inverse(s.U);
  std::vector<RatVec> aug(d, RatVec(2 * d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) aug[i][j] = M(i, j);
    aug[i][d + i] = 1;
  }
  RowEchelon e = rref(aug, 2 * d);
  std::vector<RatVec> Minv(d, RatVec(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) Minv[i][j] = e.rows[i][d + j];

  std::vector<IntVec> out;
  IntVec a(d);
  while (true) {
    Budget::spend();
    IntVec x = Uinv * a;
    RatVec lam(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) lam[i] += Minv[i][j] * x[j];
    RatVec frac(d);
    for (std::size_t i = 0; i < d; ++i) frac[i] = lam[i] - Rat(floor_of(lam[i]));
    IntVec p(d);
    for (std::size_t i = 0; i < d; ++i) {
      Rat t = 0;
      for (std::size_t j = 0; j < d; ++j) t += Rat(M(i, j)) * frac[j];
      assert(t.get_den() == 1);
      p[i] = t.get_num();
    }
    if (!is_zero(p)) out.push_back(p);
    std::size_t k = 0;
    while (k < d) {
      a[k] += 1;
      if (a[k] < s.D(k, k)) break;
      a[k] = 0;
      ++k;
    }
    if (k == d) break;
  }
  return out;
}

// Hilbert basis of a full-dimensional pointed cone in Z^d given by its rays.
std::vector<IntVec> hilbert_basis_full(const std::vector<IntVec>& rays, std::size_t d) {
  if (d == 0) return {};
  Cone c = Cone::from_generators(d, rays);
  std::vector<IntVec> cand = c.rays();
  for (const auto& s : triangulate(c.rays(), d)) {
    std::vector<IntVec> cols;
    for (auto i : s) cols.push_back(c.rays()[i]);
    auto pts = parallelepiped_points(IntMatrix::from_cols(cols, d));
    cand.insert(cand.end(), pts.begin(), pts.end());
  }
  sort_unique(cand);
  std::vector<IntVec> hb;
  for (const auto& x : cand) {
    bool reducible = false;
    for (const auto& y : cand) {
      if (y == x) continue;
      Budget::spend();
      if (c.contains(sub(x, y))) {
        reducible = true;
        break;
      }
    }
    if (!reducible) hb.push_back(x);
  }
  return hb;
}

}  // namespace

std::vector<IntVec> hilbert_basis(const Cone& c) { return hilbert_basis(c, Lattice::full(c.ambient())); }

std::vector<IntVec> hilbert_basis(const Cone& c, const Lattice& L) {
  if (!c.is_pointed()) throw Error("NotStrictlyConvex", "cone has a lineality space: " + c.str());
  const std::size_t n = c.ambient();
  // coordinates t in Z^k with x = B^T t
  IntMatrix Bt = L.basis().transpose();
  const std::size_t k = L.rank();
  Cone cl = preimage_cone(Bt, c);
  Lattice span = Lattice::span(integer_kernel(IntMatrix::from_rows(cl.equations(), k)), k);
  const std::size_t d = span.rank();
  std::vector<IntVec> coords;
  for (const auto& r : cl.rays()) {
    auto cr = span.coordinates(r);
    assert(cr);
    coords.push_back(*cr);
  }
  std::vector<IntVec> out;
  for (const auto& h : hilbert_basis_full(coords, d)) out.push_back(Bt * span.from_coordinates(h));
  (void)n;
  sort_unique(out);
  return out;
}

std::vector<IntVec> saturated_generators(const Cone& c, const Lattice& L) {
  const std::size_t k = L.rank();
  IntMatrix Bt = L.basis().transpose();
  Cone cl = preimage_cone(Bt, c);
  Lattice lin = Lattice::span(cl.lineality(), k);
  QuotientMap q = quotient_by(lin);
  Cone pointed = image_cone(q.proj, cl);
  std::vector<IntVec> out;
  for (const auto& h : hilbert_basis(pointed)) out.push_back(Bt * (q.section * h));
  for (const auto& l : lin.basis_vectors()) {
    out.push_back(Bt * l);
    out.push_back(neg(Bt * l));
  }
  sort_unique(out);
  return out;
}

std::vector<RatVec> polyhedron_vertices(std::size_t d, const std::vector<IntVec>& A, const IntVec& b) {
  std::vector<IntVec> hom;
  for (std::size_t i = 0; i < A.size(); ++i) {
    IntVec row = A[i];
    row.push_back(-b[i]);
    hom.push_back(row);
  }
  hom.push_back(unit(d + 1, d));
  VRep v = vrep_from_hrep(d + 1, hom, {});
  std::vector<RatVec> verts;
  for (const auto& r : v.rays) {
    if (r[d] <= 0) continue;
    RatVec x(d);
    for (std::size_t j = 0; j < d; ++j) x[j] = Rat(r[j], r[d]);
    for (auto& q : x) q.canonicalize();
    verts.push_back(x);
  }
  if (verts.empty()) return verts;
  if (!v.lineality.empty()) {
    // a polyhedron with lineality has no vertices; report one point of the minimal face
    throw Error("Unbounded", "polyhedron contains a line");
  }
  std::sort(verts.begin(), verts.end());
  return verts;
}

std::vector<IntVec> minimal_points(std::size_t d, const std::vector<IntVec>& A, const IntVec& b,
                                   const std::vector<IntVec>& steps) {
  auto verts = polyhedron_vertices(d, A, b);
  if (verts.empty()) return {};
  IntVec lo(d), hi(d);
  for (std::size_t j = 0; j < d; ++j) {
    lo[j] = floor_of(verts[0][j]);
    hi[j] = ceil_of(verts[0][j]);
    for (const auto& v : verts) {
      lo[j] = std::min<Int>(lo[j], floor_of(v[j]));
      hi[j] = std::max<Int>(hi[j], ceil_of(v[j]));
    }
    for (const auto& g : steps) {
      if (g[j] < 0) lo[j] += g[j];
      if (g[j] > 0) hi[j] += g[j];
    }
  }
  auto inside = [&](const IntVec& x) {
    for (std::size_t i = 0; i < A.size(); ++i)
      if (dot(A[i], x) < b[i]) return false;
    return true;
  };
  std::vector<IntVec> out;
  if (d == 0) {
    if (inside({})) out.push_back({});
    return out;
  }
  IntVec x = lo;
  while (true) {
    Budget::spend();
    if (inside(x)) {
      bool minimal = true;
      for (const auto& g : steps)
        if (inside(sub(x, g))) {
          minimal = false;
          break;
        }
      if (minimal) out.push_back(x);
    }
    std::size_t k = 0;
    while (k < d) {
      x[k] += 1;
      if (x[k] <= hi[k]) break;
      x[k] = lo[k];
      ++k;
    }
    if (k == d) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace conekit
