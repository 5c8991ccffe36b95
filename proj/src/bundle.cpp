#include "conekit/bundle.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <cstdlib>
#include <functional>
#include <map>

#include "conekit/errors.hpp"

namespace conekit {

// ---------------------------------------------------------------- multicharacters

MultiCharacter::MultiCharacter(std::size_t n, std::vector<IntVec> cs) : ambient(n), chars(std::move(cs)) {
  for (const auto& c : chars)
    if (c.size() != n) throw Error("RankMismatch", "character " + to_string(c) + " not in rank " + std::to_string(n));
  std::sort(chars.begin(), chars.end());
}

MultiCharacter MultiCharacter::integers(const std::vector<long>& xs) {
  std::vector<IntVec> cs;
  for (long x : xs) cs.push_back({Int(x)});
  return MultiCharacter(1, cs);
}

std::string MultiCharacter::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < chars.size(); ++i) s += (i ? ", " : "") + to_string(chars[i]);
  return s + "}";
}

Restriction restrict_multichar(const MultiCharacter& u, const Cone& sigma, const Cone& tau) {
  if (sigma.ambient() != u.ambient || !tau.is_face_of(sigma))
    throw Error("NotAFace", tau.str() + " is not a face of " + sigma.str());
  IntMatrix proj;
  if (tau.lineality().empty() && tau.rays().size() == 1) {
    proj = IntMatrix::from_rows({tau.rays()[0]}, u.ambient);
  } else {
    Lattice perp = annihilator(Lattice::span(tau.generators(), u.ambient));
    proj = quotient_by(saturate_subgroup(perp.basis_vectors(), u.ambient)).proj;
  }
  std::vector<IntVec> img;
  for (const auto& c : u.chars) img.push_back(proj * c);
  return Restriction{MultiCharacter(proj.rows(), img), proj};
}

// ---------------------------------------------------------------- subspaces and flags

Subspace::Subspace(std::size_t r, const std::vector<RatVec>& spanning) : r_(r) {
  for (const auto& v : spanning)
    if (v.size() != r) throw Error("RankMismatch", "vector of length " + std::to_string(v.size()) + " in Q^" + std::to_string(r));
  basis_ = spanning.empty() ? std::vector<RatVec>{} : rref(spanning, r).rows;
}

Subspace Subspace::full(std::size_t r) {
  std::vector<RatVec> b;
  for (std::size_t i = 0; i < r; ++i) b.push_back(to_rat(unit(r, i)));
  return Subspace(r, b);
}

Subspace Subspace::coordinate(std::size_t r, const std::vector<std::size_t>& idx) {
  std::vector<RatVec> b;
  for (auto i : idx) b.push_back(to_rat(unit(r, i)));
  return Subspace(r, b);
}

bool Subspace::contains(const RatVec& v) const {
  auto rows = basis_;
  rows.push_back(v);
  return rank(rows, r_) == basis_.size();
}

bool Subspace::contains(const Subspace& o) const {
  for (const auto& v : o.basis_)
    if (!contains(v)) return false;
  return true;
}

Subspace Subspace::operator+(const Subspace& o) const {
  auto rows = basis_;
  rows.insert(rows.end(), o.basis_.begin(), o.basis_.end());
  return Subspace(r_, rows);
}

Subspace Subspace::intersect(const Subspace& o) const {
  // U ∩ W = (U^perp + W^perp)^perp
  auto perp = [this](const std::vector<RatVec>& b) {
    return b.empty() ? full(r_).basis() : rational_kernel(b, r_);
  };
  if (dim() == r_) return o;
  if (o.dim() == r_) return *this;
  auto rows = perp(basis_);
  auto more = perp(o.basis_);
  rows.insert(rows.end(), more.begin(), more.end());
  return Subspace(r_, rational_kernel(rows, r_));
}

std::string Subspace::str() const {
  std::string s = "<";
  for (std::size_t i = 0; i < basis_.size(); ++i) s += (i ? ", " : "") + to_string(basis_[i]);
  return s + ">";
}

void WeightedFlag::validate() const {
  if (weights.size() != steps.size() || steps.empty()) throw Error("SchemaError", "flag needs matching weights and steps");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i].ambient() != r) throw Error("RankMismatch", "flag step in the wrong space");
    if (i && !(weights[i] < weights[i - 1])) throw Error("SchemaError", "flag weights must strictly decrease");
    if (i && (!steps[i].contains(steps[i - 1]) || steps[i].dim() <= steps[i - 1].dim()))
      throw Error("SchemaError", "flag steps must strictly increase");
  }
  if (steps.back().dim() != r) throw Error("SchemaError", "last flag step must be the whole space");
}

Subspace WeightedFlag::at(const Int& t) const {
  Subspace out = Subspace::zero(r);
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (weights[i] >= t) out = steps[i];
  return out;
}

std::vector<std::size_t> WeightedFlag::dims() const {
  std::vector<std::size_t> d;
  for (const auto& s : steps) d.push_back(s.dim());
  return d;
}

std::vector<Int> WeightedFlag::multiset() const {
  std::vector<Int> out;
  std::size_t prev = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    for (std::size_t k = prev; k < steps[i].dim(); ++k) out.push_back(weights[i]);
    prev = steps[i].dim();
  }
  std::sort(out.begin(), out.end());
  return out;
}

WeightedFlag split_flag(const std::vector<Int>& u) {
  WeightedFlag f;
  f.r = u.size();
  std::vector<Int> w = u;
  std::sort(w.begin(), w.end(), std::greater<>());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  for (const auto& t : w) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < u.size(); ++k)
      if (u[k] >= t) idx.push_back(k);
    f.weights.push_back(t);
    f.steps.push_back(Subspace::coordinate(f.r, idx));
  }
  return f;
}

WeightedFlag klyachko_filtration(const MultiCharacter& u) {
  if (u.ambient != 1) throw Error("RankMismatch", "ray multicharacters are integers");
  if (u.rank() == 0) throw Error("SchemaError", "empty multicharacter");
  std::vector<Int> xs;
  for (const auto& c : u.chars) xs.push_back(c[0]);
  return split_flag(xs);
}

// ---------------------------------------------------------------- Payne

Cone Fan::cone(std::size_t i) const {
  std::vector<IntVec> g;
  for (auto k : cones.at(i)) g.push_back(rays.at(k));
  return Cone::from_generators(n, g);
}

PayneReport payne_compatibility(const Fan& fan, const std::vector<WeightedFlag>& flags,
                                const std::vector<MultiCharacter>& psi) {
  if (flags.size() != fan.rays.size() || psi.size() != fan.cones.size())
    throw Error("SchemaError", "one flag per ray and one multicharacter per cone");
  for (const auto& f : flags) f.validate();
  PayneReport rep;
  for (std::size_t c = 0; c < fan.cones.size(); ++c) {
    const auto& rs = fan.cones[c];
    for (auto k : rs) {
      std::vector<Int> vals;
      for (const auto& u : psi[c].chars) vals.push_back(dot(u, fan.rays[k]));
      std::sort(vals.begin(), vals.end());
      if (vals != flags[k].multiset())
        throw Error("IncompatibleChern", "cone " + std::to_string(c) + " does not restrict to the flag of ray " +
                                             std::to_string(k));
    }
    // thresholds: each ray's jump values plus one above
    std::vector<std::vector<Int>> choices;
    for (auto k : rs) {
      auto w = flags[k].weights;
      w.push_back(w.front() + 1);
      choices.push_back(w);
    }
    std::vector<std::size_t> pick(rs.size(), 0);
    while (true) {
      Budget::spend();
      std::vector<Int> t;
      Subspace meet = Subspace::full(flags.empty() ? 0 : flags[rs.empty() ? 0 : rs[0]].r);
      for (std::size_t a = 0; a < rs.size(); ++a) {
        t.push_back(choices[a][pick[a]]);
        meet = meet.intersect(flags[rs[a]].at(t.back()));
      }
      std::size_t count = 0;
      for (const auto& u : psi[c].chars) {
        bool ok = true;
        for (std::size_t a = 0; a < rs.size(); ++a)
          if (dot(u, fan.rays[rs[a]]) < t[a]) ok = false;
        count += ok;
      }
      if (meet.dim() != count) {
        rep.cone = c;
        rep.thresholds = t;
        rep.lhs = meet.dim();
        rep.rhs = count;
        rep.detail = "cone " + std::to_string(c) + ": intersection has dimension " + std::to_string(meet.dim()) +
                     " but " + std::to_string(count) + " characters clear the thresholds";
        return rep;
      }
      std::size_t a = 0;
      while (a < rs.size() && ++pick[a] == choices[a].size()) pick[a++] = 0;
      if (a == rs.size()) break;
    }
  }
  rep.holds = true;
  return rep;
}

// ---------------------------------------------------------------- automorphisms and infima

std::size_t aut_dimension(const PoGroup& sigma, const MultiCharacter& lambda) {
  if (lambda.ambient != sigma.rank()) throw Error("RankMismatch", "characters must live in R^");
  std::size_t n = 0;
  for (const auto& a : lambda.chars)
    for (const auto& b : lambda.chars) n += sigma.positives().contains(sub(b, a));
  return n;
}

InfMatrix inf_matrix(const PoGroup& sigma, const MultiCharacter& lambda) {
  if (lambda.ambient != sigma.rank()) throw Error("RankMismatch", "characters must live in R^");
  MonoidMap m = sigma.base_morphism();
  QuotientMap q = quotient_by(saturate_subgroup(sigma.positives().lineality(), sigma.rank()));
  const auto& l = lambda.chars;
  InfMatrix out;
  out.entries.assign(l.size(), std::vector<InfResult>(l.size()));
  for (std::size_t i = 0; i < l.size(); ++i)
    for (std::size_t j = 0; j < l.size(); ++j) {
      IntVec d = q.proj * sub(l[j], l[i]);
      if (!m.target().group().contains(d)) continue;  // no element of the base bounds it
      out.entries[i][j] = infimum(m, d);
      if (out.entries[i][j].kind == InfResult::Kind::NoMax && out.representable) {
        out.representable = false;
        out.warning = "inf(lambda_" + std::to_string(j + 1) + " - lambda_" + std::to_string(i + 1) +
                      ") has no maximum; the automorphism group is not representable";
      }
    }
  return out;
}

std::string InfMatrix::str() const {
  std::string s;
  for (const auto& row : entries) {
    for (std::size_t j = 0; j < row.size(); ++j) s += (j ? "  " : "") + to_string(row[j]);
    s += "\n";
  }
  if (!representable) s += "warning: " + warning + "\n";
  return s;
}

IntVec inf_image(const PoGroup& sigma, const InfResult& r) {
  if (r.kind != InfResult::Kind::Max) throw Error("InfUndefined", "infimum has no maximum");
  IntVec p = r.value;
  if (r.localized) {
    auto sol = solve_diophantine(r.base_change, r.value);
    if (!sol) throw Error("InfUndefined", "cannot lift the localized infimum");
    p = sigma.base().from_intrinsic(sol->particular);
  }
  return sigma.base_map() * p;
}

PoGroup weyl_hull(const PoGroup& sigma, const MultiCharacter& lambda) {
  InfMatrix m = inf_matrix(sigma, lambda);
  std::vector<IntVec> gens;
  for (const auto& g : sigma.base().generators()) gens.push_back(sigma.base_map() * g);
  const auto& l = lambda.chars;
  for (std::size_t i = 0; i < l.size(); ++i)
    for (std::size_t j = 0; j < l.size(); ++j) {
      if (i == j) continue;
      const InfResult& mu = m.entries[j][i];  // inf(lambda_i - lambda_j)
      if (mu.kind == InfResult::Kind::NoMax)
        throw Error("InfUndefined", "inf(lambda_" + std::to_string(i + 1) + " - lambda_" + std::to_string(j + 1) +
                                        ") = " + to_string(mu));
      if (mu.kind == InfResult::Kind::Max) gens.push_back(sub(sub(l[i], l[j]), inf_image(sigma, mu)));
    }
  return PoGroup(sigma.rank(), Cone::from_generators(sigma.rank(), gens), sigma.base(), sigma.base_map());
}

// ---------------------------------------------------------------- families

Subspace Family::value(const IntVec& d) const {
  Subspace s = Subspace::zero(r);
  for (const auto& [g, v] : gens)
    if (order.contains(sub(d, g))) s = s + v;
  return s;
}

Family split_family(const FineMonoid& order, const MultiCharacter& u) {
  if (u.ambient != order.ambient()) throw Error("RankMismatch", "characters must live in the monoid's lattice");
  Family f{order, u.rank(), {}};
  for (std::size_t i = 0; i < u.rank(); ++i) f.gens.push_back({neg(u.chars[i]), Subspace::coordinate(u.rank(), {i})});
  return f;
}

Family pullback_filtration(const MonoidMap& h, const Family& e) {
  if (!(h.source() == e.order)) throw Error("SchemaError", "family is not indexed by the source of the map");
  Family out{h.target(), e.r, {}};
  for (const auto& [g, v] : e.gens) out.gens.push_back({h(g), v});
  return out;
}

// ---------------------------------------------------------------- apartments

namespace {

using Mat2 = std::array<std::array<Rat, 2>, 2>;

std::optional<long> val(const Int& p, const Rat& q) {
  if (q == 0) return std::nullopt;
  long v = 0;
  Int a = abs(q.get_num()), b = q.get_den();
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  while (b % p == 0) {
    b /= p;
    --v;
  }
  return v;
}

Mat2 from_cols(const std::vector<RatVec>& c) {
  if (c.size() != 2 || c[0].size() != 2 || c[1].size() != 2) throw Error("RankMismatch", "lattices must be rank 2");
  return {{{c[0][0], c[1][0]}, {c[0][1], c[1][1]}}};
}

Rat det(const Mat2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

Mat2 mul(const Mat2& a, const Mat2& b) {
  Mat2 c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

Mat2 inverse(const Mat2& m) {
  Rat d = det(m);
  if (d == 0) throw Error("SingularLattice", "lattice matrix is singular");
  return {{{m[1][1] / d, -m[0][1] / d}, {-m[1][0] / d, m[0][0] / d}}};
}

long min_val(const Int& p, const Mat2& m) {
  std::optional<long> best;
  for (const auto& row : m)
    for (const auto& x : row)
      if (auto v = val(p, x); v && (!best || *v < *best)) best = v;
  return *best;
}

Rat power(const Int& p, long e) {
  Rat r = 1;
  for (long k = 0; k < std::labs(e); ++k) r *= p;
  return e >= 0 ? r : Rat(1) / r;
}

}  // namespace

Int tree_distance(const Int& p, const std::vector<RatVec>& a, const std::vector<RatVec>& b) {
  Mat2 x = mul(inverse(from_cols(a)), from_cols(b));
  return Int(*val(p, det(x)) - 2 * min_val(p, x));
}

std::optional<Apartment> common_apartment(const LatticeChain& chain) {
  const Int& p = chain.prime;
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 25) == 0) throw Error("SchemaError", "uniformizer must be a prime");
  const auto& L = chain.lattices;
  if (L.empty()) throw Error("SchemaError", "empty lattice chain");
  for (const auto& l : L) inverse(from_cols(l));

  std::size_t a = 0, b = 0;
  Int far = 0;
  for (std::size_t i = 0; i < L.size(); ++i)
    for (std::size_t j = i + 1; j < L.size(); ++j)
      if (Int d = tree_distance(p, L[i], L[j]); d > far) {
        far = d;
        a = i;
        b = j;
      }
  for (std::size_t k = 0; k < L.size(); ++k)
    if (tree_distance(p, L[a], L[k]) + tree_distance(p, L[k], L[b]) != far) return std::nullopt;

  // Smith form of A^{-1} B over Z_(p): record the row operations in T so that T X is diagonal
  // up to column operations; then A T^{-1} is adapted to both endpoints.
  Mat2 A = from_cols(L[a]);
  Mat2 X = mul(inverse(A), from_cols(L[b]));
  Mat2 T = {{{1, 0}, {0, 1}}};
  long best = min_val(p, X);
  int bi = -1, bj = -1;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (bi < 0 && val(p, X[i][j]) == best) bi = i, bj = j;
  if (bi == 1) {
    std::swap(X[0], X[1]);
    std::swap(T[0], T[1]);
  }
  if (bj == 1)
    for (auto& row : X) std::swap(row[0], row[1]);
  Rat c = X[1][0] / X[0][0];
  for (int j = 0; j < 2; ++j) {
    X[1][j] -= c * X[0][j];
    T[1][j] -= c * T[0][j];
  }
  Mat2 E = mul(A, inverse(T));
  RatVec e{E[0][0], E[1][0]}, f{E[0][1], E[1][1]};

  Apartment out;
  Mat2 Binv = inverse(E);
  for (const auto& l : L) {
    Mat2 N = mul(Binv, from_cols(l));
    long ea = std::min(val(p, N[0][0]).value_or(LONG_MAX), val(p, N[0][1]).value_or(LONG_MAX));
    long eb = std::min(val(p, N[1][0]).value_or(LONG_MAX), val(p, N[1][1]).value_or(LONG_MAX));
    Mat2 U = N;
    for (auto& x : U[0]) x *= power(p, -ea);
    for (auto& x : U[1]) x *= power(p, -eb);
    if (min_val(p, U) < 0 || val(p, det(U)) != 0) return std::nullopt;
    out.exponents.push_back({Int(ea), Int(eb)});
  }
  // normalize so the first lattice is <e, f>, then order the basis
  auto [a0, b0] = out.exponents[0];
  for (auto& x : e) x *= power(p, a0.get_si());
  for (auto& x : f) x *= power(p, b0.get_si());
  for (auto& [x, y] : out.exponents) {
    x -= a0;
    y -= b0;
  }
  if (e < f) {
    std::swap(e, f);
    for (auto& [x, y] : out.exponents) std::swap(x, y);
  }
  out.e = e;
  out.f = f;
  return out;
}

}  // namespace conekit
