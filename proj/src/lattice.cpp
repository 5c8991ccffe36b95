#include "conekit/lattice.hpp"

#include <cassert>

#include "conekit/errors.hpp"

namespace conekit {

namespace {

Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

}  // namespace

HermiteForm hermite_normal_form(const IntMatrix& M) {
  const std::size_t m = M.rows(), n = M.cols();
  HermiteForm out{M, IntMatrix::identity(m), 0, {}};
  IntMatrix& H = out.H;
  IntMatrix& U = out.U;
  std::size_t r = 0;
  for (std::size_t j = 0; j < n && r < m; ++j) {
    bool have_pivot = false;
    while (true) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i)
        if (H(i, j) != 0 && (best == m || abs_int(H(i, j)) < abs_int(H(best, j)))) best = i;
      if (best == m) break;
      have_pivot = true;
      H.swap_rows(r, best);
      U.swap_rows(r, best);
      bool clear = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (H(i, j) == 0) continue;
        Int q = floor_div(H(i, j), H(r, j));
        H.add_row(i, r, -q);
        U.add_row(i, r, -q);
        if (H(i, j) != 0) clear = false;
      }
      if (clear) break;
    }
    if (!have_pivot) continue;
    if (H(r, j) < 0) {
      H.negate_row(r);
      U.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(H(i, j), H(r, j));
      H.add_row(i, r, -q);
      U.add_row(i, r, -q);
    }
    out.pivots.push_back(j);
    ++r;
  }
  out.rank = r;
  return out;
}

SmithForm smith_normal_form(const IntMatrix& M) {
  const std::size_t m = M.rows(), n = M.cols();
  SmithForm s{IntMatrix::identity(m), M, IntMatrix::identity(n)};
  IntMatrix& D = s.D;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // smallest nonzero entry of the remaining block becomes the pivot
    std::size_t pi = m, pj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (D(i, j) != 0 && (pi == m || abs_int(D(i, j)) < abs_int(D(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == m) break;
    D.swap_rows(t, pi);
    s.U.swap_rows(t, pi);
    D.swap_cols(t, pj);
    s.V.swap_cols(t, pj);
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        Int q = floor_div(D(i, t), D(t, t));
        D.add_row(i, t, -q);
        s.U.add_row(i, t, -q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        Int q = floor_div(D(t, j), D(t, t));
        D.add_col(j, t, -q);
        s.V.add_col(j, t, -q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) {
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (D(i, t) != 0 && abs_int(D(i, t)) < abs_int(D(bi, bj))) {
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(t, j) != 0 && abs_int(D(t, j)) < abs_int(D(bi, bj))) {
            bi = t;
            bj = j;
          }
        D.swap_rows(t, bi);
        s.U.swap_rows(t, bi);
        D.swap_cols(t, bj);
        s.V.swap_cols(t, bj);
        continue;
      }
      // divisibility of the remaining block
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      D.add_row(t, bad, 1);
      s.U.add_row(t, bad, 1);
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      s.U.negate_row(t);
    }
  }
  return s;
}

std::vector<Int> invariant_factors(const IntMatrix& M) {
  SmithForm s = smith_normal_form(M);
  std::vector<Int> out;
  for (std::size_t i = 0; i < std::min(M.rows(), M.cols()); ++i)
    if (s.D(i, i) != 0) out.push_back(s.D(i, i));
  return out;
}

std::vector<IntVec> integer_kernel(const IntMatrix& A) {
  // U * A^T = H; rows of U past the rank annihilate A.
  HermiteForm hf = hermite_normal_form(A.transpose());
  std::vector<IntVec> ker;
  for (std::size_t i = hf.rank; i < hf.U.rows(); ++i) ker.push_back(hf.U.row(i));
  return Lattice::span(ker, A.cols()).basis_vectors();
}

std::optional<DiophantineSolution> solve_diophantine(const IntMatrix& A, const IntVec& b) {
  assert(b.size() == A.rows());
  SmithForm s = smith_normal_form(A);
  IntVec c = s.U * b;
  const std::size_t m = A.rows(), n = A.cols();
  IntVec y(n);
  for (std::size_t i = 0; i < m; ++i) {
    Int d = i < n ? s.D(i, i) : Int(0);
    if (d == 0) {
      if (c[i] != 0) return std::nullopt;
      continue;
    }
    if (c[i] % d != 0) return std::nullopt;
    y[i] = c[i] / d;
  }
  DiophantineSolution sol;
  sol.kernel_basis = integer_kernel(A);
  Lattice K = Lattice::span(sol.kernel_basis, n);
  sol.particular = K.reduce(s.V * y);
  return sol;
}

std::size_t rank(const IntMatrix& M) { return hermite_normal_form(M).rank; }

Int determinant(const IntMatrix& M) {
  assert(M.rows() == M.cols());
  const std::size_t n = M.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination
  IntMatrix a = M;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntMatrix unimodular_inverse(const IntMatrix& M) {
  const std::size_t n = M.rows();
  std::vector<RatVec> aug(n, RatVec(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = M(i, j);
    aug[i][n + i] = 1;
  }
  RowEchelon e = rref(aug, 2 * n);
  if (e.rows.size() != n || e.pivots.back() != n - 1) throw Error("SingularMatrix", "matrix not invertible");
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rat& q = e.rows[i][n + j];
      if (q.get_den() != 1) throw Error("SingularMatrix", "matrix not unimodular");
      inv(i, j) = q.get_num();
    }
  return inv;
}

Lattice Lattice::span(const std::vector<IntVec>& gens, std::size_t ambient) {
  HermiteForm hf = hermite_normal_form(IntMatrix::from_rows(gens, ambient));
  Lattice L(ambient);
  L.basis_ = hf.H.select_rows(0, hf.rank);
  L.pivots_ = hf.pivots;
  return L;
}

Lattice Lattice::full(std::size_t ambient) {
  std::vector<IntVec> g;
  for (std::size_t i = 0; i < ambient; ++i) g.push_back(unit(ambient, i));
  return span(g, ambient);
}

std::optional<IntVec> Lattice::coordinates(const IntVec& v) const {
  assert(v.size() == ambient_);
  IntVec r = v;
  IntVec c(rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    const Int& p = basis_(i, pivots_[i]);
    if (r[pivots_[i]] % p != 0) return std::nullopt;
    c[i] = r[pivots_[i]] / p;
    for (std::size_t j = 0; j < ambient_; ++j) r[j] -= c[i] * basis_(i, j);
  }
  if (!is_zero(r)) return std::nullopt;
  return c;
}

bool Lattice::contains(const IntVec& v) const { return coordinates(v).has_value(); }

bool Lattice::contains(const Lattice& o) const {
  for (std::size_t i = 0; i < o.rank(); ++i)
    if (!contains(o.basis_.row(i))) return false;
  return true;
}

IntVec Lattice::from_coordinates(const IntVec& c) const {
  assert(c.size() == rank());
  IntVec v(ambient_);
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < ambient_; ++j) v[j] += c[i] * basis_(i, j);
  return v;
}

IntVec Lattice::reduce(const IntVec& v) const {
  IntVec r = v;
  for (std::size_t i = 0; i < rank(); ++i) {
    const Int& p = basis_(i, pivots_[i]);
    Int q = ceil_div(2 * r[pivots_[i]] - p, 2 * p);
    for (std::size_t j = 0; j < ambient_; ++j) r[j] -= q * basis_(i, j);
  }
  return r;
}

bool Lattice::is_saturated() const { return saturate_subgroup(basis_vectors(), ambient_) == *this; }

Lattice saturate_subgroup(const std::vector<IntVec>& gens, std::size_t rank) {
  std::vector<IntVec> perp = integer_kernel(IntMatrix::from_rows(gens, rank));
  return Lattice::span(integer_kernel(IntMatrix::from_rows(perp, rank)), rank);
}

Lattice annihilator(const Lattice& L) {
  return Lattice::span(integer_kernel(L.basis()), L.ambient());
}

Lattice intersect(const Lattice& a, const Lattice& b) {
  const std::size_t n = a.ambient();
  std::vector<IntVec> cols;
  for (const auto& v : a.basis_vectors()) cols.push_back(v);
  for (const auto& v : b.basis_vectors()) cols.push_back(neg(v));
  if (cols.empty()) return Lattice(n);
  IntMatrix K = IntMatrix::from_cols(cols, n);
  std::vector<IntVec> out;
  for (const auto& k : integer_kernel(K)) {
    IntVec c(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(a.rank()));
    out.push_back(a.from_coordinates(c));
  }
  return Lattice::span(out, n);
}

QuotientMap quotient_by(const Lattice& S) {
  const std::size_t n = S.ambient();
  Lattice perp = annihilator(S);
  QuotientMap q;
  q.proj = perp.basis();
  const std::size_t k = q.proj.rows();
  q.section = IntMatrix(n, k);
  for (std::size_t j = 0; j < k; ++j) {
    auto sol = solve_diophantine(q.proj, unit(k, j));
    if (!sol) throw Error("NotSaturated", "quotient by a non-saturated sublattice");
    for (std::size_t i = 0; i < n; ++i) q.section(i, j) = sol->particular[i];
  }
  return q;
}

RowEchelon rref(std::vector<RatVec> rows, std::size_t cols) {
  RowEchelon e;
  std::size_t r = 0;
  for (std::size_t j = 0; j < cols && r < rows.size(); ++j) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][j] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    Rat inv = 1 / rows[r][j];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][j] == 0) continue;
      Rat f = rows[i][j];
      for (std::size_t c = 0; c < cols; ++c) rows[i][c] -= f * rows[r][c];
    }
    e.pivots.push_back(j);
    ++r;
  }
  rows.resize(r);
  e.rows = std::move(rows);
  return e;
}

std::size_t rank(const std::vector<RatVec>& rows, std::size_t cols) { return rref(rows, cols).rows.size(); }

std::size_t rank(const std::vector<IntVec>& rows, std::size_t cols) {
  std::vector<RatVec> r;
  r.reserve(rows.size());
  for (const auto& v : rows) r.push_back(to_rat(v));
  return rank(r, cols);
}

std::vector<RatVec> rational_kernel(const std::vector<RatVec>& rows, std::size_t cols) {
  RowEchelon e = rref(rows, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<RatVec> ker;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVec v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
    ker.push_back(v);
  }
  return ker;
}

std::optional<RatVec> rational_solve(const std::vector<RatVec>& A, const RatVec& b, std::size_t cols) {
  std::vector<RatVec> aug = A;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  RowEchelon e = rref(aug, cols + 1);
  RatVec x(cols);
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    if (e.pivots[i] == cols) return std::nullopt;
    x[e.pivots[i]] = e.rows[i][cols];
  }
  return x;
}

bool in_rational_span(const std::vector<IntVec>& rows, const IntVec& v) {
  const std::size_t n = v.size();
  std::size_t r0 = rank(rows, n);
  std::vector<IntVec> ext = rows;
  ext.push_back(v);
  return rank(ext, n) == r0;
}

}  // namespace conekit
