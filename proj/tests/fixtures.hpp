#pragma once

#include "conekit/complex.hpp"
#include "conekit/morphism.hpp"

namespace fx {

using namespace conekit;

inline IntVec iv(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline IntMatrix mat(std::initializer_list<std::initializer_list<long>> rows, std::size_t cols) {
  std::vector<IntVec> r;
  for (auto row : rows) r.push_back(iv(row));
  return IntMatrix::from_rows(r, cols);
}

inline FineMonoid free(std::size_t n) { return FineMonoid::free(n); }

// (a, b) -> a + b
inline MonoidMap sum_map() { return MonoidMap(free(2), free(1), mat({{1, 1}}, 2)); }

// N^2 -> <x, y, z - x, z - y> in Z^3
inline FineMonoid square_cone_monoid() {
  return FineMonoid(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({-1, 0, 1}), iv({0, -1, 1})});
}
inline MonoidMap exact_not_integral() {
  return MonoidMap(free(2), square_cone_monoid(), mat({{1, 0}, {0, 1}, {0, 0}}, 2));
}

// <u, v, w | u + w = 2v> as (2,0), (1,1), (0,2), into N^2
inline FineMonoid even_slope_monoid() { return FineMonoid(2, {iv({2, 0}), iv({1, 1}), iv({0, 2})}); }
inline MonoidMap even_slope() { return MonoidMap(even_slope_monoid(), free(2), IntMatrix::identity(2)); }

inline MonoidMap mult_by(long n) { return MonoidMap(free(1), free(1), mat({{n}}, 1)); }
inline MonoidMap diagonal() { return MonoidMap(free(1), free(2), mat({{1}, {1}}, 1)); }
inline MonoidMap identity(std::size_t n) { return MonoidMap::identity(free(n)); }
inline MonoidMap projection() { return MonoidMap(free(2), free(1), mat({{1, 0}}, 2)); }

// Cell with the given realization (functionals), i.e. positives = its dual.
inline PoGroup cell_of(const Cone& realization, FineMonoid base, IntMatrix base_map) {
  return PoGroup(realization.ambient(), realization.dual(), std::move(base), std::move(base_map));
}
inline PoGroup cell_of(std::size_t n, const std::vector<IntVec>& rays) {
  return PoGroup(n, Cone::from_generators(n, rays).dual());
}

inline PoGroup quadrant() { return PoGroup(2, Cone::orthant(2)); }
// quadrant realization cut along the diagonal
inline std::vector<PoGroup> diagonal_split() {
  return {cell_of(2, {iv({1, 0}), iv({1, 1})}), cell_of(2, {iv({1, 1}), iv({0, 1})})};
}

// Edge {0 <= alpha <= k delta0} in coordinates (alpha, delta0) over the base N generated by
// delta = k delta0.
inline PoGroup edge(long k) {
  return PoGroup(2, Cone::from_generators(2, {iv({1, 0}), iv({-1, k})}), free(1), mat({{0}, {k}}, 1));
}
// Pieces [m_i, m_{i+1}] of the edge for breakpoints 0 = m_0 < ... < m_r = k.
inline std::vector<PoGroup> edge_pieces(long k, const std::vector<long>& cuts) {
  std::vector<long> m{0};
  m.insert(m.end(), cuts.begin(), cuts.end());
  m.push_back(k);
  std::vector<PoGroup> out;
  for (std::size_t i = 0; i + 1 < m.size(); ++i)
    out.push_back(PoGroup(2, Cone::from_generators(2, {iv({1, -m[i]}), iv({-1, m[i + 1]})}), free(1),
                          mat({{0}, {k}}, 1)));
  return out;
}

// Square cone over the interval: base N^2 with e1 -> z - y, e2 -> y.
inline IntMatrix square_base_map() { return mat({{0, 0}, {-1, 1}, {1, 0}}, 2); }
inline PoGroup square_over_interval() {
  return PoGroup(3, square_cone_monoid().cone(), free(2), square_base_map());
}
// Realization cut by both diagonals into four triangles around (1,1,2).
inline std::vector<PoGroup> square_double_diagonal() {
  std::vector<IntVec> corner{iv({0, 0, 1}), iv({1, 0, 1}), iv({1, 1, 1}), iv({0, 1, 1})};
  std::vector<PoGroup> out;
  for (std::size_t i = 0; i < 4; ++i)
    out.push_back(cell_of(Cone::from_generators(3, {iv({1, 1, 2}), corner[i], corner[(i + 1) % 4]}), free(2),
                          square_base_map()));
  return out;
}

// Single cell generated by alpha, beta with alpha + beta = delta, its two rays glued.
inline Complex loop() {
  Complex c;
  c.cells.push_back(PoGroup(2, Cone::orthant(2), free(1), mat({{1}, {1}}, 1)));
  c.gluings.push_back({0, mat({{0, 1}}, 2), 0, mat({{1, 0}}, 2)});
  return c;
}

}  // namespace fx
