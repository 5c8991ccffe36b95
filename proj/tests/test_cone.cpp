#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "conekit/cone.hpp"
#include "conekit/errors.hpp"

using namespace conekit;

namespace {
IntVec iv(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}
using Vs = std::vector<IntVec>;

// Brute-force Hilbert basis of a pointed 2d/3d cone: irreducible lattice points in a box.
Vs brute_hilbert(const Cone& c, long bound) {
  const std::size_t n = c.ambient();
  Vs pts;
  IntVec x(n, Int(-bound));
  while (true) {
    if (!is_zero(x) && c.contains(x)) pts.push_back(x);
    std::size_t k = 0;
    while (k < n) {
      x[k] += 1;
      if (x[k] <= bound) break;
      x[k] = -bound;
      ++k;
    }
    if (k == n) break;
  }
  Vs hb;
  for (const auto& p : pts) {
    bool red = false;
    for (const auto& q : pts)
      if (q != p && c.contains(sub(p, q)) && !is_zero(sub(p, q))) {
        red = true;
        break;
      }
    if (!red) hb.push_back(p);
  }
  std::sort(hb.begin(), hb.end());
  return hb;
}
}  // namespace

TEST_CASE("dual of a 2d cone") {
  Cone c = Cone::from_generators(2, {iv({1, 0}), iv({1, 2})});
  CHECK(c.rays() == Vs{iv({1, 0}), iv({1, 2})});
  CHECK(c.dual().rays() == Vs{iv({0, 1}), iv({2, -1})});
  CHECK(c.dual().dual() == c);
}

TEST_CASE("half plane and line") {
  Cone h = Cone::from_inequalities(2, {iv({0, 1})});
  CHECK(h.lineality_dim() == 1);
  CHECK(h.rays() == Vs{iv({0, 1})});
  Cone line = Cone::from_generators(2, {iv({1, 1}), iv({-1, -1})});
  CHECK(line.dim() == 1);
  CHECK(line.rays().empty());
  CHECK(Cone::zero(3).is_zero());
  CHECK(Cone::full(3).dual().is_zero());
}

TEST_CASE("face counts") {
  CHECK(face_lattice(Cone::orthant(2)).size() == 4);
  Cone sq = Cone::from_generators(3, {iv({1, 0, 1}), iv({0, 1, 1}), iv({-1, 0, 1}), iv({0, -1, 1})});
  CHECK(face_lattice(sq).size() == 10);
  CHECK(face_lattice(Cone::from_generators(2, {iv({1, 1})})).size() == 2);
}

TEST_CASE("hilbert basis of the 1-2 cone") {
  Cone c = Cone::from_generators(2, {iv({1, 0}), iv({1, 2})});
  CHECK(hilbert_basis(c) == Vs{iv({1, 0}), iv({1, 1}), iv({1, 2})});
  CHECK_THROWS_AS(hilbert_basis(Cone::full(2)), Error);
}

TEST_CASE("hilbert basis in a sublattice") {
  Cone c = Cone::orthant(2);
  Lattice l = Lattice::span({iv({2, 0}), iv({1, 1}), iv({0, 2})}, 2);
  CHECK(hilbert_basis(c, l) == Vs{iv({0, 2}), iv({1, 1}), iv({2, 0})});
}

TEST_CASE("saturated generators with lineality") {
  Cone h = Cone::from_inequalities(2, {iv({0, 1})});
  auto g = saturated_generators(h, Lattice::full(2));
  CHECK(g.size() == 3);
}

TEST_CASE("image and preimage") {
  IntMatrix f = IntMatrix::from_rows({iv({1, 1})}, 2);
  CHECK(image_cone(f, Cone::orthant(2)) == Cone::orthant(1));
  Cone pre = preimage_cone(f, Cone::orthant(1));
  CHECK(pre == Cone::from_inequalities(2, {iv({1, 1})}));
}

TEST_CASE("minimal points") {
  // {x in Z^2 : x >= (1/2, 0)} minimal w.r.t. the orthant
  auto m = minimal_points(2, {iv({2, 0}), iv({0, 1})}, iv({1, 0}), {iv({1, 0}), iv({0, 1})});
  CHECK(m == Vs{iv({1, 0})});
  CHECK(minimal_points(1, {iv({1}), iv({-1})}, iv({2, -1}), {iv({1})}).empty());
}

TEST_CASE("property: hilbert basis agrees with brute force") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-3, 3);
  int done = 0;
  while (done < 40) {
    std::size_t n = 2 + rng() % 2;
    Vs gens;
    for (std::size_t i = 0; i < n + rng() % 2; ++i) {
      IntVec g(n);
      for (auto& x : g) x = d(rng);
      g[n - 1] = abs(g[n - 1]) + 1;  // keeps the cone pointed
      gens.push_back(g);
    }
    Cone c = Cone::from_generators(n, gens);
    auto hb = hilbert_basis(c);
    long bound = 0;
    for (const auto& h : hb)
      for (const auto& x : h) bound = std::max(bound, Int(abs(x)).get_si());
    if (bound > 6) continue;
    CHECK(hb == brute_hilbert(c, bound + 1));
    ++done;
  }
}

TEST_CASE("property: double description round trip") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 2 + rng() % 3;
    Vs gens;
    for (std::size_t i = 0; i < 1 + rng() % 5; ++i) {
      IntVec g(n);
      for (auto& x : g) x = d(rng);
      gens.push_back(g);
    }
    Cone c = Cone::from_generators(n, gens);
    for (const auto& g : gens) CHECK(c.contains(g));
    Cone again = Cone::from_inequalities(n, c.facets(), c.equations());
    CHECK(again == c);
    CHECK(c.dual().dual() == c);
    for (const auto& f : face_lattice(c)) CHECK(f.is_face_of(c));
  }
}
