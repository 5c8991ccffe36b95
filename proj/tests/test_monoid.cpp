#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "conekit/errors.hpp"
#include "fixtures.hpp"

using namespace conekit;
using fx::iv;
using Vs = std::vector<IntVec>;

namespace {
// All N-combinations of gens with coefficients <= bound.
std::set<IntVec> combos(const Vs& gens, std::size_t n, long bound) {
  std::set<IntVec> out{IntVec(n)};
  for (const auto& g : gens) {
    std::set<IntVec> next;
    for (const auto& x : out)
      for (long c = 0; c <= bound; ++c) next.insert(add(x, scale(Int(c), g)));
    out = std::move(next);
  }
  return out;
}
}  // namespace

TEST_CASE("leq in the free monoid and the even-slope monoid") {
  auto n2 = FineMonoid::free(2);
  CHECK(n2.leq(iv({0, 0}), iv({2, 3})));
  CHECK_FALSE(n2.leq(iv({1, 0}), iv({0, 1})));
  auto p = fx::even_slope_monoid();
  CHECK_FALSE(p.leq(iv({2, 0}), iv({2, 1})));
  CHECK(p.leq(iv({2, 0}), iv({3, 1})));
  CHECK(p.is_saturated());
  CHECK(p.is_sharp());
}

TEST_CASE("saturation") {
  FineMonoid ns(1, {iv({2}), iv({3})});
  CHECK_FALSE(ns.is_saturated());
  CHECK_FALSE(ns.contains(iv({1})));
  CHECK(ns.contains(iv({5})));
  CHECK(ns.saturation().minimal_generators() == Vs{iv({1})});
  CHECK(FineMonoid::free(2).saturation().minimal_generators() == Vs{iv({0, 1}), iv({1, 0})});
  FineMonoid m(2, {iv({1, 0}), iv({1, 2})});
  // saturated in its own index-2 group, not in Z^2
  CHECK(m.is_saturated());
  CHECK(m.saturation_in(Lattice::full(2)).minimal_generators() == Vs{iv({1, 0}), iv({1, 1}), iv({1, 2})});
  CHECK(fx::square_cone_monoid().is_saturated());
}

TEST_CASE("localize and sharpen") {
  auto l = localize_sharpen(FineMonoid::free(2), {iv({1, 0})});
  CHECK(l.monoid.ambient() == 1);
  CHECK(l.monoid.minimal_generators() == Vs{iv({1})});
  CHECK(is_zero(l.proj * iv({1, 0})));
  auto id = localize_sharpen(fx::even_slope_monoid(), {});
  CHECK(id.monoid == fx::even_slope_monoid());
  auto u = localize_sharpen(fx::even_slope_monoid(), {iv({2, 0})});
  CHECK(u.monoid.ambient() == 1);
  CHECK(u.monoid.minimal_generators().size() == 1);
  CHECK(abs(u.monoid.minimal_generators()[0][0]) == 1);
}

TEST_CASE("presentation input") {
  // u + w = 2v
  auto p = FineMonoid::from_presentation(3, {iv({1, -2, 1})});
  CHECK(p.rank() == 2);
  CHECK(p.is_saturated());
  CHECK(p.minimal_generators().size() == 3);
  CHECK_THROWS_AS(FineMonoid::from_presentation(2, {iv({2, -2})}), Error);
}

TEST_CASE("monoid with units") {
  FineMonoid m(2, {iv({1, 0}), iv({-1, 0}), iv({0, 2})});
  CHECK_FALSE(m.is_sharp());
  CHECK(m.contains(iv({-5, 4})));
  CHECK_FALSE(m.contains(iv({0, 1})));
  auto c = m.decompose(iv({-5, 4}));
  REQUIRE(c);
  IntVec back(2);
  for (std::size_t i = 0; i < c->size(); ++i) back = add(back, scale((*c)[i], m.generators()[i]));
  CHECK(back == iv({-5, 4}));
}

TEST_CASE("pushouts") {
  auto id = MonoidMap::identity(FineMonoid::free(2));
  auto g = fx::diagonal();
  auto po = pushout(MonoidMap::identity(FineMonoid::free(1)), g, PushoutKind::Integral);
  CHECK(po.torsion.empty());
  CHECK(po.free_part.rank() == 2);
  CHECK(po.free_part.is_saturated());
  auto two = pushout(fx::mult_by(2), fx::mult_by(2), PushoutKind::Integral);
  CHECK(two.torsion == std::vector<Int>{Int(2)});
  CHECK(two.free_part.ambient() == 1);
  CHECK(two.free_part.minimal_generators().size() == 1);
  auto dm = pushout(fx::diagonal(), fx::mult_by(2), PushoutKind::Integral);
  CHECK(dm.free_part.rank() == 2);
  CHECK(dm.torsion.empty());
  (void)id;
}

TEST_CASE("property: membership agrees with bounded enumeration") {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> d(0, 3);
  for (int t = 0; t < 25; ++t) {
    Vs gens;
    for (int i = 0; i < 3; ++i) {
      IntVec g{Int(d(rng)), Int(d(rng) + 1)};
      gens.push_back(g);
    }
    FineMonoid m(2, gens);
    auto reach = combos(m.generators(), 2, 6);
    for (long x = 0; x <= 6; ++x)
      for (long y = 0; y <= 6; ++y) {
        IntVec v = iv({x, y});
        // any decomposition of v uses coefficients <= 6 since every generator has y >= 1
        CHECK(m.contains(v) == (reach.count(v) > 0));
      }
  }
}

TEST_CASE("property: saturation is idempotent and keeps the cone") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> d(-2, 3);
  for (int t = 0; t < 25; ++t) {
    Vs gens;
    for (int i = 0; i < 3; ++i) gens.push_back(IntVec{Int(d(rng)), Int(d(rng) + 3), Int(d(rng))});
    FineMonoid m(3, gens);
    auto s = m.saturation();
    CHECK(s.cone() == m.cone());
    CHECK(s.is_saturated());
    CHECK(s.saturation().minimal_generators() == s.minimal_generators());
    for (const auto& g : m.generators()) CHECK(s.contains(g));
  }
}

TEST_CASE("property: localization is idempotent") {
  auto p = fx::even_slope_monoid();
  auto l = localize_sharpen(p, {iv({1, 1})});
  std::vector<IntVec> img;
  img.push_back(l.proj * iv({1, 1}));
  auto again = localize_sharpen(l.monoid, img);
  CHECK(again.monoid == l.monoid);
}
