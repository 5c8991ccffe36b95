#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "conekit/bundle.hpp"
#include "conekit/errors.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace conekit;
using fx::iv;
using Vs = std::vector<IntVec>;
using oracle::parabolic_dimension;
using oracle::ray_flags;

namespace {

RatVec rv(std::initializer_list<long> xs) {
  RatVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST_CASE("restriction of multicharacters") {
  Cone q = Cone::orthant(2);
  MultiCharacter u(2, {iv({1, 2}), iv({0, 0})});
  auto r = restrict_multichar(u, q, Cone::from_generators(2, {iv({1, 0})}));
  CHECK(r.chars == MultiCharacter::integers({0, 1}));
  auto whole = restrict_multichar(u, q, q);
  CHECK(whole.chars.ambient == 2);
  auto apex = restrict_multichar(u, q, Cone::zero(2));
  CHECK(apex.chars.ambient == 0);
  CHECK(apex.chars.rank() == 2);
  CHECK_THROWS_AS(restrict_multichar(u, q, Cone::from_generators(2, {iv({1, 1})})), Error);
}

TEST_CASE("restriction composes along face chains") {
  Cone s = fx::square_cone_monoid().cone().dual();
  MultiCharacter u(3, {iv({1, 2, 0}), iv({0, -1, 3}), iv({2, 2, 2}), iv({0, 0, 0})});
  auto faces = face_lattice(s);
  for (const auto& t : faces)
    for (const auto& t2 : faces) {
      if (!t2.is_face_of(t)) continue;
      auto a = restrict_multichar(u, s, t);
      auto b = restrict_multichar(u, s, t2);
      const std::size_t k = a.proj.rows();
      std::vector<RatVec> A;
      for (const auto& col : a.proj.transpose().row_list()) A.push_back(to_rat(col));
      IntMatrix M(b.proj.rows(), k);
      for (std::size_t i = 0; i < b.proj.rows(); ++i) {
        auto x = k ? rational_solve(A, to_rat(b.proj.row(i)), k) : std::optional<RatVec>(RatVec{});
        REQUIRE(x);
        for (std::size_t j = 0; j < k; ++j) {
          REQUIRE((*x)[j].get_den() == 1);
          M(i, j) = (*x)[j].get_num();
        }
      }
      std::vector<IntVec> via;
      for (const auto& c : a.chars.chars) via.push_back(M * c);
      CHECK(MultiCharacter(b.chars.ambient, via) == b.chars);
    }
}

TEST_CASE("Klyachko filtrations") {
  auto f = klyachko_filtration(MultiCharacter::integers({2, 0, 0, -1}));
  CHECK(f.weights == std::vector<Int>{2, 0, -1});
  CHECK(f.dims() == std::vector<std::size_t>{1, 3, 4});
  CHECK(klyachko_filtration(MultiCharacter::integers({0, 0, 0})).steps.size() == 1);
  auto one = klyachko_filtration(MultiCharacter::integers({5}));
  CHECK(one.dims() == std::vector<std::size_t>{1});
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<long> xs;
    for (int k = 0; k < 1 + trial % 6; ++k) xs.push_back(static_cast<long>(rng() % 7) - 3);
    auto u = MultiCharacter::integers(xs);
    auto fl = klyachko_filtration(u);
    fl.validate();
    std::vector<Int> back = fl.multiset();
    std::vector<Int> orig;
    for (const auto& c : u.chars) orig.push_back(c[0]);
    CHECK(back == orig);
  }
}

TEST_CASE("Payne compatibility") {
  Fan ray{1, {iv({1})}, {{0}}};
  MultiCharacter r(1, {iv({3}), iv({-1})});
  CHECK(payne_compatibility(ray, {split_flag({Int(3), Int(-1)})}, {r}).holds);

  Fan quad{2, {iv({1, 0}), iv({0, 1})}, {{0}, {1}, {0, 1}}};
  MultiCharacter u(2, {iv({-1, 1}), iv({0, 0}), iv({1, 2})});
  std::vector<WeightedFlag> flags;
  for (const auto& v : quad.rays) {
    std::vector<Int> vals;
    for (const auto& c : u.chars) vals.push_back(dot(c, v));
    flags.push_back(split_flag(vals));
  }
  CHECK(payne_compatibility(quad, flags, {u, u, u}).holds);

  // move the top step of the first ray's flag to a generic line inside the next step
  auto bent = flags;
  bent[0].steps[0] = Subspace(3, {rv({0, 1, 1})});
  bent[0].validate();
  auto rep = payne_compatibility(quad, bent, {u, u, u});
  CHECK_FALSE(rep.holds);
  REQUIRE(rep.cone);
  CHECK(*rep.cone == 2);
  CHECK(rep.lhs < rep.rhs);

  MultiCharacter wrong(2, {iv({-1, 1}), iv({0, 0}), iv({1, 3})});
  CHECK_THROWS_AS(payne_compatibility(quad, flags, {u, u, wrong}), Error);
}

TEST_CASE("automorphism dimensions") {
  PoGroup q = fx::quadrant();
  CHECK(aut_dimension(q, MultiCharacter(2, {iv({0, 0}), iv({0, 0}), iv({0, 0})})) == 9);
  CHECK(aut_dimension(PoGroup(1, Cone::orthant(1)), MultiCharacter::integers({0, 1})) == 3);
  MultiCharacter l(2, {iv({0, 0}), iv({1, 1})});
  CHECK(aut_dimension(q, l) == 3);
  CHECK(parabolic_dimension(2, ray_flags(q, l)) == 3);

  std::mt19937 rng(11);
  std::vector<PoGroup> cones{q, PoGroup(3, fx::square_cone_monoid().cone()), PoGroup(3, Cone::orthant(3)),
                             fx::cell_of(2, {iv({1, 0}), iv({1, 3})})};
  for (int trial = 0; trial < 40; ++trial) {
    const PoGroup& s = cones[trial % cones.size()];
    std::vector<IntVec> cs;
    for (int k = 0; k < 2 + trial % 3; ++k) {
      IntVec c(s.rank());
      for (auto& x : c) x = static_cast<long>(rng() % 5) - 2;
      cs.push_back(c);
    }
    MultiCharacter lam(s.rank(), cs);
    CHECK(aut_dimension(s, lam) == parabolic_dimension(lam.rank(), ray_flags(s, lam)));
  }
}

TEST_CASE("infimum matrices") {
  PoGroup exa(3, fx::square_cone_monoid().cone(), FineMonoid::free(2), fx::mat({{1, 0}, {0, 1}, {0, 0}}, 2));
  auto m = inf_matrix(exa, MultiCharacter(3, {iv({0, 0, 0}), iv({0, 0, 1})}));
  CHECK(to_string(m.entries[0][1]) == "NoMax{(0, 1), (1, 0)}");
  CHECK_FALSE(m.representable);
  CHECK_FALSE(m.warning.empty());
  CHECK_THROWS_AS(weyl_hull(exa, MultiCharacter(3, {iv({0, 0, 0}), iv({0, 0, 1})})), Error);

  auto same = inf_matrix(exa, MultiCharacter(3, {iv({1, 0, 2}), iv({1, 0, 2})}));
  for (const auto& row : same.entries)
    for (const auto& e : row) CHECK(to_string(e) == "Max((0, 0))");

  PoGroup edge = fx::edge(1);
  auto e = inf_matrix(edge, MultiCharacter(2, {iv({0, 0}), iv({1, 0})}));
  CHECK(to_string(e.entries[0][1]) == "Max((0))");
  CHECK(to_string(e.entries[1][0]) == "Max((-1))");
  CHECK(e.representable);
}

TEST_CASE("Weyl hulls") {
  PoGroup edge = fx::edge(1);
  MultiCharacter lg(2, {iv({0, 0}), iv({1, 0})});
  PoGroup h = weyl_hull(edge, lg);
  CHECK(h.positives() == edge.positives());

  PoGroup q = fx::quadrant();
  CHECK(weyl_hull(q, MultiCharacter(2, {iv({3, 4})})).positives().is_zero());
  MultiCharacter lx(2, {iv({0, 0}), iv({1, 0})});
  PoGroup hx = weyl_hull(q, lx);
  CHECK(hx.positives() == Cone::from_generators(2, {iv({1, 0})}));
  CHECK(q.positives().contains(hx.positives()));

  std::vector<std::pair<PoGroup, MultiCharacter>> cases{
      {edge, lg},
      {q, lx},
      {fx::edge(2), MultiCharacter(2, {iv({0, 0}), iv({1, 0}), iv({-1, 1})})},
      {PoGroup(3, Cone::orthant(3)), MultiCharacter(3, {iv({0, 0, 0}), iv({1, -1, 0}), iv({0, 1, 1})})},
  };
  for (const auto& [s, l] : cases) {
    PoGroup w = weyl_hull(s, l);
    CHECK(s.positives().contains(w.positives()));
    CHECK(weyl_hull(w, l).positives() == w.positives());
    auto a = inf_matrix(s, l), b = inf_matrix(w, l);
    for (std::size_t i = 0; i < l.rank(); ++i)
      for (std::size_t j = 0; j < l.rank(); ++j)
        if (a.entries[i][j].kind == InfResult::Kind::Max) CHECK(to_string(a.entries[i][j]) == to_string(b.entries[i][j]));
  }
}

TEST_CASE("pullback of families") {
  MultiCharacter u(2, {iv({-1, 1}), iv({0, 0}), iv({1, 2}), iv({2, -1})});
  Family e = split_family(FineMonoid::free(2), u);
  Family same = pullback_filtration(fx::identity(2), e);
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b) CHECK(same.value(iv({a, b})) == e.value(iv({a, b})));

  for (std::size_t k = 0; k < 2; ++k) {
    IntVec v = unit(2, k);
    MonoidMap to_ray(FineMonoid::free(2), FineMonoid::free(1), IntMatrix::from_rows({v}, 2));
    Family r = pullback_filtration(to_ray, e);
    auto res = restrict_multichar(u, Cone::orthant(2), Cone::from_generators(2, {v}));
    auto fl = klyachko_filtration(res.chars);
    std::vector<Int> vals;
    for (const auto& c : u.chars) vals.push_back(dot(c, v));
    auto split = split_flag(vals);
    for (long t = -4; t <= 4; ++t) {
      CHECK(r.value(iv({t})).dim() == fl.at(Int(-t)).dim());
      CHECK(r.value(iv({t})) == split.at(Int(-t)));
    }
  }

  MonoidMap to_zero(FineMonoid::free(2), FineMonoid(0, {}), IntMatrix(0, 2));
  CHECK(pullback_filtration(to_zero, e).value({}) == Subspace::full(4));
}

TEST_CASE("apartments") {
  const Int p = 2;
  auto pe = Rat(2), pinv = Rat(1, 2);
  std::vector<RatVec> L0{rv({1, 0}), rv({0, 1})};
  std::vector<RatVec> L1{rv({1, 0}), {0, pe}};
  std::vector<RatVec> L2{rv({1, 0}), {0, pinv}};
  std::vector<RatVec> L3{{pe, 0}, rv({1, 1})};
  CHECK(tree_distance(p, L0, L1) == 1);
  CHECK(tree_distance(p, L1, L2) == 2);
  CHECK(tree_distance(p, L0, L3) == 1);
  CHECK(tree_distance(p, L1, L3) == 2);

  CHECK_FALSE(common_apartment({p, {L0, L1, L2, L3}}));
  auto a = common_apartment({p, {L0, L1, L2}});
  REQUIRE(a);
  CHECK(a->e == rv({1, 0}));
  CHECK(a->f == rv({0, 1}));
  CHECK(a->exponents[1] == std::pair<Int, Int>{0, 1});
  CHECK(a->exponents[2] == std::pair<Int, Int>{0, -1});
  auto one = common_apartment({p, {L3}});
  REQUIRE(one);
  CHECK(one->exponents[0] == std::pair<Int, Int>{0, 0});

  // every subset of an apartment-compatible chain is compatible
  std::vector<std::vector<RatVec>> path{L0, L1, L2, {rv({1, 0}), {0, Rat(8)}}, {{pe, 0}, {0, pinv}}};
  for (unsigned mask = 1; mask < (1u << path.size()); ++mask) {
    LatticeChain c{p, {}};
    for (std::size_t k = 0; k < path.size(); ++k)
      if (mask & (1u << k)) c.lattices.push_back(path[k]);
    CHECK(common_apartment(c));
  }
  // the hull is a tripod exactly when all three leaves L1, L2, L3 are present
  std::vector<std::vector<RatVec>> all{L0, L1, L2, L3};
  for (unsigned mask = 1; mask < 16; ++mask) {
    LatticeChain c{p, {}};
    for (std::size_t k = 0; k < 4; ++k)
      if (mask & (1u << k)) c.lattices.push_back(all[k]);
    CHECK(common_apartment(c).has_value() == ((mask & 0b1110) != 0b1110));
  }
  CHECK_THROWS_AS(common_apartment({p, {{rv({1, 2}), rv({2, 4})}}}), Error);
}
