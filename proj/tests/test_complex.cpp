#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conekit/errors.hpp"
#include "fixtures.hpp"

using namespace conekit;
using fx::iv;
using Vs = std::vector<IntVec>;

TEST_CASE("star of the quadrant") {
  PoGroup q = fx::quadrant();
  CHECK(star(q, ComplexPoint::rank1(iv({0, 0}))).positives() == q.positives());
  CHECK(star(q, ComplexPoint::rank1(iv({1, 1}))).positives().is_zero());
  CHECK(star(q, ComplexPoint::rank1(iv({1, 0}))).positives() == Cone::from_generators(2, {iv({0, 1})}));
  CHECK_THROWS_AS(star(q, ComplexPoint::rank1(iv({1, -1}))), Error);
}

TEST_CASE("star of a star is a star at the lexicographic point") {
  PoGroup s(3, fx::square_cone_monoid().cone());
  IntVec x = iv({0, 0, 1});  // a ray of the realization
  PoGroup sx = star(s, ComplexPoint::rank1(x));
  for (const auto& y : Vs{iv({1, 0, 0}), iv({0, 1, 0}), iv({1, 1, -1}), iv({2, 1, 0})}) {
    if (!is_point_of(sx, IntMatrix::from_rows({y}, 3))) continue;
    PoGroup twice = star(sx, ComplexPoint::rank1(y));
    PoGroup once = star(s, ComplexPoint{0, IntMatrix::from_rows({x, y}, 3)});
    CHECK(twice.positives() == once.positives());
  }
}

TEST_CASE("subdivision checks") {
  PoGroup q = fx::quadrant();
  auto r = check_subdivision(q, fx::diagonal_split());
  CHECK(r.holds);
  CHECK(r.spot_checks > 0);
  REQUIRE(r.separators.size() == 1);
  CHECK(check_subdivision(q, {q}).holds);
  auto dup = check_subdivision(q, {q, q});
  CHECK_FALSE(dup.holds);
  CHECK(dup.failed_condition == 2);
  auto overlap = check_subdivision(q, {fx::cell_of(2, {iv({1, 0}), iv({1, 2})}), fx::cell_of(2, {iv({2, 1}), iv({0, 1})})});
  CHECK_FALSE(overlap.holds);
  CHECK(overlap.failed_condition == 2);
  auto gap = check_subdivision(q, {fx::diagonal_split()[0]});
  CHECK_FALSE(gap.holds);
  CHECK(gap.failed_condition == 3);
  // a coarsening is not a refinement
  CHECK(check_subdivision(fx::diagonal_split()[0], {q}).failed_condition == 1);
  CHECK(check_subdivision(fx::edge(2), fx::edge_pieces(2, {1})).holds);
  CHECK(check_subdivision(fx::square_over_interval(), fx::square_double_diagonal()).holds);
}

TEST_CASE("stars commute with subdivision") {
  PoGroup q = fx::quadrant();
  auto pieces = fx::diagonal_split();
  for (const auto& x : Vs{iv({0, 0}), iv({1, 0}), iv({1, 1}), iv({2, 1}), iv({0, 3})}) {
    std::vector<PoGroup> local;
    for (const auto& p : pieces)
      if (p.realization().contains(x)) local.push_back(star(p, ComplexPoint::rank1(x)));
    CHECK(check_subdivision(star(q, ComplexPoint::rank1(x)), local).holds);
  }
}

TEST_CASE("integrality profile") {
  auto sq = integrality_profile(Complex::from_pieces(fx::square_double_diagonal()));
  REQUIRE(sq.size() == 4);
  int bad = 0;
  for (const auto& p : sq) bad += !p.integral.holds;
  CHECK(bad >= 1);

  PoGroup base_cell(1, Cone::orthant(1), FineMonoid::free(1), fx::mat({{1}}, 1));
  auto t = integrality_profile(Complex::single(base_cell));
  CHECK(t[0].integral.holds);
  CHECK(t[0].exact.holds);

  for (const auto& p : integrality_profile(Complex::from_pieces(fx::edge_pieces(2, {1})))) {
    CHECK(p.integral.holds);
    CHECK(p.exact.holds);
  }
}

TEST_CASE("intersection complexes and cofinality") {
  auto single = intersection_complexes(Complex::single(fx::quadrant()));
  CHECK(single.J.size() == 4);
  bool top_in_I = false;
  for (auto i : single.I) top_in_I |= single.faces[i].cone.dim() == 2;
  CHECK(top_in_I);

  auto mid = intersection_complexes(Complex::from_pieces(fx::edge_pieces(2, {1})));
  CHECK(mid.J.size() == 5);  // three vertices, two edges; the apex lies over the generic point
  CHECK(mid.I.size() == mid.J.size());
  CHECK(is_cofinal(mid.I, mid.J).holds);

  auto sq = intersection_complexes(Complex::from_pieces(fx::square_double_diagonal()));
  auto prof = integrality_profile(Complex::from_pieces(fx::square_double_diagonal()));
  for (std::size_t c = 0; c < 4; ++c) {
    if (prof[c].integral.holds) continue;
    Cone bad = fx::square_double_diagonal()[c].realization();
    for (auto i : sq.I) CHECK(sq.faces[i].cone != bad);
  }

  Poset J = Poset::from_relations({"a", "b", "c"}, {{0, 1}, {0, 2}});
  auto r = is_cofinal({1, 2}, J);
  CHECK_FALSE(r.holds);
  REQUIRE(r.failing);
  CHECK(J.labels[*r.failing] == "a");
  CHECK(is_cofinal({0, 1, 2}, J).holds);
  CHECK_FALSE(is_cofinal({1}, J).holds);
}

TEST_CASE("conewise linear classes") {
  CHECK(pl_classes(Complex::single(fx::quadrant())).is_trivial());
  CHECK(pl_classes(fx::loop()).is_trivial());
  auto two = pl_classes(Complex::from_pieces(fx::edge_pieces(2, {1})));
  CHECK(two.free_rank == 1);
  CHECK(two.torsion.empty());
  CHECK(two.str() == "Z");
  CHECK(pl_classes(Complex::from_pieces(fx::edge_pieces(4, {1, 3}))).str() == "Z^2");
  CHECK(pl_classes(Complex::from_pieces(fx::diagonal_split())).free_rank == 1);
  // gluing a face to itself by the identity imposes nothing
  Complex trivial = fx::loop();
  trivial.gluings[0].pb = fx::mat({{0, 1}}, 2);
  CHECK(pl_classes(trivial).str() == "Z");
  Complex wrong = fx::loop();
  wrong.gluings[0].pb = fx::mat({{2, 0}}, 2);
  CHECK_THROWS_AS(pl_classes(wrong), Error);
}

TEST_CASE("local algebra presentations") {
  auto edge = present_local_algebra(fx::diagonal());
  REQUIRE(edge.relations.size() == 1);
  CHECK(edge.relations[0] == "x_1 x_2 - u^-1 s");
  auto sl = present_local_algebra(fx::diagonal(), {true});
  REQUIRE(sl.relations.size() == 1);
  CHECK(sl.relations[0] == "x_1 x_2 - s");
  auto two = present_local_algebra(fx::mult_by(2), {true});
  REQUIRE(two.relations.size() == 1);
  CHECK(two.relations[0] == "x^2 - s");
  auto id = present_local_algebra(fx::identity(1), {true});
  CHECK(id.relations.empty());
  CHECK(id.eliminated.size() == 1);
  auto sq = present_local_algebra(fx::exact_not_integral(), {true});
  // one relation per base generator plus the Hilbert basis binomial x + (z-x) = y + (z-y)
  CHECK(sq.relations.size() == 3);
  FineMonoid gaps(1, {iv({2}), iv({3})});  // numerical monoid, not saturated
  CHECK_THROWS_AS(present_local_algebra(MonoidMap(gaps, FineMonoid::free(1), fx::mat({{1}}, 1))), Error);
}
