#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conekit/morphism.hpp"

namespace conekit {

// Fine partially ordered group (R^, R): R^ = Z^n, R = positives ∩ Z^n. The positives may
// have lineality (R not sharp) and need not span. The base map sends the base monoid's
// ambient lattice into R^ and must carry the base monoid into R.
class PoGroup {
 public:
  PoGroup() = default;
  PoGroup(std::size_t n, Cone positives, FineMonoid base, IntMatrix base_map);
  // Trivial base (the zero monoid in Z^0).
  PoGroup(std::size_t n, Cone positives);
  // Convenience: positives generated by the given vectors.
  static PoGroup generated(std::size_t n, const std::vector<IntVec>& gens, FineMonoid base, IntMatrix base_map);

  std::size_t rank() const { return n_; }
  const Cone& positives() const { return pos_; }
  const FineMonoid& base() const { return base_; }
  const IntMatrix& base_map() const { return base_map_; }
  // Geometric realization: functionals nonnegative on R (the dual cone).
  Cone realization() const { return pos_.dual(); }

  // R as a fine monoid in Z^n.
  FineMonoid monoid() const;
  // R modulo its units, in coordinates of R^ / units.
  FineMonoid sharpened() const;
  // base -> R sharpened.
  MonoidMap base_morphism() const;
  bool leq(const IntVec& a, const IntVec& b) const { return pos_.contains(sub(b, a)); }
  bool operator==(const PoGroup& o) const {
    return n_ == o.n_ && pos_ == o.pos_ && base_ == o.base_ && base_map_ == o.base_map_;
  }
  std::string str() const;

 private:
  std::size_t n_ = 0;
  Cone pos_;
  FineMonoid base_;
  IntMatrix base_map_;
};

// Point x : R -> M with M = N^k ordered lexicographically (k = 1 is the usual N-valued
// point). Row i of `values` is the i-th coordinate of x as a functional on R^.
struct ComplexPoint {
  std::size_t cell = 0;
  IntMatrix values;
  static ComplexPoint rank1(const IntVec& x, std::size_t cell = 0);
};

// Throws NotAPoint if x is not lexicographically nonnegative on R.
PoGroup star(const PoGroup& sigma, const ComplexPoint& x);
// True iff x (lex) is a point of sigma.
bool is_point_of(const PoGroup& sigma, const IntMatrix& x);

struct SubdivisionReport {
  bool holds = false;
  int failed_condition = 0;  // 1, 2, 3 or 0
  std::string detail;
  // separating functional f in R_i ∩ -R_j for each pair (i, j), i < j
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, IntVec>> separators;
  std::size_t spot_checks = 0;  // rank-2 points sampled
};
SubdivisionReport check_subdivision(const PoGroup& sigma, const std::vector<PoGroup>& pieces);

// Face morphism from cell a identified with the same face of cell b: both projections are
// surjections R^_a -> Z^k and R^_b -> Z^k whose kernels are generated by positives; the
// images of the positives must agree.
struct Gluing {
  std::size_t a = 0;
  IntMatrix pa;
  std::size_t b = 0;
  IntMatrix pb;
};

struct Complex {
  std::vector<PoGroup> cells;
  std::vector<Gluing> gluings;
  bool shared_ambient = false;  // every cell lives on the same R^ (pieces of one cone)

  // Throws SchemaError on inconsistent gluings or differing bases.
  void validate() const;
  // Complex of the pieces of a subdivision; pairwise intersections are glued.
  static Complex from_pieces(const std::vector<PoGroup>& pieces);
  // The cell alone, without gluings.
  static Complex single(const PoGroup& cell) { return from_pieces({cell}); }
};

// Localization of a cell at a face tau of its realization: positives dual(tau).
PoGroup face_cell(const PoGroup& cell, const Cone& tau);
// Surjection R^ -> R^/(tau^perp) killing the units of the face cell, in saturated form.
IntMatrix face_projection(const PoGroup& cell, const Cone& tau);

struct CellProfile {
  Verdict integral;
  Verdict exact;
};
std::vector<CellProfile> integrality_profile(const Complex& c, const IntegralityOptions& opt = {});

// Finite poset on 0..n-1; leq[i][j] means i <= j (reflexive, transitive).
struct Poset {
  std::vector<std::string> labels;
  std::vector<std::vector<bool>> leq;
  std::size_t size() const { return labels.size(); }
  static Poset from_relations(std::vector<std::string> labels, const std::vector<std::pair<std::size_t, std::size_t>>& less);
  std::optional<std::size_t> index(const std::string& label) const;
};

struct CofinalReport {
  bool holds = false;
  std::optional<std::size_t> failing;  // element j of J whose comma category is bad
  std::string detail;
};
// I given as a list of indices into J.
CofinalReport is_cofinal(const std::vector<std::size_t>& I, const Poset& J);

struct FaceEntry {
  std::size_t cell;  // a representative cell
  Cone cone;         // face of that cell's realization
  bool integral = false;
  bool exact = false;
};
struct IntersectionComplexes {
  Poset J;
  std::vector<FaceEntry> faces;  // parallel to J
  std::vector<std::size_t> I;    // indices in J
};
// J: faces of cells lying over the closed point of the base (all faces for a trivial base),
// identified along the gluings. I: those that are integral and exact over the base.
IntersectionComplexes intersection_complexes(const Complex& c, const IntegralityOptions& opt = {});

struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1
  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  std::string str() const;
};
// Conewise linear functions modulo globally linear ones and base constants. Globally linear
// means a single element of R^ on every cell; only meaningful when all cells share R^ (as for
// subdivisions), otherwise only base constants are divided out.
AbelianGroup pl_classes(const Complex& c);

struct SymbolicPresentation {
  struct Generator {
    std::string token;
    IntVec degree;  // in Q's ambient lattice; empty for s-tokens
    bool invertible = false;
  };
  std::vector<Generator> generators;
  std::vector<std::string> relations;  // "lhs - rhs"
  std::vector<std::string> eliminated;  // "x_i = monomial" substitutions applied
  std::string str() const;
};
struct PresentationOptions {
  bool sliced = false;  // factor through the toric chart (C' / C'')
};
SymbolicPresentation present_local_algebra(const MonoidMap& h, const PresentationOptions& opt = {});

}  // namespace conekit
