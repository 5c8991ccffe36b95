#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conekit/complex.hpp"

namespace conekit {

// Multiset of characters in Z^n, kept sorted.
struct MultiCharacter {
  std::size_t ambient = 0;
  std::vector<IntVec> chars;
  MultiCharacter() = default;
  MultiCharacter(std::size_t n, std::vector<IntVec> cs);
  // Rank-one characters given as plain integers.
  static MultiCharacter integers(const std::vector<long>& xs);
  std::size_t rank() const { return chars.size(); }
  bool operator==(const MultiCharacter& o) const { return ambient == o.ambient && chars == o.chars; }
  std::string str() const;
};

// Image of u under R^ -> R^/(tau^perp ∩ R^) for a face tau of the realization `sigma`.
// For a ray the quotient is identified with Z by pairing with the primitive generator.
struct Restriction {
  MultiCharacter chars;
  IntMatrix proj;
};
Restriction restrict_multichar(const MultiCharacter& u, const Cone& sigma, const Cone& tau);

// Subspace of Q^r stored by its reduced row echelon basis.
class Subspace {
 public:
  Subspace() = default;
  Subspace(std::size_t r, const std::vector<RatVec>& spanning);
  static Subspace zero(std::size_t r) { return Subspace(r, {}); }
  static Subspace full(std::size_t r);
  static Subspace coordinate(std::size_t r, const std::vector<std::size_t>& idx);

  std::size_t ambient() const { return r_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<RatVec>& basis() const { return basis_; }
  bool contains(const RatVec& v) const;
  bool contains(const Subspace& o) const;
  Subspace operator+(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  bool operator==(const Subspace& o) const { return r_ == o.r_ && basis_ == o.basis_; }
  std::string str() const;

 private:
  std::size_t r_ = 0;
  std::vector<RatVec> basis_;
};

// W_1 ⊂ ... ⊂ W_k = Q^r with weights w_1 > ... > w_k. W(t) is the largest step with
// weight >= t (zero above w_1).
struct WeightedFlag {
  std::size_t r = 0;
  std::vector<Int> weights;
  std::vector<Subspace> steps;
  // Throws SchemaError unless dims strictly increase to r and weights strictly decrease.
  void validate() const;
  Subspace at(const Int& t) const;
  std::vector<std::size_t> dims() const;
  // Multiset of weights, each with multiplicity = jump in dimension.
  std::vector<Int> multiset() const;
};
WeightedFlag klyachko_filtration(const MultiCharacter& u);
// Flag of a ray in the split model: W(t) spanned by e_k with u_k >= t.
WeightedFlag split_flag(const std::vector<Int>& u);

// A fan in N_R = Q^n: rays (primitive) and cones as index sets into rays.
struct Fan {
  std::size_t n = 0;
  std::vector<IntVec> rays;
  std::vector<std::vector<std::size_t>> cones;
  Cone cone(std::size_t i) const;
};

struct PayneReport {
  bool holds = false;
  std::optional<std::size_t> cone;     // failing cone
  std::vector<Int> thresholds;         // one per ray of that cone
  std::size_t lhs = 0, rhs = 0;        // intersection dimension vs count
  std::string detail;
};
// flags parallel to fan.rays, psi parallel to fan.cones. Throws IncompatibleChern if some
// psi(sigma) does not restrict to the multiset of a ray's flag.
PayneReport payne_compatibility(const Fan& fan, const std::vector<WeightedFlag>& flags,
                                const std::vector<MultiCharacter>& psi);

// #{(i, j) : lambda_j - lambda_i positive in sigma}
std::size_t aut_dimension(const PoGroup& sigma, const MultiCharacter& lambda);

struct InfMatrix {
  std::vector<std::vector<InfResult>> entries;  // entry(i, j) = inf(lambda_j - lambda_i)
  bool representable = true;
  std::string warning;
  std::string str() const;
};
InfMatrix inf_matrix(const PoGroup& sigma, const MultiCharacter& lambda);
// Image in R^ of a Max entry (the base map applied to the infimum).
IntVec inf_image(const PoGroup& sigma, const InfResult& r);

// Throws InfUndefined if some entry has no maximum.
PoGroup weyl_hull(const PoGroup& sigma, const MultiCharacter& lambda);

// Subspace-valued family over a monoid: E_d = sum of V_k over generators (g_k, V_k) with
// g_k <= d.
struct Family {
  FineMonoid order;
  std::size_t r = 0;
  std::vector<std::pair<IntVec, Subspace>> gens;
  Subspace value(const IntVec& d) const;
};
// Family of the split bundle sum O(u_i): generators (-u_i, e_i).
Family split_family(const FineMonoid& order, const MultiCharacter& u);
Family pullback_filtration(const MonoidMap& h, const Family& e);

// Rank-2 lattices over Q with the p-adic valuation; each lattice is the Z_(p)-span of the
// columns of a nonsingular 2x2 rational matrix.
struct LatticeChain {
  Int prime;
  std::vector<std::vector<RatVec>> lattices;  // lattices[k] = {column0, column1}
};
struct Apartment {
  RatVec e, f;
  std::vector<std::pair<Int, Int>> exponents;  // lattice k = <p^a e, p^b f> up to homothety
};
// Distance in the Bruhat-Tits tree between homothety classes.
Int tree_distance(const Int& p, const std::vector<RatVec>& a, const std::vector<RatVec>& b);
std::optional<Apartment> common_apartment(const LatticeChain& chain);

}  // namespace conekit
