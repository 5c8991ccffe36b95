#pragma once

#include <optional>
#include <vector>

#include "conekit/arith.hpp"

namespace conekit {

// Row Hermite form: U * M = H with U unimodular. The first `rank` rows of H are
// nonzero, pivots positive and entries above a pivot reduced into [0, pivot).
struct HermiteForm {
  IntMatrix H;
  IntMatrix U;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};
HermiteForm hermite_normal_form(const IntMatrix& M);

// U * M * V = D, U and V unimodular, D diagonal with d_i | d_{i+1}, d_i >= 0.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
};
SmithForm smith_normal_form(const IntMatrix& M);
std::vector<Int> invariant_factors(const IntMatrix& M);  // nonzero diagonal of D

struct DiophantineSolution {
  IntVec particular;
  std::vector<IntVec> kernel_basis;
};
// All integer x with A x = b, or nullopt.
std::optional<DiophantineSolution> solve_diophantine(const IntMatrix& A, const IntVec& b);

// Hermite-reduced basis of {x in Z^n : A x = 0}.
std::vector<IntVec> integer_kernel(const IntMatrix& A);

std::size_t rank(const IntMatrix& M);
Int determinant(const IntMatrix& M);
// Exact inverse of a unimodular matrix.
IntMatrix unimodular_inverse(const IntMatrix& M);

// Subgroup of Z^n stored by its Hermite basis (rows).
class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}
  static Lattice span(const std::vector<IntVec>& gens, std::size_t ambient);
  static Lattice full(std::size_t ambient);

  std::size_t ambient() const { return ambient_; }
  std::size_t rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }
  std::vector<IntVec> basis_vectors() const { return basis_.row_list(); }

  bool contains(const IntVec& v) const;
  // Coefficients c with v = sum c_i basis_i.
  std::optional<IntVec> coordinates(const IntVec& v) const;
  IntVec from_coordinates(const IntVec& c) const;
  // Reduces v modulo the lattice into a canonical representative (symmetric residues at pivots).
  IntVec reduce(const IntVec& v) const;
  bool is_saturated() const;
  bool operator==(const Lattice& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }
  bool operator!=(const Lattice& o) const { return !(*this == o); }
  bool contains(const Lattice& o) const;

 private:
  std::size_t ambient_ = 0;
  IntMatrix basis_;
  std::vector<std::size_t> pivots_;
};

Lattice saturate_subgroup(const std::vector<IntVec>& gens, std::size_t rank);
// {y : y . s = 0 for all s in L}
Lattice annihilator(const Lattice& L);
Lattice intersect(const Lattice& a, const Lattice& b);

// Linear map Z^n -> Z^m stored as an m x n matrix acting on columns.
struct LatticeMap {
  IntMatrix M;
  std::size_t source_rank() const { return M.cols(); }
  std::size_t target_rank() const { return M.rows(); }
  IntVec operator()(const IntVec& v) const { return M * v; }
};

// Surjection Z^n -> Z^{n-k} with kernel exactly the saturated sublattice S, plus a section.
struct QuotientMap {
  IntMatrix proj;     // (n-k) x n
  IntMatrix section;  // n x (n-k), proj * section = identity
};
QuotientMap quotient_by(const Lattice& S);

// Rational linear algebra on row lists.
struct RowEchelon {
  std::vector<RatVec> rows;  // reduced, nonzero
  std::vector<std::size_t> pivots;
};
RowEchelon rref(std::vector<RatVec> rows, std::size_t cols);
std::size_t rank(const std::vector<RatVec>& rows, std::size_t cols);
std::size_t rank(const std::vector<IntVec>& rows, std::size_t cols);
// Basis of {x : r . x = 0 for all rows r}.
std::vector<RatVec> rational_kernel(const std::vector<RatVec>& rows, std::size_t cols);
// Some x with A x = b (A given by rows), or nullopt.
std::optional<RatVec> rational_solve(const std::vector<RatVec>& A, const RatVec& b, std::size_t cols);
bool in_rational_span(const std::vector<IntVec>& rows, const IntVec& v);

}  // namespace conekit
