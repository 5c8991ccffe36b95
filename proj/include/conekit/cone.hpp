#pragma once

#include <optional>
#include <vector>

#include "conekit/arith.hpp"
#include "conekit/lattice.hpp"

namespace conekit {

// Rational polyhedral cone in R^n, kept in both representations:
//   V: lineality basis + primitive extreme rays (taken orthogonal to the lineality)
//   H: equations (basis of span^perp) + primitive facet normals
// All lists are sorted, so equal cones compare equal member-wise.
class Cone {
 public:
  Cone() = default;
  static Cone from_generators(std::size_t n, const std::vector<IntVec>& gens);
  static Cone from_inequalities(std::size_t n, const std::vector<IntVec>& ineqs,
                                const std::vector<IntVec>& eqs = {});
  static Cone zero(std::size_t n);
  static Cone full(std::size_t n);
  static Cone orthant(std::size_t n);

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return n_ - eqs_.size(); }
  std::size_t lineality_dim() const { return lin_.size(); }
  bool is_pointed() const { return lin_.empty(); }
  bool is_zero() const { return rays_.empty() && lin_.empty(); }

  const std::vector<IntVec>& rays() const { return rays_; }
  const std::vector<IntVec>& lineality() const { return lin_; }
  const std::vector<IntVec>& facets() const { return facets_; }
  const std::vector<IntVec>& equations() const { return eqs_; }
  // rays followed by +-lineality vectors
  std::vector<IntVec> generators() const;

  bool contains(const IntVec& v) const;
  bool contains(const Cone& o) const;
  bool in_relative_interior(const IntVec& v) const;
  // A point in the relative interior (sum of generators).
  IntVec interior_point() const;
  bool operator==(const Cone& o) const;
  bool operator!=(const Cone& o) const { return !(*this == o); }
  bool operator<(const Cone& o) const;

  Cone dual() const;
  Cone intersect(const Cone& o) const;
  // Face cut out by f = 0, f must be nonnegative on the cone.
  Cone face_at(const IntVec& f) const;
  // Smallest face containing the point v of the cone.
  Cone minimal_face_containing(const IntVec& v) const;
  bool is_face_of(const Cone& big) const;

  std::string str() const;

 private:
  std::size_t n_ = 0;
  std::vector<IntVec> rays_, lin_, facets_, eqs_;
};

// Result of the double description step: V-representation of {x : A x >= 0, E x = 0}.
struct VRep {
  std::vector<IntVec> rays;
  std::vector<IntVec> lineality;
};
VRep vrep_from_hrep(std::size_t n, const std::vector<IntVec>& ineqs, const std::vector<IntVec>& eqs);

// All faces, sorted by dimension then canonically.
std::vector<Cone> face_lattice(const Cone& c);
// Image of c under the linear map f (rows = output coordinates).
Cone image_cone(const IntMatrix& f, const Cone& c);
// Preimage {x : f x in c}.
Cone preimage_cone(const IntMatrix& f, const Cone& c);

// Hilbert basis of c ∩ L (L defaults to Z^n). Throws NotStrictlyConvex if c has lineality.
std::vector<IntVec> hilbert_basis(const Cone& c);
std::vector<IntVec> hilbert_basis(const Cone& c, const Lattice& L);
// Monoid generators of c ∩ L when c may have lineality: Hilbert basis of the pointed
// quotient, lifted, plus +- a basis of the lineality lattice.
std::vector<IntVec> saturated_generators(const Cone& c, const Lattice& L);

// Lattice points of {x : A x >= b} minimal with respect to adding elements of `steps`.
// The recession cone of the polyhedron must be the pointed cone spanned by `steps`.
std::vector<IntVec> minimal_points(std::size_t d, const std::vector<IntVec>& A, const IntVec& b,
                                   const std::vector<IntVec>& steps);
// Vertices of {x : A x >= b}; empty if the polyhedron is empty.
std::vector<RatVec> polyhedron_vertices(std::size_t d, const std::vector<IntVec>& A, const IntVec& b);

}  // namespace conekit
