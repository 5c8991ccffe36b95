#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "conekit/arith.hpp"
#include "conekit/cone.hpp"
#include "conekit/lattice.hpp"

namespace conekit {

// Fine monoid given by generators inside Z^n. The monoid may have units (generators
// in the lineality of its cone) and need not be saturated.
class FineMonoid {
 public:
  FineMonoid() : FineMonoid(0, {}) {}
  FineMonoid(std::size_t ambient, std::vector<IntVec> gens);
  static FineMonoid free(std::size_t n);
  // N^k modulo the relations (each given as the difference a - b of a relation a = b).
  // Throws Torsion if the resulting group is not free.
  static FineMonoid from_presentation(std::size_t k, const std::vector<IntVec>& relations);

  std::size_t ambient() const { return n_; }
  const std::vector<IntVec>& generators() const { return gens_; }
  const Lattice& group() const { return group_; }
  std::size_t rank() const { return group_.rank(); }
  const Cone& cone() const { return cone_; }
  bool is_sharp() const { return cone_.is_pointed(); }
  bool is_saturated() const;
  bool is_zero() const { return gens_.empty(); }

  bool contains(const IntVec& v) const;
  // Coefficients over generators() with v = sum c_i g_i, or nullopt. Coefficients of unit
  // generators may be negative.
  std::optional<std::vector<Int>> decompose(const IntVec& v) const;
  // a <= b iff b - a lies in the monoid.
  bool leq(const IntVec& a, const IntVec& b) const { return contains(sub(b, a)); }

  // Irreducible generators (Hilbert basis when saturated and sharp), sorted.
  std::vector<IntVec> minimal_generators() const;
  // cone ∩ group; saturation_in uses a chosen lattice containing the group instead.
  FineMonoid saturation() const;
  FineMonoid saturation_in(const Lattice& l) const;

  // The same monoid in coordinates of the Hermite basis of its group, so that the group is Z^rank.
  FineMonoid intrinsic() const;
  IntVec to_intrinsic(const IntVec& v) const;
  IntVec from_intrinsic(const IntVec& c) const;

  bool operator==(const FineMonoid& o) const { return n_ == o.n_ && gens_ == o.gens_; }
  std::string str() const;

 private:
  struct Cache;
  std::size_t n_ = 0;
  std::vector<IntVec> gens_;
  Lattice group_;
  Cone cone_;
  std::shared_ptr<Cache> cache_;
};

// Homomorphism P -> Q induced by an integer matrix between the ambient lattices.
class MonoidMap {
 public:
  MonoidMap() = default;
  // Throws RankMismatch on bad dimensions, NotAHomomorphism if a generator of P leaves Q.
  MonoidMap(FineMonoid source, FineMonoid target, IntMatrix matrix);
  static MonoidMap identity(const FineMonoid& p);

  const FineMonoid& source() const { return src_; }
  const FineMonoid& target() const { return tgt_; }
  const IntMatrix& matrix() const { return m_; }
  IntVec operator()(const IntVec& v) const { return m_ * v; }
  // Matrix of the map between the groups in their Hermite bases (rank Q x rank P).
  IntMatrix intrinsic_matrix() const;
  // this followed by g
  MonoidMap then(const MonoidMap& g) const;

 private:
  FineMonoid src_, tgt_;
  IntMatrix m_;
};

// P[-S] modulo its units, with the quotient map on ambient lattices and a section of it.
struct Localization {
  FineMonoid monoid;
  IntMatrix proj;
  IntMatrix section;
};
Localization localize_sharpen(const FineMonoid& p, const std::vector<IntVec>& s);

enum class PushoutKind { Integral, Saturated };

// Pushout of P' <- P -> Q. Lives in Z^{n'+nQ} modulo the relation lattice {(f(p), -g(p))};
// `lifted` is the preimage monoid there (the relations are units of it). `free_part` is its
// image in the torsion-free quotient, `torsion` the invariant factors > 1 of the relations
// inside their saturation.
struct Pushout {
  FineMonoid lifted;
  Lattice relations;
  std::vector<Int> torsion;
  FineMonoid free_part;
  IntMatrix free_proj;   // Z^{n'+nQ} -> ambient of free_part
  IntMatrix into_left;   // P' ambient -> Z^{n'+nQ}
  IntMatrix into_right;  // Q ambient -> Z^{n'+nQ}
};
Pushout pushout(const MonoidMap& f, const MonoidMap& g, PushoutKind kind);

}  // namespace conekit
