#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conekit/monoid.hpp"

namespace conekit {

// Named witness vectors backing a verdict. Elements of P or Q are in ambient coordinates;
// valuations (points of dual cones) are in coordinates dual to the group's Hermite basis,
// which agree with ambient ones when the group is all of Z^n.
struct Certificate {
  std::string note;
  std::vector<std::pair<std::string, IntVec>> items;
  void add(std::string label, IntVec v) { items.emplace_back(std::move(label), std::move(v)); }
};

struct Verdict {
  bool holds = false;
  std::string procedure;
  Certificate cert;
  std::optional<std::string> error;  // "Kind: message" when the check could not run
};

struct BasicFlags {
  Verdict local;
  Verdict injective_gp;
  Verdict vertical;
};
BasicFlags basic_flags(const MonoidMap& h);

// Requires a saturated target. Decided by checking that the generators of
// (h^gp)^{-1}(Q) lie in P; for saturated P a missing ray of sigma_P is also reported.
Verdict is_exact(const MonoidMap& h);

struct ValuationExtension {
  Int c;     // v extends along multiplication by c
  IntVec w;  // point of sigma_Q with w o h = c v
};
std::optional<ValuationExtension> extend_rank1_valuation(const MonoidMap& h, const IntVec& v);

// P' = P[-h^{-1}(0)] sharpened, with the induced local map. Works in group coordinates:
// the source of `map` is the localized monoid, `base_change` goes from P's group coordinates.
struct LocalizedMap {
  MonoidMap map;
  IntMatrix base_change;
  bool trivial = true;  // nothing was inverted
};
LocalizedMap localize_morphism(const MonoidMap& h);

// Localizes the composite at every face of Q (smallest first) and tests exactness.
Verdict localizations_exact(const MonoidMap& h);

struct IntegralityOptions {
  bool paranoid = false;
  int paranoid_degree = 2;  // brute force over sums of at most this many generators
};
Verdict is_integral(const MonoidMap& h, const IntegralityOptions& opt = {});

// Weak semistability; throws HypothesisViolation unless h is injective on groups.
Verdict is_saturated(const MonoidMap& h);

// Exactness of the pushout along [n] for n = 1..n_max. Bounded check.
Verdict quasisaturated_upto(const MonoidMap& h, int n_max);

struct InfResult {
  enum class Kind { NoLowerBound, Max, NoMax };
  Kind kind = Kind::NoLowerBound;
  IntVec value;                 // for Max
  std::vector<IntVec> maximal;  // sorted; the antichain for NoMax, {value} for Max
  bool localized = false;       // values are in coordinates of the localized source
  IntMatrix base_change;
};
// Throws NotExact when h is not exact.
InfResult infimum(const MonoidMap& h, const IntVec& q);
std::string to_string(const InfResult& r);

struct PushforwardClass {
  enum class Kind { Invertible, IdealLike, Zero };
  Kind kind = Kind::Zero;
  std::vector<IntVec> data;
};
PushforwardClass pushforward_character(const MonoidMap& h, const IntVec& q);

struct CheckOptions {
  IntegralityOptions integrality;
  int quasisaturation_bound = 6;
};
struct PropertyReport {
  std::vector<std::pair<std::string, Verdict>> verdicts;
  const Verdict* find(const std::string& name) const;
};
PropertyReport check_all(const MonoidMap& h, const CheckOptions& opt = {});

// Re-checks the witnesses of a negative verdict against h: memberships, group membership and
// the integrality identity. Positive verdicts and verdicts with errors pass trivially.
struct CertificateCheck {
  bool ok = true;
  std::string detail;
};
CertificateCheck verify_certificate(const MonoidMap& h, const std::string& property, const Verdict& v);

}  // namespace conekit
