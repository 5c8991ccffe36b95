#include "conekit/monoid.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "conekit/errors.hpp"

namespace conekit {

struct FineMonoid::Cache {
  std::once_flag once;
  bool saturated = false;
};

FineMonoid::FineMonoid(std::size_t ambient, std::vector<IntVec> gens) : n_(ambient) {
  for (auto& g : gens) {
    if (g.size() != n_) throw Error("RankMismatch", "generator " + to_string(g) + " not in rank " + std::to_string(n_));
    if (!conekit::is_zero(g)) gens_.push_back(std::move(g));
  }
  std::sort(gens_.begin(), gens_.end());
  gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
  group_ = Lattice::span(gens_, n_);
  cone_ = Cone::from_generators(n_, gens_);
  cache_ = std::make_shared<Cache>();
}

FineMonoid FineMonoid::free(std::size_t n) {
  std::vector<IntVec> g;
  for (std::size_t i = 0; i < n; ++i) g.push_back(unit(n, i));
  return FineMonoid(n, g);
}

FineMonoid FineMonoid::from_presentation(std::size_t k, const std::vector<IntVec>& relations) {
  Lattice r = Lattice::span(relations, k);
  if (!r.is_saturated()) throw Error("Torsion", "presented group has torsion");
  QuotientMap q = quotient_by(r);
  std::vector<IntVec> gens;
  for (std::size_t i = 0; i < k; ++i) gens.push_back(q.proj * unit(k, i));
  return FineMonoid(q.proj.rows(), gens);
}

bool FineMonoid::is_saturated() const {
  std::call_once(cache_->once, [this] {
    bool sat = true;
    for (const auto& h : saturated_generators(cone_, group_))
      if (!decompose(h)) {
        sat = false;
        break;
      }
    cache_->saturated = sat;
  });
  return cache_->saturated;
}

bool FineMonoid::contains(const IntVec& v) const {
  if (!group_.contains(v) || !cone_.contains(v)) return false;
  if (is_saturated()) return true;
  return decompose(v).has_value();
}

std::optional<std::vector<Int>> FineMonoid::decompose(const IntVec& v) const {
  if (v.size() != n_) throw Error("RankMismatch", "element " + to_string(v) + " not in rank " + std::to_string(n_));
  if (!group_.contains(v) || !cone_.contains(v)) return std::nullopt;

  IntVec ell(n_);
  for (const auto& f : cone_.facets()) ell = add(ell, f);
  std::vector<std::size_t> units, rest;
  std::vector<IntVec> unit_gens;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    bool in_lin = true;
    for (const auto& f : cone_.facets())
      if (dot(f, gens_[i]) != 0) in_lin = false;
    if (in_lin) {
      units.push_back(i);
      unit_gens.push_back(gens_[i]);
    } else {
      rest.push_back(i);
    }
  }
  Lattice unit_group = Lattice::span(unit_gens, n_);
  std::vector<Int> weight;
  for (auto i : rest) weight.push_back(dot(ell, gens_[i]));

  std::vector<Int> coef(gens_.size());
  std::set<std::pair<std::size_t, IntVec>> dead;
  // depth-first search over coefficients of the non-unit generators, largest first
  auto dfs = [&](auto&& self, std::size_t k, const IntVec& rem, const Int& rem_l) -> bool {
    Budget::spend();
    if (rem_l == 0 || k == rest.size()) {
      if (rem_l != 0 || !unit_group.contains(rem)) return false;
      for (std::size_t j = k; j < rest.size(); ++j) coef[rest[j]] = 0;
      if (!units.empty()) {
        auto sol = solve_diophantine(IntMatrix::from_cols(unit_gens, n_), rem);
        for (std::size_t j = 0; j < units.size(); ++j) coef[units[j]] = sol->particular[j];
      }
      return true;
    }
    if (dead.count({k, rem})) return false;
    Int top = rem_l / weight[k];
    for (Int c = top; c >= 0; --c) {
      IntVec next = sub(rem, scale(c, gens_[rest[k]]));
      if (!cone_.contains(next)) continue;
      coef[rest[k]] = c;
      if (self(self, k + 1, next, rem_l - c * weight[k])) return true;
    }
    dead.insert({k, rem});
    return false;
  };
  if (!dfs(dfs, 0, v, dot(ell, v))) return std::nullopt;
  return coef;
}

std::vector<IntVec> FineMonoid::minimal_generators() const {
  if (!is_sharp()) return gens_;
  std::vector<IntVec> out;
  for (const auto& g : gens_) {
    bool reducible = false;
    for (const auto& h : gens_)
      if (h != g && contains(sub(g, h))) {
        reducible = true;
        break;
      }
    if (!reducible) out.push_back(g);
  }
  return out;
}

FineMonoid FineMonoid::saturation() const { return FineMonoid(n_, saturated_generators(cone_, group_)); }

FineMonoid FineMonoid::saturation_in(const Lattice& l) const {
  if (!l.contains(group_)) throw Error("NotInGroup", "lattice does not contain the monoid's group");
  return FineMonoid(n_, saturated_generators(cone_, l));
}

FineMonoid FineMonoid::intrinsic() const {
  std::vector<IntVec> c;
  for (const auto& g : gens_) c.push_back(to_intrinsic(g));
  return FineMonoid(rank(), c);
}

IntVec FineMonoid::to_intrinsic(const IntVec& v) const {
  auto c = group_.coordinates(v);
  if (!c) throw Error("NotInGroup", to_string(v) + " is not in the monoid's group");
  return *c;
}

IntVec FineMonoid::from_intrinsic(const IntVec& c) const { return group_.from_coordinates(c); }

std::string FineMonoid::str() const {
  std::string s = "monoid(rank " + std::to_string(n_) + ", gens=[";
  for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? ", " : "") + to_string(gens_[i]);
  return s + "])";
}

MonoidMap::MonoidMap(FineMonoid source, FineMonoid target, IntMatrix matrix)
    : src_(std::move(source)), tgt_(std::move(target)), m_(std::move(matrix)) {
  if (m_.cols() != src_.ambient() || m_.rows() != tgt_.ambient())
    throw Error("RankMismatch", "matrix is " + std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()) +
                                    ", expected " + std::to_string(tgt_.ambient()) + "x" +
                                    std::to_string(src_.ambient()));
  for (const auto& g : src_.generators())
    if (!tgt_.contains(m_ * g))
      throw Error("NotAHomomorphism", "image of " + to_string(g) + " is " + to_string(m_ * g) + ", not in target");
}

MonoidMap MonoidMap::identity(const FineMonoid& p) { return MonoidMap(p, p, IntMatrix::identity(p.ambient())); }

IntMatrix MonoidMap::intrinsic_matrix() const {
  std::vector<IntVec> cols;
  for (const auto& b : src_.group().basis_vectors()) cols.push_back(tgt_.to_intrinsic(m_ * b));
  return IntMatrix::from_cols(cols, tgt_.rank());
}

MonoidMap MonoidMap::then(const MonoidMap& g) const { return MonoidMap(src_, g.tgt_, g.m_ * m_); }

Localization localize_sharpen(const FineMonoid& p, const std::vector<IntVec>& s) {
  IntVec total(p.ambient());
  for (const auto& x : s) {
    if (!p.contains(x)) throw Error("NotInMonoid", to_string(x) + " is not in " + p.str());
    total = add(total, x);
  }
  Cone face = p.cone().minimal_face_containing(total);
  QuotientMap q = quotient_by(saturate_subgroup(face.generators(), p.ambient()));
  std::vector<IntVec> gens;
  for (const auto& g : p.generators()) gens.push_back(q.proj * g);
  return Localization{FineMonoid(q.proj.rows(), gens), q.proj, q.section};
}

Pushout pushout(const MonoidMap& f, const MonoidMap& g, PushoutKind kind) {
  if (!(f.source() == g.source())) throw Error("SchemaError", "pushout legs must share their source");
  const std::size_t n1 = f.target().ambient(), n2 = g.target().ambient(), n = n1 + n2;
  IntMatrix left(n, n1), right(n, n2);
  for (std::size_t i = 0; i < n1; ++i) left(i, i) = 1;
  for (std::size_t i = 0; i < n2; ++i) right(n1 + i, i) = 1;

  std::vector<IntVec> rel;
  for (const auto& b : f.source().group().basis_vectors()) rel.push_back(sub(left * f(b), right * g(b)));
  Lattice relations = Lattice::span(rel, n);

  std::vector<IntVec> gens;
  for (const auto& x : f.target().generators()) gens.push_back(left * x);
  for (const auto& y : g.target().generators()) gens.push_back(right * y);
  for (const auto& r : relations.basis_vectors()) {
    gens.push_back(r);
    gens.push_back(neg(r));
  }
  FineMonoid lifted(n, gens);
  if (kind == PushoutKind::Saturated) lifted = lifted.saturation();

  std::vector<Int> torsion;
  for (const auto& d : invariant_factors(relations.basis()))
    if (d > 1) torsion.push_back(d);

  QuotientMap q = quotient_by(saturate_subgroup(relations.basis_vectors(), n));
  std::vector<IntVec> free_gens;
  for (const auto& x : lifted.generators()) free_gens.push_back(q.proj * x);
  return Pushout{lifted, relations, torsion, FineMonoid(q.proj.rows(), free_gens), q.proj, left, right};
}

}  // namespace conekit
