#include "conekit/morphism.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "conekit/errors.hpp"

namespace conekit {

namespace {

// h written in the Hermite bases of the two groups, so both groups are free of full rank.
struct Chart {
  FineMonoid P, Q;
  IntMatrix H;
  std::size_t a = 0, b = 0;
};

Chart chart(const MonoidMap& h) {
  Chart c;
  c.P = h.source().intrinsic();
  c.Q = h.target().intrinsic();
  c.H = h.intrinsic_matrix();
  c.a = c.P.ambient();
  c.b = c.Q.ambient();
  return c;
}

void require_fss(const FineMonoid& m, const char* which) {
  if (!m.is_sharp()) throw Error("HypothesisViolation", std::string(which) + " monoid is not sharp");
  if (!m.is_saturated()) throw Error("HypothesisViolation", std::string(which) + " monoid is not saturated");
}

std::vector<IntVec> sorted_desc(std::vector<IntVec> v) {
  std::sort(v.begin(), v.end(), [](const IntVec& x, const IntVec& y) { return y < x; });
  return v;
}

Cone lineality_cone(const Cone& c) {
  std::vector<IntVec> g;
  for (const auto& l : c.lineality()) {
    g.push_back(l);
    g.push_back(neg(l));
  }
  return Cone::from_generators(c.ambient(), g);
}

bool in_lineality(const Cone& c, const IntVec& v) {
  if (!c.contains(v)) return false;
  for (const auto& f : c.facets())
    if (dot(f, v) != 0) return false;
  return true;
}

Verdict ok(std::string procedure) {
  Verdict v;
  v.holds = true;
  v.procedure = std::move(procedure);
  return v;
}

Verdict fail(std::string procedure, Certificate cert) {
  Verdict v;
  v.holds = false;
  v.procedure = std::move(procedure);
  v.cert = std::move(cert);
  return v;
}

// Core exactness test on a chart; returns an element of P^gp mapping into Q but not in P.
std::optional<IntVec> exactness_failure(const FineMonoid& P, const FineMonoid& Q, const IntMatrix& H) {
  if (!Q.is_saturated()) throw Error("HypothesisViolation", "target monoid is not saturated");
  Cone pre = preimage_cone(H, Q.cone());
  for (const auto& g : saturated_generators(pre, Lattice::full(P.ambient())))
    if (!P.contains(g)) return g;
  return std::nullopt;
}

}  // namespace

BasicFlags basic_flags(const MonoidMap& h) {
  Chart c = chart(h);
  BasicFlags f;

  Cone k = c.P.cone().intersect(preimage_cone(c.H, lineality_cone(c.Q.cone())));
  f.local = ok("kernel cone inside lineality");
  for (const auto& g : k.generators())
    if (!in_lineality(c.P.cone(), g)) {
      Certificate cert;
      cert.note = "element of P mapping to a unit of Q";
      cert.add("p", h.source().from_intrinsic(g));
      f.local = fail("kernel cone inside lineality", cert);
      break;
    }

  f.injective_gp = ok("rank of group map");
  auto ker = integer_kernel(c.H);
  if (!ker.empty()) {
    Certificate cert;
    cert.note = "nonzero kernel vector of h^gp";
    cert.add("kernel", h.source().from_intrinsic(ker[0]));
    f.injective_gp = fail("rank of group map", cert);
  }

  std::vector<IntVec> gens = c.Q.generators();
  for (const auto& col : c.H.col_list()) {
    gens.push_back(col);
    gens.push_back(neg(col));
  }
  FineMonoid qp(c.b, gens);
  f.vertical = ok("negated generators in Q + h(P^gp)");
  for (const auto& q : c.Q.minimal_generators())
    if (!qp.contains(neg(q))) {
      Certificate cert;
      cert.note = "generator whose negative class does not meet Q";
      cert.add("q", h.target().from_intrinsic(q));
      f.vertical = fail("negated generators in Q + h(P^gp)", cert);
      break;
    }
  return f;
}

Verdict is_exact(const MonoidMap& h) {
  Chart c = chart(h);
  auto bad = exactness_failure(c.P, c.Q, c.H);
  const bool dual_ok = c.P.is_saturated() && c.P.is_sharp() && c.Q.is_sharp();
  if (!bad) {
    Verdict v = ok(dual_ok ? "dual cone surjectivity" : "preimage generators");
    if (dual_ok) {
      v.cert.note = "image of sigma_Q equals sigma_P";
      Cone sp = c.P.cone().dual();
      for (const auto& r : sp.rays()) v.cert.add("ray", r);
    }
    return v;
  }
  Certificate cert;
  cert.add("p", h.source().from_intrinsic(*bad));
  if (dual_ok) {
    Cone image = image_cone(c.H.transpose(), c.Q.cone().dual());
    for (const auto& r : sorted_desc(c.P.cone().dual().rays()))
      if (!image.contains(r)) {
        cert.note = "ray of sigma_P outside the image of sigma_Q; p maps into Q but is not in P";
        cert.add("ray", r);
        break;
      }
    return fail("dual cone surjectivity", cert);
  }
  cert.note = "p maps into Q but is not in P";
  return fail("preimage generators", cert);
}

std::optional<ValuationExtension> extend_rank1_valuation(const MonoidMap& h, const IntVec& v) {
  Chart c = chart(h);
  require_fss(c.P, "source");
  require_fss(c.Q, "target");
  Cone sp = c.P.cone().dual(), sq = c.Q.cone().dual();
  if (v.size() != c.a || !sp.contains(v)) throw Error("NotInDualCone", to_string(v) + " is not a valuation of P");
  if (is_zero(v)) return ValuationExtension{Int(1), IntVec(c.b)};
  IntMatrix ht = c.H.transpose();
  Cone k = sq.intersect(preimage_cone(ht, Cone::from_generators(c.a, {v})));
  std::size_t pivot = 0;
  while (v[pivot] == 0) ++pivot;
  std::optional<ValuationExtension> best;
  for (const auto& r : k.rays()) {
    IntVec img = ht * r;
    if (is_zero(img)) continue;
    Rat t(img[pivot], v[pivot]);
    t.canonicalize();
    ValuationExtension e{t.get_num(), scale(t.get_den(), r)};
    if (!best || e.c < best->c || (e.c == best->c && e.w < best->w)) best = e;
  }
  return best;
}

LocalizedMap localize_morphism(const MonoidMap& h) {
  Chart c = chart(h);
  if (!c.Q.is_sharp()) throw Error("HypothesisViolation", "target monoid is not sharp");
  std::vector<IntVec> f;
  for (const auto& g : c.P.generators())
    if (is_zero(c.H * g)) f.push_back(g);
  Localization loc = localize_sharpen(c.P, f);
  MonoidMap m(loc.monoid, c.Q, c.H * loc.section);
  return LocalizedMap{m, loc.proj, c.P.cone().lineality_dim() == 0 && f.empty()};
}

Verdict localizations_exact(const MonoidMap& h) {
  Chart c = chart(h);
  require_fss(c.Q, "target");
  for (const auto& face : face_lattice(c.Q.cone())) {
    std::vector<IntVec> s;
    for (const auto& g : c.Q.generators())
      if (face.contains(g)) s.push_back(g);
    Localization loc = localize_sharpen(c.Q, s);
    MonoidMap composite(c.P, loc.monoid, loc.proj * c.H);
    LocalizedMap lm = localize_morphism(composite);
    auto bad = exactness_failure(lm.map.source(), lm.map.target(), lm.map.matrix());
    if (bad) {
      Certificate cert;
      cert.note = "localization at this face of Q is not exact";
      for (const auto& g : s) cert.add("face_generator", h.target().from_intrinsic(g));
      cert.add("witness", *bad);
      return fail("face localizations", cert);
    }
  }
  return ok("face localizations");
}

namespace {

// Data for the equational criterion on a chart with P, Q saturated and sharp.
struct Kato {
  const Chart& c;
  std::vector<IntVec> hbP, hbQ;

  explicit Kato(const Chart& ch) : c(ch) {
    hbP = hilbert_basis(c.P.cone());
    hbQ = hilbert_basis(c.Q.cone());
  }

  // Some x3 in P with x3 - d in P and y - h(x3) in Q.
  std::optional<IntVec> good(const IntVec& d, const IntVec& y) const {
    std::vector<IntVec> A;
    IntVec rhs;
    for (const auto& f : c.P.cone().facets()) {
      A.push_back(f);
      rhs.push_back(0);
      A.push_back(f);
      rhs.push_back(dot(f, d));
    }
    for (const auto& x3 : minimal_points(c.a, A, rhs, hbP))
      if (c.Q.contains(sub(y, c.H * x3))) return x3;
    return std::nullopt;
  }

  // Minimal y1 in Q with y1 - h(d) in Q.
  std::vector<IntVec> minimal_y(const IntVec& d) const {
    std::vector<IntVec> A;
    IntVec rhs;
    IntVec hd = c.H * d;
    for (const auto& f : c.Q.cone().facets()) {
      A.push_back(f);
      rhs.push_back(0);
      A.push_back(f);
      rhs.push_back(dot(f, hd));
    }
    return minimal_points(c.b, A, rhs, hbQ);
  }
};

Certificate kato_certificate(const MonoidMap& h, const Chart& c, const IntVec& x1, const IntVec& x2,
                             const IntVec& y1) {
  Certificate cert;
  cert.note = "h(x1) + y1 = h(x2) + y2 admits no decomposition x1 + x3 = x2 + x4, y_i = h(x_{i+2}) + y";
  IntVec y2 = sub(y1, c.H * sub(x2, x1));
  cert.add("x1", h.source().from_intrinsic(x1));
  cert.add("x2", h.source().from_intrinsic(x2));
  cert.add("y1", h.target().from_intrinsic(y1));
  cert.add("y2", h.target().from_intrinsic(y2));
  return cert;
}

}  // namespace

Verdict is_integral(const MonoidMap& h, const IntegralityOptions& opt) {
  Chart c = chart(h);
  require_fss(c.P, "source");
  require_fss(c.Q, "target");
  if (c.a == 0) return ok("trivial source");
  Kato k(c);

  // pairs of Hilbert basis elements against minimal (y1, y2)
  auto hb = sorted_desc(k.hbP);
  for (std::size_t i = 0; i < hb.size(); ++i)
    for (std::size_t j = i + 1; j < hb.size(); ++j) {
      IntVec d = sub(hb[j], hb[i]);
      for (const auto& y1 : k.minimal_y(d))
        if (!k.good(d, y1)) return fail("generator pairs", kato_certificate(h, c, hb[i], hb[j], y1));
    }

  // complete check: generators of T = {(d, y) : y in Q, y - h(d) in Q}
  std::vector<IntVec> ineq;
  for (const auto& f : c.Q.cone().facets()) {
    ineq.push_back(concat(IntVec(c.a), f));
    IntVec fh = c.H.transpose() * f;
    ineq.push_back(concat(neg(fh), f));
  }
  Cone t = Cone::from_inequalities(c.a + c.b, ineq);
  IntVec interior(c.a);
  for (const auto& g : k.hbP) interior = add(interior, g);
  for (const auto& gen : saturated_generators(t, Lattice::full(c.a + c.b))) {
    IntVec d(gen.begin(), gen.begin() + c.a), y(gen.begin() + c.a, gen.end());
    if (k.good(d, y)) continue;
    IntVec x1(c.a);
    while (!c.P.contains(add(x1, d))) x1 = add(x1, interior);
    return fail("relation monoid generators", kato_certificate(h, c, x1, add(x1, d), y));
  }

  if (opt.paranoid) {
    auto sums = [](const std::vector<IntVec>& gens, std::size_t n, int deg) {
      std::set<IntVec> layer{IntVec(n)}, all{IntVec(n)};
      for (int s = 0; s < deg; ++s) {
        std::set<IntVec> next;
        for (const auto& x : layer)
          for (const auto& g : gens) {
            Budget::spend();
            next.insert(add(x, g));
          }
        all.insert(next.begin(), next.end());
        layer = std::move(next);
      }
      return std::vector<IntVec>(all.begin(), all.end());
    };
    auto ps = sums(k.hbP, c.a, opt.paranoid_degree);
    auto qs = sums(k.hbQ, c.b, opt.paranoid_degree);
    for (const auto& x1 : ps)
      for (const auto& x2 : ps)
        for (const auto& y1 : qs) {
          Budget::spend();
          IntVec d = sub(x2, x1);
          if (!c.Q.contains(sub(y1, c.H * d))) continue;
          if (!k.good(d, y1)) return fail("paranoid enumeration", kato_certificate(h, c, x1, x2, y1));
        }
    return ok("relation monoid generators + paranoid enumeration");
  }
  return ok("relation monoid generators");
}

Verdict is_saturated(const MonoidMap& h) {
  Chart c = chart(h);
  if (rank(c.H) != c.a) throw Error("HypothesisViolation", "map is not injective on groups");
  require_fss(c.P, "source");
  require_fss(c.Q, "target");
  Cone sp = c.P.cone().dual();
  IntMatrix ht = c.H.transpose();
  for (const auto& tau : face_lattice(c.Q.cone().dual())) {
    Cone img = image_cone(ht, tau);
    if (!img.is_face_of(sp)) {
      Certificate cert;
      cert.note = "image of this face of sigma_Q is not a face of sigma_P";
      for (const auto& r : tau.rays()) cert.add("face_ray", r);
      for (const auto& r : img.rays()) cert.add("image_ray", r);
      return fail("weak semistability", cert);
    }
    std::vector<IntVec> images;
    for (const auto& g : hilbert_basis(tau)) images.push_back(ht * g);
    FineMonoid generated(c.a, images);
    for (const auto& p : hilbert_basis(img))
      if (!generated.contains(p)) {
        Certificate cert;
        cert.note = "lattice point of the image face not hit by lattice points of the face";
        for (const auto& r : tau.rays()) cert.add("face_ray", r);
        cert.add("point", p);
        return fail("weak semistability", cert);
      }
  }
  return ok("weak semistability");
}

Verdict quasisaturated_upto(const MonoidMap& h, int n_max) {
  Chart c = chart(h);
  if (!c.Q.is_saturated()) throw Error("HypothesisViolation", "target monoid is not saturated");
  MonoidMap g(c.P, c.Q, c.H);
  for (int n = 1; n <= n_max; ++n) {
    IntMatrix mult = IntMatrix::identity(c.a);
    for (std::size_t i = 0; i < c.a; ++i) mult(i, i) = n;
    Pushout po = pushout(MonoidMap(c.P, c.P, mult), g, PushoutKind::Integral);
    // induced map (p, q) -> h(p) + n q on the lifted pushout
    IntMatrix lifted(c.b, c.a + c.b);
    for (std::size_t i = 0; i < c.b; ++i) {
      for (std::size_t j = 0; j < c.a; ++j) lifted(i, j) = c.H(i, j);
      lifted(i, c.a + i) = n;
    }
    Cone pre = preimage_cone(lifted, c.Q.cone());
    for (const auto& x : saturated_generators(pre, Lattice::full(c.a + c.b)))
      if (!po.lifted.contains(x)) {
        Certificate cert;
        cert.note = "pushout along [n] is not exact over Q; element of (P + Q) lifted coordinates";
        cert.add("n", IntVec{Int(n)});
        cert.add("element", x);
        return fail("pushout exactness for n <= " + std::to_string(n_max), cert);
      }
  }
  return ok("pushout exactness for n <= " + std::to_string(n_max));
}

InfResult infimum(const MonoidMap& h, const IntVec& q) {
  if (!is_exact(h).holds) throw Error("NotExact", "infimum needs an exact morphism");
  LocalizedMap lm = localize_morphism(h);
  const FineMonoid& P = lm.map.source();
  const FineMonoid& Q = lm.map.target();
  IntVec qi = h.target().to_intrinsic(q);
  const IntMatrix& H = lm.map.matrix();
  const std::size_t a = P.ambient();
  std::vector<IntVec> A;
  IntVec rhs;
  for (const auto& f : Q.cone().facets()) {
    A.push_back(H.transpose() * f);
    rhs.push_back(-dot(f, qi));
  }
  InfResult r;
  r.localized = !lm.trivial;
  r.base_change = lm.base_change;
  auto steps = a == 0 ? std::vector<IntVec>{} : hilbert_basis(P.cone());
  for (const auto& m : minimal_points(a, A, rhs, steps)) {
    IntVec p = neg(m);
    r.maximal.push_back(lm.trivial ? h.source().from_intrinsic(p) : p);
  }
  std::sort(r.maximal.begin(), r.maximal.end());
  if (r.maximal.empty()) {
    r.kind = InfResult::Kind::NoLowerBound;
  } else if (r.maximal.size() == 1) {
    r.kind = InfResult::Kind::Max;
    r.value = r.maximal[0];
  } else {
    r.kind = InfResult::Kind::NoMax;
  }
  return r;
}

std::string to_string(const InfResult& r) {
  switch (r.kind) {
    case InfResult::Kind::NoLowerBound:
      return "NoLowerBound";
    case InfResult::Kind::Max:
      return "Max(" + to_string(r.value) + ")";
    case InfResult::Kind::NoMax: {
      std::string s = "NoMax{";
      for (std::size_t i = 0; i < r.maximal.size(); ++i) s += (i ? ", " : "") + to_string(r.maximal[i]);
      return s + "}";
    }
  }
  return "";
}

PushforwardClass pushforward_character(const MonoidMap& h, const IntVec& q) {
  InfResult r = infimum(h, q);
  PushforwardClass p;
  switch (r.kind) {
    case InfResult::Kind::Max:
      p.kind = PushforwardClass::Kind::Invertible;
      p.data = {r.value};
      break;
    case InfResult::Kind::NoMax:
      p.kind = PushforwardClass::Kind::IdealLike;
      p.data = r.maximal;
      break;
    case InfResult::Kind::NoLowerBound:
      p.kind = PushforwardClass::Kind::Zero;
      break;
  }
  return p;
}

const Verdict* PropertyReport::find(const std::string& name) const {
  for (const auto& [k, v] : verdicts)
    if (k == name) return &v;
  return nullptr;
}

PropertyReport check_all(const MonoidMap& h, const CheckOptions& opt) {
  PropertyReport rep;
  auto run = [&](const std::string& name, const std::function<Verdict()>& f) {
    try {
      rep.verdicts.emplace_back(name, f());
    } catch (const Error& e) {
      Verdict v;
      v.error = e.what();
      rep.verdicts.emplace_back(name, v);
    }
  };
  std::optional<BasicFlags> flags;
  try {
    flags = basic_flags(h);
  } catch (const Error& e) {
    Verdict v;
    v.error = e.what();
    flags = BasicFlags{v, v, v};
  }
  rep.verdicts.emplace_back("local", flags->local);
  rep.verdicts.emplace_back("injective_gp", flags->injective_gp);
  rep.verdicts.emplace_back("vertical", flags->vertical);
  run("exact", [&] { return is_exact(h); });
  run("localizations_exact", [&] { return localizations_exact(h); });
  run("integral", [&] { return is_integral(h, opt.integrality); });
  run("saturated", [&] { return is_saturated(h); });
  run("quasisaturated_upto_" + std::to_string(opt.quasisaturation_bound),
      [&] { return quasisaturated_upto(h, opt.quasisaturation_bound); });
  return rep;
}

CertificateCheck verify_certificate(const MonoidMap& h, const std::string& property, const Verdict& v) {
  CertificateCheck c;
  if (v.holds || v.error) return c;
  const FineMonoid& P = h.source();
  const FineMonoid& Q = h.target();
  auto item = [&](const std::string& label) -> const IntVec* {
    for (const auto& [k, x] : v.cert.items)
      if (k == label) return &x;
    return nullptr;
  };
  auto fail = [&](std::string why) {
    c.ok = false;
    c.detail = property + ": " + why;
    return c;
  };
  auto sized = [](const IntVec* x, std::size_t n) { return x && x->size() == n; };
  if (property == "local") {
    const IntVec* p = item("p");
    if (!sized(p, P.ambient())) return fail("missing p");
    if (!P.contains(*p) || P.contains(neg(*p))) return fail("p is not a non-unit of P");
    IntVec q = h(*p);
    if (!Q.contains(q) || !Q.contains(neg(q))) return fail("h(p) is not a unit of Q");
  } else if (property == "injective_gp") {
    const IntVec* k = item("kernel");
    if (!sized(k, P.ambient()) || is_zero(*k)) return fail("missing kernel vector");
    if (!P.group().contains(*k) || !is_zero(h(*k))) return fail("kernel vector does not map to 0");
  } else if (property == "vertical") {
    const IntVec* q = item("q");
    if (!sized(q, Q.ambient()) || !Q.contains(*q)) return fail("q is not in Q");
  } else if (property == "exact") {
    const IntVec* p = item("p");
    if (!sized(p, P.ambient())) return fail("missing p");
    if (!P.group().contains(*p) || P.contains(*p)) return fail("p is not in P^gp \\ P");
    if (!Q.contains(h(*p))) return fail("h(p) is not in Q");
  } else if (property == "localizations_exact") {
    for (const auto& [k, x] : v.cert.items)
      if (k == "face_generator" && !Q.contains(x)) return fail("face generator not in Q");
  } else if (property == "integral") {
    const IntVec *x1 = item("x1"), *x2 = item("x2"), *y1 = item("y1"), *y2 = item("y2");
    if (!sized(x1, P.ambient()) || !sized(x2, P.ambient()) || !sized(y1, Q.ambient()) || !sized(y2, Q.ambient()))
      return fail("missing witnesses");
    if (!P.contains(*x1) || !P.contains(*x2) || !Q.contains(*y1) || !Q.contains(*y2))
      return fail("witness outside its monoid");
    if (add(h(*x1), *y1) != add(h(*x2), *y2)) return fail("h(x1) + y1 != h(x2) + y2");
  } else if (property == "saturated") {
    if (!item("face_ray")) return fail("missing face");
  } else if (property.rfind("quasisaturated_upto_", 0) == 0) {
    const IntVec* n = item("n");
    if (!n || n->size() != 1 || (*n)[0] < 1) return fail("missing n");
  }
  return c;
}

}  // namespace conekit
