#include "qhm/verify.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "qhm/traces.hpp"

namespace qhm {

uint64_t Rng::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::unit() { return (next() >> 11) * 0x1.0p-53; }

long long Rng::range(long long lo, long long hi) {
  return lo + static_cast<long long>(next() % static_cast<uint64_t>(hi - lo + 1));
}

Rational Rng::rational(long long max_den, long long max_num) {
  long long den = range(1, max_den);
  long long num = range(-max_num * den, max_num * den);
  return Rational(num, den);
}

Point random_point(Rng& rng, bool wide_x) {
  long long den = rng.range(3, 64);
  long long lo = wide_x ? -3 * den : 0;
  long long hi = wide_x ? 4 * den - 1 : den - 1;
  Rational x(rng.range(lo, hi), den);
  long long dy = rng.range(3, 64);
  Rational y(rng.range(0, dy - 1), dy);
  return Point{ExactScalar(x), ExactScalar(y)};
}

ExprPtr random_component(Rng& rng, bool trig_only) {
  int terms = static_cast<int>(rng.range(1, 3));
  std::vector<ExprPtr> sum;
  for (int t = 0; t < terms; ++t) {
    Rational coeff = rng.rational(4, 3);
    if (coeff == 0) coeff = 1;
    Rational q(rng.range(-3, 3));
    Rational r(rng.range(-3, 3));
    Rational s = rng.rational(4, 1);
    sum.push_back(prod_of({lit(coeff), harmonic(q, r, s)}));
  }
  ExprPtr f = sum_of(std::move(sum));
  if (!trig_only) {
    switch (rng.range(0, 3)) {
      case 0: f = prod_of({abs_of(sinpi(Axis::X)), f}); break;
      case 1: f = prod_of({cospi(Axis::X), f}); break;
      default: break;
    }
  }
  return f;
}

QhmElement random_element(Rng& rng, const Params& pr, int max_p, bool trig_only) {
  std::map<int, ExprPtr> comps;
  for (int p = -max_p; p <= max_p; ++p) {
    if (rng.range(0, 9) < 6) comps[p] = random_component(rng, trig_only);
  }
  if (comps.empty()) comps[0] = random_component(rng, trig_only);
  return QhmElement(pr, std::move(comps));
}

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass(); });
}

double SuiteReport::worst() const {
  double w = 0.0;
  for (const auto& c : checks) w = std::max(w, c.max_deviation);
  return w;
}

namespace {

std::string params_desc(const Params& pr) {
  return "c=" + std::to_string(pr.c()) + " mu=" + to_string(pr.mu()) + " nu=" + to_string(pr.nu());
}

ExactScalar shift_y(const ExactScalar& y, const Params& pr, long long k) {
  return y + pr.two_nu().scaled(Rational(k));
}

}  // namespace

SuiteReport verify_cocycle(const Params& pr, uint64_t seed, int samples) {
  Rng rng(seed);
  SuiteReport rep{"cocycle", params_desc(pr), seed, {}};
  CheckResult u_k{"u-law-in-p", 0.0, 1e-10, samples};
  CheckResult u_sigma{"u-law-in-k", 0.0, 1e-10, samples};
  CheckResult h_add{"h-additive", 0.0, 1e-10, samples};
  CheckResult h_inv{"h-inverse", 0.0, 1e-10, samples};
  CheckResult h_sig{"h-sigma", 0.0, 1e-10, samples};
  for (int i = 0; i < samples; ++i) {
    Point m = random_point(rng, true);
    int p = static_cast<int>(rng.range(-4, 4));
    int q = static_cast<int>(rng.range(-4, 4));
    long long k = rng.range(-4, 4);
    long long l = rng.range(-4, 4);

    // u(p+q, k)(y) = u(p, k)(y) * u(q, k)(y - 2 p nu)
    Complex lhs = cocycle_u(pr, p + q, k, m.y);
    Complex rhs = cocycle_u(pr, p, k, m.y) * cocycle_u(pr, q, k, shift_y(m.y, pr, -p));
    u_k.max_deviation = std::max(u_k.max_deviation, std::abs(lhs - rhs));

    // u(p, k+l) = u(p, k) * u(p, l) (sigma fixes y)
    lhs = cocycle_u(pr, p, k + l, m.y);
    rhs = cocycle_u(pr, p, k, m.y) * cocycle_u(pr, p, l, m.y);
    u_sigma.max_deviation = std::max(u_sigma.max_deviation, std::abs(lhs - rhs));

    // H_{p+q}(m) = H_p(m) H_q(lambda_{-p} m)
    lhs = cocycle_h(pr, p + q, m);
    rhs = cocycle_h(pr, p, m) * cocycle_h(pr, q, lambda_shift(pr, -p, m));
    h_add.max_deviation = std::max(h_add.max_deviation, std::abs(lhs - rhs));

    // conj(H_{-p}(lambda_{-p} m)) = H_p(m)
    lhs = std::conj(cocycle_h(pr, -p, lambda_shift(pr, -p, m)));
    rhs = cocycle_h(pr, p, m);
    h_inv.max_deviation = std::max(h_inv.max_deviation, std::abs(lhs - rhs));

    // H_p(sigma_{-k} m) = u(p, k)(m) H_p(m)
    lhs = cocycle_h(pr, p, sigma_shift(-k, m));
    rhs = cocycle_u(pr, p, k, m.y) * cocycle_h(pr, p, m);
    h_sig.max_deviation = std::max(h_sig.max_deviation, std::abs(lhs - rhs));
  }
  rep.checks = {u_k, u_sigma, h_add, h_inv, h_sig};
  return rep;
}

SuiteReport verify_embedding(const Params& pr, uint64_t seed, int pairs, int samples) {
  Rng rng(seed);
  SuiteReport rep{"embedding", params_desc(pr), seed, {}};
  long long total = static_cast<long long>(pairs) * samples;
  CheckResult hom{"product-hom", 0.0, 1e-9, total};
  CheckResult adj{"adjoint-hom", 0.0, 1e-9, total};
  CheckResult sig{"sigma-invariance", 0.0, 1e-12, total};
  CheckResult grammar{"strip-lattice", 0.0, 0.0, pairs};
  for (int i = 0; i < pairs; ++i) {
    QhmElement a = random_element(rng, pr, 3, false);
    QhmElement b = random_element(rng, pr, 3, false);
    CrossedElement ja = embed(a);
    CrossedElement jb = embed(b);
    CrossedElement lhs_prod = embed(multiply(a, b));
    CrossedElement rhs_prod = cp_multiply(ja, jb);
    CrossedElement lhs_adj = embed(adjoint(a));
    CrossedElement rhs_adj = cp_adjoint(ja);
    grammar.max_deviation += static_cast<double>(strip_lattice_violations(ja).size()) +
                             static_cast<double>(strip_lattice_violations(rhs_prod).size());
    int span = lhs_prod.max_abs_support();
    for (int s = 0; s < samples; ++s) {
      Point m = random_point(rng, false);
      for (int p = -span; p <= span; ++p) {
        hom.max_deviation =
            std::max(hom.max_deviation, std::abs(lhs_prod.value(p, m) - rhs_prod.value(p, m)));
      }
      for (int p = -3; p <= 3; ++p) {
        adj.max_deviation =
            std::max(adj.max_deviation, std::abs(lhs_adj.value(p, m) - rhs_adj.value(p, m)));
        // f_{a,p} = H_p * a~_p is sigma-invariant
        long long k = rng.range(-3, 3);
        Point sm = sigma_shift(-k, m);
        Complex f_at_m = cocycle_h(pr, p, m) * a.extended(p, m);
        Complex f_at_sm = cocycle_h(pr, p, sm) * a.extended(p, sm);
        sig.max_deviation = std::max(sig.max_deviation, std::abs(f_at_sm - f_at_m));
      }
    }
  }
  rep.checks = {hom, adj, sig, grammar};
  return rep;
}

SuiteReport verify_partition(const Params& pr, uint64_t seed, int samples) {
  Rng rng(seed);
  SuiteReport rep{"partition", params_desc(pr), seed, {}};
  CheckResult unity{"partition-of-unity", 0.0, 1e-12, samples * 5};
  CheckResult recon{"reconstruction", 0.0, 1e-10, samples * 5};
  CheckResult seam{"delta-seam", 0.0, 1e-4, 5};
  for (int p = -2; p <= 2; ++p) {
    auto [d1, d2] = delta_pair(pr, p);
    QhmElement phi = QhmElement::single(pr, p, random_component(rng, true));
    DeltaDecomposition dec = decompose_delta(phi, p);
    QhmElement rebuilt = multiply(dec.a1, dec.d1) + multiply(dec.a2, dec.d2);
    for (int s = 0; s < samples; ++s) {
      Point m = random_point(rng, false);
      double v1 = std::abs(eval(d1, m));
      double v2 = std::abs(eval(d2, m));
      unity.max_deviation = std::max(unity.max_deviation, std::abs(v1 * v1 + v2 * v2 - 1.0));
      recon.max_deviation =
          std::max(recon.max_deviation, std::abs(rebuilt.value(p, m) - phi.value(p, m)));
    }
    QhmElement delta2 = QhmElement::single(pr, p, d2);
    seam.max_deviation = std::max(seam.max_deviation, seam_gap(delta2, p));
  }
  rep.checks = {unity, recon, seam};
  return rep;
}

SuiteReport verify_covariance(const Params& pr, uint64_t seed, int samples) {
  Rng rng(seed);
  SuiteReport rep{"covariance", params_desc(pr), seed, {}};
  CheckResult cov{"extension-covariance", 0.0, 1e-12, samples};
  CheckResult delta_cov{"delta-covariance", 0.0, 1e-12, samples};
  std::vector<Point> probes;
  probes.reserve(samples);
  for (int i = 0; i < samples; ++i) probes.push_back(random_point(rng, true));
  QhmElement a = random_element(rng, pr, 3, false);
  cov.max_deviation = covariance_defect(a, probes, 3);
  for (int p = -2; p <= 2; ++p) {
    auto [d1, d2] = delta_pair(pr, p);
    QhmElement e = QhmElement::single(pr, p, prod_of({d1, d2}));
    delta_cov.max_deviation = std::max(delta_cov.max_deviation, covariance_defect(e, probes, 3));
  }
  rep.checks = {cov, delta_cov};
  return rep;
}

SuiteReport verify_tracial(const Params& pr, uint64_t seed, int pairs, int grid_n) {
  Rng rng(seed);
  SuiteReport rep{"tracial", params_desc(pr), seed, {}};
  std::vector<Measure> registry = invariant_measures(pr, grid_n);
  CheckResult unit_norm{"unit-normalization", 0.0, 1e-12, static_cast<long long>(registry.size())};
  CheckResult comm{"commutation", 0.0, 1e-9, static_cast<long long>(registry.size()) * pairs};
  CheckResult pos{"positivity", 0.0, 1e-9, static_cast<long long>(registry.size()) * pairs};
  CheckResult half{"sin-square-mass", 0.0, 1e-9, 1};
  QhmElement unit = QhmElement::unit(pr);
  for (const Measure& m : registry) {
    unit_norm.max_deviation =
        std::max(unit_norm.max_deviation, std::abs(trace_value(unit, m) - Complex{1.0, 0.0}));
    for (int i = 0; i < pairs; ++i) {
      QhmElement a = random_element(rng, pr, 2, true);
      QhmElement b = random_element(rng, pr, 2, true);
      comm.max_deviation = std::max(comm.max_deviation, tracial_defect(a, b, m));
      Complex gram = trace_value(multiply(a, adjoint(a)), m);
      pos.max_deviation = std::max(pos.max_deviation,
                                   std::max(-gram.real(), std::abs(gram.imag())));
    }
  }
  // F1 = |sin pi x| at p = 1: tau(F1 F1*) is the mean of sin^2, i.e. 1/2
  QhmElement f1 = QhmElement::single(pr, 1, abs_of(sinpi(Axis::X)));
  Complex v = trace_value(multiply(f1, adjoint(f1)), HaarMeasure{grid_n});
  half.max_deviation = std::abs(v - Complex{0.5, 0.0});
  rep.checks = {unit_norm, comm, pos, half};
  return rep;
}

std::string report_json(const SuiteReport& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["params"] = r.params;
  j["seed"] = r.seed;
  j["pass"] = r.pass();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"max_deviation", c.max_deviation},
                           {"tolerance", c.tolerance},
                           {"samples", c.samples},
                           {"pass", c.pass()}});
  }
  return j.dump(2);
}

std::string full_report(uint64_t seed) {
  ExactScalar half_sqrt2(Rational(0), Rational(1, 2), 2);
  ExactScalar golden(Rational(-1, 2), Rational(1, 2), 5);
  ExactScalar sqrt5_minus_2(Rational(-2), Rational(1), 5);
  std::vector<Params> sets = {
      Params(1, ExactScalar(Rational(1, 4)), ExactScalar(Rational(1, 6))),
      Params(2, ExactScalar(Rational(1, 3)), ExactScalar(Rational(1, 5))),
      Params(1, half_sqrt2, ExactScalar(Rational(1, 3))),
      Params(3, golden, sqrt5_minus_2),
  };
  std::vector<Params> tracial_sets = {
      Params(1, ExactScalar(), golden),
      Params(1, ExactScalar(Rational(1, 2)), ExactScalar(Rational(1, 3))),
  };
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["reports"] = nlohmann::ordered_json::array();
  auto add = [&](const SuiteReport& r) { j["reports"].push_back(nlohmann::ordered_json::parse(report_json(r))); };
  uint64_t s = seed;
  for (const Params& pr : sets) add(verify_cocycle(pr, ++s, 250));
  add(verify_embedding(sets[0], ++s, 4, 64));
  add(verify_embedding(sets[2], ++s, 4, 64));
  for (const Params& pr : sets) add(verify_partition(pr, ++s, 200));
  for (const Params& pr : sets) add(verify_covariance(pr, ++s, 150));
  for (const Params& pr : tracial_sets) add(verify_tracial(pr, ++s, 4, 256));
  return j.dump(2);
}

}  // namespace qhm
