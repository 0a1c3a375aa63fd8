// Acceptance suite: one line per criterion, exit 0 only if all pass.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#include "qhm/classify.hpp"
#include "qhm/repr_norm.hpp"
#include "qhm/traces.hpp"
#include "qhm/verify.hpp"

using namespace qhm;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void line(int n, bool ok, const std::string& what) {
  if (!ok) ++g_failures;
  std::printf("criterion %2d: %s  %s\n", n, ok ? "PASS" : "FAIL", what.c_str());
  std::fflush(stdout);
}

std::vector<Params> reference_sets() {
  return {
      Params(1, ExactScalar(Rational(1, 4)), ExactScalar(Rational(1, 6))),
      Params(2, ExactScalar(Rational(1, 3)), ExactScalar(Rational(1, 5))),
      Params(1, ExactScalar::surd(Rational(1, 2), 2), ExactScalar(Rational(1, 3))),
      Params(3, ExactScalar(Rational(-1, 2), Rational(1, 2), 5),
             ExactScalar(Rational(-2), Rational(1), 5)),
  };
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

// ---- independent oracles (no calls into the canonicalization under test) ----

Rational rat_gcd(const std::vector<Rational>& vs) {
  Int lcm_den = 1;
  for (const Rational& v : vs) lcm_den = boost::multiprecision::lcm(lcm_den, Int(denominator(v)));
  Int g = 0;
  for (const Rational& v : vs) {
    Rational lifted = v * Rational(lcm_den);
    g = boost::multiprecision::gcd(g, Int(numerator(lifted)));
  }
  return Rational(g, lcm_den);
}

// Hermite form of a list of integer 2-vectors by plain Euclid elimination.
std::vector<std::vector<Int>> euclid_hnf(std::vector<std::array<Int, 2>> rows) {
  rows.erase(std::remove_if(rows.begin(), rows.end(),
                            [](const std::array<Int, 2>& r) { return r[0] == 0 && r[1] == 0; }),
             rows.end());
  if (rows.empty()) return {};
  // knock the first column down to a single pivot
  while (true) {
    int i = -1, j = -1;
    for (size_t k = 0; k < rows.size(); ++k) {
      if (rows[k][0] == 0) continue;
      if (i < 0) {
        i = static_cast<int>(k);
      } else {
        j = static_cast<int>(k);
        break;
      }
    }
    if (j < 0) break;
    if (boost::multiprecision::abs(rows[i][0]) < boost::multiprecision::abs(rows[j][0]))
      std::swap(i, j);
    Int f = rows[i][0] / rows[j][0];
    rows[i][0] -= f * rows[j][0];
    rows[i][1] -= f * rows[j][1];
  }
  std::array<Int, 2> pivot{0, 0};
  Int tail = 0;  // gcd of the second column below the pivot
  for (auto& r : rows) {
    if (r[0] != 0) {
      pivot = r;
    } else {
      tail = boost::multiprecision::gcd(tail, boost::multiprecision::abs(r[1]));
    }
  }
  if (pivot[0] == 0) return tail == 0 ? std::vector<std::vector<Int>>{}
                                      : std::vector<std::vector<Int>>{{Int(0), tail}};
  if (pivot[0] < 0) {
    pivot[0] = -pivot[0];
    pivot[1] = -pivot[1];
  }
  if (tail == 0) return {{pivot[0], pivot[1]}};
  Int h12 = ((pivot[1] % tail) + tail) % tail;
  return {{pivot[0], h12}, {Int(0), tail}};
}

TraceRangeGroup oracle_range(const Params& pr) {
  std::vector<ExactScalar> gens = {ExactScalar(Rational(1)), pr.mu().scaled(Rational(2)),
                                   pr.nu().scaled(Rational(2))};
  long d = 0;
  for (const ExactScalar& g : gens) d = std::max(d, g.field());
  if (d == 0) {
    std::vector<Rational> vs;
    for (const ExactScalar& g : gens) vs.push_back(g.rational_part());
    Rational g = rat_gcd(vs);
    return TraceRangeGroup{0, Int(denominator(g)), {{Int(numerator(g))}}};
  }
  Int D = 1;
  for (const ExactScalar& g : gens) {
    D = boost::multiprecision::lcm(D, Int(denominator(g.rational_part())));
    D = boost::multiprecision::lcm(D, Int(denominator(g.surd_part())));
  }
  std::vector<std::array<Int, 2>> vec;
  for (const ExactScalar& g : gens) {
    vec.push_back({Int(numerator(g.rational_part() * Rational(D))),
                   Int(numerator(g.surd_part() * Rational(D)))});
  }
  std::vector<std::vector<Int>> rows = euclid_hnf(vec);
  Int g0 = D;
  for (const auto& r : rows)
    for (const Int& e : r) g0 = boost::multiprecision::gcd(g0, boost::multiprecision::abs(e));
  for (auto& r : rows)
    for (Int& e : r) e /= g0;
  return TraceRangeGroup{d, D / g0, rows};
}

// gcd-content classification of GL2(Z) orbits on (Z/q)^2
long long content(long long a, long long b, long long q) {
  long long g = std::gcd(std::gcd(((a % q) + q) % q, ((b % q) + q) % q), q);
  return g == 0 ? q : g;
}

std::string random_word(Rng& rng, int max_len) {
  static const char letters[] = {'S', 'T', 'R'};
  int len = static_cast<int>(rng.range(1, max_len));
  std::string w;
  for (int i = 0; i < len; ++i) w.push_back(letters[rng.range(0, 2)]);
  return w;
}

std::vector<Point> lattice_grid(int n) {
  std::vector<Point> g;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g.push_back(Point{ExactScalar(Rational(i, n)), ExactScalar(Rational(j, n))});
  return g;
}

// ---- criteria ----

void criterion_1() {
  auto t0 = Clock::now();
  bool ok = true;
  double worst = 0.0;
  for (const Params& pr : reference_sets()) {
    SuiteReport r = verify_cocycle(pr, 101, 1000);
    ok = ok && r.pass() && r.checks.size() == 5;
    for (const auto& c : r.checks) ok = ok && c.samples >= 1000 && c.tolerance <= 1e-10;
    worst = std::max(worst, r.worst());
  }
  double dt = seconds_since(t0);
  ok = ok && dt < 10.0;
  line(1, ok, fmt("cocycle identities, 4 parameter sets (worst %.2e, %.1fs)", worst, dt));
}

void criterion_2() {
  auto t0 = Clock::now();
  bool ok = true;
  double worst = 0.0;
  for (const Params& pr : {reference_sets()[0], reference_sets()[3]}) {
    SuiteReport r = verify_embedding(pr, 202, 10, 256);  // 10 pairs each, 20 total
    ok = ok && r.pass();
    for (const auto& c : r.checks) {
      if (c.name == "sigma-invariance") ok = ok && c.tolerance <= 1e-12;
      if (c.name == "product-hom" || c.name == "adjoint-hom") ok = ok && c.tolerance <= 1e-9;
    }
    worst = std::max(worst, r.worst());
  }
  double dt = seconds_since(t0);
  ok = ok && dt < 60.0;
  line(2, ok, fmt("embedding homomorphism, 20 pairs x 256 samples (worst %.2e, %.1fs)", worst, dt));
}

void criterion_3() {
  bool ok = true;
  double worst = 0.0;
  for (const Params& pr : reference_sets()) {
    SuiteReport r = verify_partition(pr, 303, 250);
    ok = ok && r.pass();
    for (const auto& c : r.checks) {
      if (c.name == "partition-of-unity") ok = ok && c.tolerance <= 1e-12 && c.pass();
      if (c.name == "reconstruction") ok = ok && c.tolerance <= 1e-10 && c.pass();
    }
    worst = std::max(worst, r.worst());
  }
  line(3, ok, fmt("partition of unity and reconstruction, p in {-2..2} (worst %.2e)", worst));
}

void criterion_4() {
  auto t0 = Clock::now();
  bool ok = true;
  double worst = 0.0;
  std::vector<Params> sets = {
      Params(1, ExactScalar(Rational(1, 2)), ExactScalar(Rational(1, 3))),
      reference_sets()[0],
  };
  for (const Params& pr : sets) {
    SuiteReport r = verify_tracial(pr, 404, 4, 512);
    ok = ok && r.pass();
    worst = std::max(worst, r.worst());

    Measure haar = HaarMeasure{512};
    Complex unit_trace = trace_value(QhmElement::unit(pr), haar);
    ok = ok && unit_trace == Complex(1.0, 0.0);  // exact

    QhmElement f1 = QhmElement::single(pr, 1, abs_of(sinpi()));
    Complex mass = trace_value(multiply(f1, adjoint(f1)), haar);
    ok = ok && std::abs(mass - Complex(0.5, 0.0)) <= 1e-9;
  }
  line(4, ok, fmt("traciality at N=512, exact unit trace, sin^2 mass 1/2 (worst %.2e, %.1fs)",
                  worst, seconds_since(t0)));
}

void criterion_5() {
  bool ok = true;
  double worst_quad = 0.0;
  for (const Rational& two_mu : {Rational(1, 3), Rational(2, 5), Rational(1, 2)}) {
    Params pr(1, ExactScalar(two_mu / 2), ExactScalar(Rational(1, 6)));
    ExactScalar width(two_mu);

    StripMass haar = strip_mass(Measure(HaarMeasure{512}), pr);
    ok = ok && !haar.wrapped && haar.exact_mass.has_value() && *haar.exact_mass == width;
    worst_quad = std::max(worst_quad, std::abs(haar.quadrature - Complex(two_mu.convert_to<double>(), 0.0)));

    AtomicMeasure atoms = orbit_measure(pr, Point{ExactScalar(Rational(1, 30)), ExactScalar(Rational(1, 30))});
    ok = ok && invariance_defect(Measure(atoms), pr) == 0.0;
    StripMass discrete = strip_mass(Measure(atoms), pr);
    ok = ok && discrete.exact_mass.has_value() && *discrete.exact_mass == width;
    worst_quad = std::max(worst_quad,
                          std::abs(discrete.quadrature - Complex(two_mu.convert_to<double>(), 0.0)));
  }
  ok = ok && worst_quad <= 1e-9;
  line(5, ok, fmt("strip mass equals 2mu exactly, Haar and atomic (quadrature gap %.2e)", worst_quad));
}

void criterion_6() {
  bool ok = true;
  Rng rng(606);
  // rational parameters against a plain gcd-of-rationals oracle
  for (int t = 0; t < 100; ++t) {
    long long dm = rng.range(1, 40), dn = rng.range(1, 40);
    Params pr(static_cast<int>(rng.range(1, 3)),
              ExactScalar(Rational(rng.range(0, dm - 1), dm)),
              ExactScalar(Rational(rng.range(0, dn - 1), dn)));
    ok = ok && trace_range(pr) == oracle_range(pr);
  }
  // quadratic-field parameters against an independent Euclid HNF oracle
  for (long d : {2L, 5L}) {
    for (int t = 0; t < 50; ++t) {
      ExactScalar mu = ExactScalar(rng.rational(8, 2), rng.rational(8, 2), d);
      if (mu.is_rational()) mu = ExactScalar(mu.rational_part(), Rational(1, 3), d);
      ExactScalar nu(rng.rational(8, 2), rng.rational(8, 2), d);
      Params pr(1, mu.mod1(), nu.mod1());
      ok = ok && trace_range(pr) == oracle_range(pr);
    }
  }
  // mod-1 shifts of the parameters leave the canonical group alone
  for (int t = 0; t < 40; ++t) {
    ExactScalar mu(rng.rational(12, 3), rng.rational(12, 3), 2);
    ExactScalar nu(rng.rational(12, 3), rng.rational(12, 3), 2);
    ExactScalar one(Rational(1));
    Rational k(rng.range(-3, 3)), l(rng.range(-3, 3));
    TraceRangeGroup plain = span_group({one, mu.scaled(Rational(2)), nu.scaled(Rational(2))});
    TraceRangeGroup shifted = span_group({one, (mu + ExactScalar(k)).scaled(Rational(2)),
                                          (nu + ExactScalar(l)).scaled(Rational(2))});
    ok = ok && plain == shifted;
  }
  line(6, ok, "trace-range canonicalization vs gcd and HNF oracles, shift-invariant (exact)");
}

void criterion_7() {
  auto t0 = Clock::now();
  bool ok = true;
  Rng rng(707);
  // GL2(Z) words act by isomorphisms on irrational parameter pairs
  std::vector<Params> bases = {
      reference_sets()[2],
      reference_sets()[3],
      Params(1, ExactScalar(Rational(1, 4), Rational(1, 3), 2), ExactScalar(Rational(5, 7))),
      Params(2, ExactScalar(Rational(2, 7)), ExactScalar(Rational(1, 2), Rational(1, 5), 5)),
  };
  for (int t = 0; t < 200; ++t) {
    const Params& base = bases[static_cast<size_t>(rng.range(0, 3))];
    Mat2 g = word_to_mat(random_word(rng, 12));
    auto [mu2, nu2] = apply_gl2z(g, base.mu(), base.nu());
    IsoVerdict v = decide_isomorphism(base, Params(base.c(), mu2, nu2));
    ok = ok && v.kind == IsoKind::Isomorphic;
  }
  // all-rational case: verdicts match the gcd-content classification on every
  // pair of denominator-q points, exhaustively
  for (long long q = 2; q <= 12; ++q) {
    for (long long a = 0; a < q && ok; ++a)
      for (long long b = 0; b < q && ok; ++b)
        for (long long a2 = 0; a2 < q && ok; ++a2)
          for (long long b2 = 0; b2 < q && ok; ++b2) {
            Params p1(1, ExactScalar(Rational(a, q)), ExactScalar(Rational(b, q)));
            Params p2(1, ExactScalar(Rational(a2, q)), ExactScalar(Rational(b2, q)));
            IsoVerdict v = decide_isomorphism(p1, p2);
            bool same = content(a, b, q) == content(a2, b2, q);
            ok = ok && v.kind == IsoKind::RationalCaseOrbitOnly && v.orbit_equal == same;
          }
  }
  // distinct torsion coefficient is an immediate obstruction
  IsoVerdict torsion = decide_isomorphism(reference_sets()[2],
                                          Params(2, reference_sets()[2].mu(), reference_sets()[2].nu()));
  ok = ok && torsion.kind == IsoKind::NotIsomorphic;
  ok = ok && decide_isomorphism(reference_sets()[0], reference_sets()[1]).kind == IsoKind::NotIsomorphic;
  line(7, ok, fmt("classification: 200 GL2(Z) words, exhaustive rational orbits q<=12, c-torsion (%.1fs)",
                  seconds_since(t0)));
}

void criterion_8() {
  bool ok = true;
  // windings all equal n0 fix the value 2*n0*nu, not reduced mod 1
  Params pr(1, ExactScalar(Rational(1, 6)), ExactScalar(Rational(1, 6)));
  std::vector<ExactScalar> bps = {ExactScalar(Rational(1, 3)), ExactScalar(Rational(2, 3))};
  auto fixed = delta_lambda_winding(pr, bps, {3, 3, 3});
  ok = ok && fixed.has_value() && *fixed == ExactScalar(Rational(1));

  auto mixed = delta_lambda_winding(pr, bps, {3, 2, 3});
  ok = ok && !mixed.has_value();

  auto whole = delta_lambda_winding(pr, {}, {2});
  ok = ok && whole.has_value() && *whole == ExactScalar(Rational(2, 3));

  // quadratic-field lattice breakpoints: 2 - sqrt(2) = -1*(2mu) + 2
  Params sq(1, ExactScalar::surd(Rational(1, 2), 2), ExactScalar(Rational(1, 3)));
  auto surd = delta_lambda_winding(sq, {ExactScalar(Rational(2), Rational(-1), 2)}, {1, 1});
  ok = ok && surd.has_value() && *surd == ExactScalar(Rational(2, 3));
  line(8, ok, "winding invariant fixes 2*n0*nu exactly iff windings agree");
}

void criterion_9() {
  auto t0 = Clock::now();
  bool ok = true;
  Params pr = reference_sets()[0];
  Rng rng(909);
  std::vector<TruncationSpec> specs = {{lattice_grid(2), 3}, {lattice_grid(4), 4}, {lattice_grid(8), 5}};
  double worst_adj = 0.0;
  for (int t = 0; t < 10; ++t) {
    QhmElement a = random_element(rng, pr, 3, false);
    std::vector<double> b = norm_lower_bound(a, specs);
    ok = ok && b.size() == 3 && b[0] <= b[1] && b[1] <= b[2];
    std::vector<double> badj = norm_lower_bound(adjoint(a), specs);
    for (size_t i = 0; i < b.size(); ++i) worst_adj = std::max(worst_adj, std::abs(b[i] - badj[i]));
  }
  ok = ok && worst_adj < 1e-9;
  std::vector<double> unit = norm_lower_bound(QhmElement::unit(pr), {{lattice_grid(4), 1}});
  ok = ok && unit.size() == 1 && unit[0] == 1.0;  // exact
  line(9, ok, fmt("norm bounds monotone, unit bound exactly 1, adjoint gap %.2e (%.1fs)",
                  worst_adj, seconds_since(t0)));
}

void criterion_10() {
  auto t0 = Clock::now();
  std::string first = full_report(902);
  std::string second = full_report(902);
  bool ok = first == second && !first.empty();
  ok = ok && full_report(903) != first;
  line(10, ok, fmt("full verification report byte-identical for equal seeds (%.1fs)",
                   seconds_since(t0)));
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", g_failures);
  return 1;
}
