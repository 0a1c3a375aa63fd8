#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qhm/crossed.hpp"
#include "qhm/element.hpp"
#include "qhm/measures.hpp"

namespace qhm {

// splitmix64: tiny counter-based generator, fully deterministic across
// platforms, so identical seeds give byte-identical reports.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}
  uint64_t next();
  double unit();                                // [0, 1)
  long long range(long long lo, long long hi);  // inclusive bounds
  Rational rational(long long max_den, long long max_num);  // |v| <= max_num

 private:
  uint64_t state_;
};

// Random trigonometric polynomial with integer frequencies |q|,|r| <= 3 and
// small rational coefficients; with trig_only false an |sin pi x| / cos pi x
// factor may be attached (those break the bandwidth guarantee quadrature
// relies on, so averaging checks pass trig_only = true).
ExprPtr random_component(Rng& rng, bool trig_only);
QhmElement random_element(Rng& rng, const Params& pr, int max_p, bool trig_only);

// Exact sample points: x in [-3, 4) for extension checks, [0,1) otherwise.
Point random_point(Rng& rng, bool wide_x);

struct CheckResult {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  long long samples = 0;
  bool pass() const { return max_deviation <= tolerance; }
};

struct SuiteReport {
  std::string suite;
  std::string params;
  uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool pass() const;
  double worst() const;  // max deviation over checks
};

// Cocycle laws in both variables plus the three lambda-cocycle identities.
SuiteReport verify_cocycle(const Params& pr, uint64_t seed, int samples);

// Homomorphism identities of the embedding, sigma-invariance of the embedded
// components, and the strip-lattice grammar of the images.
SuiteReport verify_embedding(const Params& pr, uint64_t seed, int pairs, int samples);

// Partition of unity and two-term reconstruction for p in {-2..2}.
SuiteReport verify_partition(const Params& pr, uint64_t seed, int samples);

// Covariance of extended evaluation under (sigma, u).
SuiteReport verify_covariance(const Params& pr, uint64_t seed, int samples);

// Normalization, commutation under the trace, and positivity, for every
// measure in the registry.  The Haar quadrature claim needs 2*mu integral
// (else the convolution integrand is only piecewise smooth and the midpoint
// rule stalls near 1e-3); callers get honest deviations either way.
SuiteReport verify_tracial(const Params& pr, uint64_t seed, int pairs, int grid_n);

std::string report_json(const SuiteReport& r);

// Every suite at fixed reference parameters, one JSON document; runs are
// byte-identical for equal seeds.
std::string full_report(uint64_t seed);

}  // namespace qhm
