#include "qhm/measures.hpp"

#include <algorithm>
#include <map>

namespace qhm {

namespace {

Complex integrate_haar(int n, const ExprPtr& f) {
  Complex acc{0.0, 0.0};
  for (int i = 0; i < n; ++i) {
    double x = (i + 0.5) / n;
    for (int j = 0; j < n; ++j) acc += eval(f, x, (j + 0.5) / n);
  }
  return acc / static_cast<double>(static_cast<long long>(n) * n);
}

Complex integrate_atomic(const AtomicMeasure& m, const ExprPtr& f) {
  Complex acc{0.0, 0.0};
  for (size_t i = 0; i < m.points.size(); ++i) acc += to_double(m.weights[i]) * eval(f, m.points[i]);
  return acc;
}

Complex integrate_product(const ProductMeasure& m, const ExprPtr& f) {
  Complex acc{0.0, 0.0};
  Rational qinv(1, m.q);
  for (long long j = 0; j < m.q; ++j) {
    ExactScalar y = (m.y0 + ExactScalar(Rational(j) * qinv)).mod1();
    double yd = y.to_double();
    for (int i = 0; i < m.n; ++i) acc += eval(f, (i + 0.5) / m.n, yd);
  }
  return acc / static_cast<double>(m.n * m.q);
}

// sorted unique breakpoints of f in [0,1), with 0 and 1 as fence posts
std::vector<ExactScalar> x_segments(const ExprPtr& f) {
  std::vector<ExactScalar> bps;
  collect_x_breakpoints(f, bps);
  bps.push_back(ExactScalar());
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  bps.push_back(ExactScalar(1));
  return bps;
}

Complex integrate_splitx_haar(int n_y, const ExprPtr& f, const std::vector<ExactScalar>& fence) {
  constexpr int kXPerSegment = 8;
  Complex acc{0.0, 0.0};
  for (size_t s = 0; s + 1 < fence.size(); ++s) {
    const ExactScalar &lo = fence[s], &hi = fence[s + 1];
    ExactScalar len = hi - lo;
    if (!(ExactScalar() < len)) continue;
    double lend = len.to_double();
    Complex seg{0.0, 0.0};
    for (int t = 0; t < kXPerSegment; ++t) {
      ExactScalar x = lo + len.scaled(Rational(2 * t + 1, 2 * kXPerSegment));
      for (int j = 0; j < n_y; ++j) {
        seg += eval(f, Point{x, ExactScalar(Rational(2 * j + 1, 2 * n_y))});
      }
    }
    acc += seg * (lend / (kXPerSegment * n_y));
  }
  return acc;
}

}  // namespace

Complex integrate(const Measure& m, const ExprPtr& f) {
  return std::visit(
      [&](const auto& mm) -> Complex {
        using T = std::decay_t<decltype(mm)>;
        if constexpr (std::is_same_v<T, HaarMeasure>) return integrate_haar(mm.n, f);
        else if constexpr (std::is_same_v<T, AtomicMeasure>) return integrate_atomic(mm, f);
        else return integrate_product(mm, f);
      },
      m);
}

Complex integrate_splitx(const Measure& m, const ExprPtr& f) {
  auto fence = x_segments(f);
  return std::visit(
      [&](const auto& mm) -> Complex {
        using T = std::decay_t<decltype(mm)>;
        if constexpr (std::is_same_v<T, HaarMeasure>) {
          return integrate_splitx_haar(std::min(mm.n, 64), f, fence);
        } else if constexpr (std::is_same_v<T, AtomicMeasure>) {
          return integrate_atomic(mm, f);
        } else {
          // x-splitting with the measure's y atoms
          constexpr int kXPerSegment = 8;
          Complex acc{0.0, 0.0};
          Rational qinv(1, mm.q);
          for (size_t s = 0; s + 1 < fence.size(); ++s) {
            ExactScalar len = fence[s + 1] - fence[s];
            if (!(ExactScalar() < len)) continue;
            Complex seg{0.0, 0.0};
            for (int t = 0; t < kXPerSegment; ++t) {
              ExactScalar x = fence[s] + len.scaled(Rational(2 * t + 1, 2 * kXPerSegment));
              for (long long j = 0; j < mm.q; ++j) {
                ExactScalar y = (mm.y0 + ExactScalar(Rational(j) * qinv)).mod1();
                seg += eval(f, Point{x, y});
              }
            }
            acc += seg * (len.to_double() / (kXPerSegment * mm.q));
          }
          return acc;
        }
      },
      m);
}

namespace {

bool atoms_closed_under_shift(const AtomicMeasure& m, const Params& pr) {
  // multiset of (point, weight) must be permuted by lambda_1
  using Key = std::pair<std::pair<std::string, std::string>, std::string>;
  auto key = [](const Point& p, const Rational& w) {
    return Key{{to_string(p.x.mod1()), to_string(p.y.mod1())}, to_string(ExactScalar(w))};
  };
  std::map<Key, int> count;
  for (size_t i = 0; i < m.points.size(); ++i) ++count[key(m.points[i], m.weights[i])];
  for (size_t i = 0; i < m.points.size(); ++i) {
    Point shifted = reduce_torus(lambda_shift(pr, 1, m.points[i]));
    auto it = count.find(key(shifted, m.weights[i]));
    if (it == count.end() || it->second == 0) return false;
    --it->second;
  }
  return true;
}

double battery_defect(const Measure& m, const Params& pr) {
  double worst = 0.0;
  for (int a = -2; a <= 2; ++a) {
    for (int b = -2; b <= 2; ++b) {
      if (a == 0 && b == 0) continue;
      ExprPtr f = harmonic(a, b, 0);
      // f(lambda_1 m) = e(a*2mu + b*2nu) * f(m)
      ExprPtr fshift = prod_of({phase_turns(pr.two_mu().scaled(a) + pr.two_nu().scaled(b)), f});
      worst = std::max(worst, std::abs(integrate(m, fshift) - integrate(m, f)));
    }
  }
  return worst;
}

}  // namespace

double invariance_defect(const Measure& m, const Params& pr) {
  if (std::holds_alternative<HaarMeasure>(m)) return 0.0;
  if (const auto* am = std::get_if<AtomicMeasure>(&m)) {
    Rational total = 0;
    for (const auto& w : am->weights) total += w;
    if (am->weights.size() != am->points.size() || total != 1) {
      throw std::invalid_argument("atomic measure weights must pair with points and sum to 1");
    }
    if (atoms_closed_under_shift(*am, pr)) return 0.0;
    return battery_defect(m, pr);
  }
  const auto& pm = std::get<ProductMeasure>(m);
  if (pm.q < 1) throw std::invalid_argument("product measure needs q >= 1");
  // y atoms closed iff 2*nu is a multiple of 1/q
  ExactScalar step = pr.two_nu().scaled(Rational(pm.q));
  if (step.is_integer()) return 0.0;
  return battery_defect(m, pr);
}

AtomicMeasure orbit_measure(const Params& pr, const Point& seed) {
  ExactScalar tm = pr.two_mu(), tn = pr.two_nu();
  if (!tm.is_rational() || !tn.is_rational()) {
    throw std::domain_error("closed orbits need rational 2*mu and 2*nu");
  }
  Int l = int_lcm(denominator(tm.rational_part()), denominator(tn.rational_part()));
  long long len = l == 0 ? 1 : l.convert_to<long long>();
  AtomicMeasure m;
  Rational w(1, len);
  Point cur = reduce_torus(seed);
  for (long long k = 0; k < len; ++k) {
    m.points.push_back(cur);
    m.weights.push_back(w);
    cur = reduce_torus(lambda_shift(pr, 1, cur));
  }
  return m;
}

}  // namespace qhm
