#include "qhm/element.hpp"

#include <algorithm>

namespace qhm {

QhmElement::QhmElement(Params params, std::map<int, ExprPtr> components)
    : params_(std::move(params)), comps_(std::move(components)) {
  for (auto it = comps_.begin(); it != comps_.end();) {
    if (!it->second || is_zero_expr(it->second)) it = comps_.erase(it);
    else ++it;
  }
}

QhmElement QhmElement::single(const Params& params, int p, ExprPtr f) {
  return QhmElement(params, {{p, std::move(f)}});
}

QhmElement QhmElement::unit(const Params& params) { return single(params, 0, one()); }

ExprPtr QhmElement::component(int p) const {
  auto it = comps_.find(p);
  return it == comps_.end() ? zero() : it->second;
}

std::vector<int> QhmElement::support() const {
  std::vector<int> s;
  s.reserve(comps_.size());
  for (const auto& [p, _] : comps_) s.push_back(p);
  return s;
}

int QhmElement::max_abs_support() const {
  int m = 0;
  for (const auto& [p, _] : comps_) m = std::max(m, std::abs(p));
  return m;
}

namespace {

// turns of the extension phase: -c p k (y - p nu)
ExactScalar extension_turns(const Params& pr, int p, const Int& k, const ExactScalar& y_red) {
  ExactScalar base = y_red - pr.nu().scaled(p);
  return base.scaled(Rational(-Int(pr.c()) * p * k));
}

}  // namespace

Complex QhmElement::extended(int p, const Point& m) const {
  ExactScalar y_red = m.y.mod1();
  auto [k, x0] = m.x.split_floor();
  Complex val = eval(component(p), Point{x0, y_red});
  if (k != 0 && p != 0 && val != Complex{0.0, 0.0}) val *= unit_turns(extension_turns(params_, p, k, y_red));
  return val;
}

Complex QhmElement::extended(int p, double x, double y) const {
  y -= std::floor(y);
  double kf = std::floor(x);
  double frac = x - kf;
  long long k;
  if (frac < 1e-9 || frac > 1.0 - 1e-9) {
    k = ExactScalar(rational_from_double(x)).floor().convert_to<long long>();
  } else {
    k = static_cast<long long>(kf);
  }
  Complex val = eval(component(p), x - static_cast<double>(k), y);
  if (k != 0 && p != 0 && val != Complex{0.0, 0.0}) {
    double turns = -static_cast<double>(params_.c()) * p * static_cast<double>(k) * (y - p * params_.nu().to_double());
    turns -= std::floor(turns);
    double ang = 2.0 * std::numbers::pi * turns;
    val *= Complex{std::cos(ang), std::sin(ang)};
  }
  return val;
}

QhmElement QhmElement::operator+(const QhmElement& o) const {
  if (!(params_ == o.params_)) throw std::invalid_argument("parameter mismatch in sum");
  std::map<int, ExprPtr> out = comps_;
  for (const auto& [p, f] : o.comps_) {
    auto it = out.find(p);
    if (it == out.end()) out.emplace(p, f);
    else it->second = sum_of({it->second, f});
  }
  return QhmElement(params_, std::move(out));
}

ExprPtr extension_shifted(const Params& pr, const ExprPtr& f, int idx, const ExactScalar& u, const ExactScalar& v) {
  // phase factor exp(2 pi i * (-c*idx) * floor(x+u) * (y + v - idx*nu))
  ExprPtr phase = floor_phase(ExactScalar(Rational(-pr.c() * Rational(idx))), v - pr.nu().scaled(idx), u);
  ExactScalar fu = u.mod1();
  ExprPtr body;
  if (fu.is_zero()) {
    body = shifted(ExactScalar(), v, f);
  } else {
    ExactScalar split = ExactScalar(1) - fu;  // x >= split wraps one extra step
    body = sum_of({prod_of({strip(ExactScalar(), split), shifted(fu, v, f)}),
                   prod_of({strip(split, ExactScalar(1)), shifted(fu - ExactScalar(1), v, f)})});
  }
  return prod_of({phase, body});
}

QhmElement multiply(const QhmElement& a, const QhmElement& b) {
  if (!(a.params() == b.params())) throw std::invalid_argument("parameter mismatch in product");
  const Params& pr = a.params();
  std::map<int, ExprPtr> out;
  for (const auto& [q, fq] : a.components()) {
    ExactScalar u = pr.mu().scaled(-2 * Rational(q));
    ExactScalar v = pr.nu().scaled(-2 * Rational(q));
    for (const auto& [j, gj] : b.components()) {
      int p = q + j;
      ExprPtr term = prod_of({fq, extension_shifted(pr, gj, j, u, v)});
      auto it = out.find(p);
      if (it == out.end()) out.emplace(p, std::move(term));
      else it->second = sum_of({it->second, std::move(term)});
    }
  }
  return QhmElement(pr, std::move(out));
}

QhmElement adjoint(const QhmElement& a) {
  const Params& pr = a.params();
  std::map<int, ExprPtr> out;
  for (const auto& [q, fq] : a.components()) {
    int p = -q;
    ExactScalar u = pr.mu().scaled(-2 * Rational(p));
    ExactScalar v = pr.nu().scaled(-2 * Rational(p));
    out.emplace(p, conj_of(extension_shifted(pr, fq, q, u, v)));
  }
  return QhmElement(pr, std::move(out));
}

std::pair<ExprPtr, ExprPtr> delta_pair(const Params& pr, int p) {
  ExprPtr d1 = abs_of(sinpi());
  long long cp = static_cast<long long>(pr.c()) * p;
  if (cp == 0) return {d1, abs_of(cospi())};
  Rational half(1, 2);
  ExprPtr plain = prod_of({strip(ExactScalar(), ExactScalar(half)), abs_of(cospi())});
  ExprPtr phased = prod_of({strip(ExactScalar(half), ExactScalar(1)), abs_of(cospi()),
                            harmonic(0, Rational(-cp), 0), phase_turns(pr.nu().scaled(Rational(cp) * p))});
  return {d1, sum_of({plain, phased})};
}

DeltaDecomposition decompose_delta(const QhmElement& e, int p) {
  auto supp = e.support();
  if (supp.size() != 1 || supp[0] != p) throw std::invalid_argument("expected a single component at the given index");
  const Params& pr = e.params();
  auto [d1, d2] = delta_pair(pr, p);
  ExprPtr f = e.component(p);
  return DeltaDecomposition{
      QhmElement::single(pr, 0, prod_of({f, conj_of(d1)})),
      QhmElement::single(pr, p, d1),
      QhmElement::single(pr, 0, prod_of({f, conj_of(d2)})),
      QhmElement::single(pr, p, d2),
  };
}

double covariance_defect(const QhmElement& a, const std::vector<Point>& probes, int k_range) {
  const Params& pr = a.params();
  double worst = 0.0;
  for (const Point& m : probes) {
    ExactScalar y_red = m.y.mod1();
    for (int p : a.support()) {
      Complex ref = a.extended(p, m);
      for (long long k = -k_range; k <= k_range; ++k) {
        if (k == 0) continue;
        // u(p,k) = exp(2 pi i c k p (y - p nu))
        ExactScalar turns = (y_red - pr.nu().scaled(p)).scaled(Rational(Int(pr.c()) * k * p));
        Complex lhs = unit_turns(turns) * a.extended(p, sigma_shift(-k, m));
        worst = std::max(worst, std::abs(lhs - ref));
      }
    }
  }
  return worst;
}

double seam_gap(const QhmElement& a, int p, int y_samples) {
  const Params& pr = a.params();
  constexpr double h = 1e-7;
  double worst = 0.0;
  for (int j = 0; j < y_samples; ++j) {
    double y = (j + 0.5) / y_samples;
    Complex left = eval(a.component(p), 1.0 - h, y);
    double turns = -static_cast<double>(pr.c()) * p * (y - p * pr.nu().to_double());
    turns -= std::floor(turns);
    double ang = 2.0 * std::numbers::pi * turns;
    Complex right = Complex{std::cos(ang), std::sin(ang)} * eval(a.component(p), 0.0, y);
    worst = std::max(worst, std::abs(left - right));
  }
  return worst;
}

}  // namespace qhm
