#include "qhm/crossed.hpp"

#include <algorithm>

namespace qhm {

CrossedElement::CrossedElement(Params params, std::map<int, ExprPtr> components)
    : params_(std::move(params)), comps_(std::move(components)) {
  for (auto it = comps_.begin(); it != comps_.end();) {
    if (!it->second || is_zero_expr(it->second)) it = comps_.erase(it);
    else ++it;
  }
}

CrossedElement CrossedElement::single(const Params& params, int p, ExprPtr f) {
  return CrossedElement(params, {{p, std::move(f)}});
}

CrossedElement CrossedElement::unit(const Params& params) { return single(params, 0, one()); }

ExprPtr CrossedElement::component(int p) const {
  auto it = comps_.find(p);
  return it == comps_.end() ? zero() : it->second;
}

std::vector<int> CrossedElement::support() const {
  std::vector<int> s;
  s.reserve(comps_.size());
  for (const auto& [p, _] : comps_) s.push_back(p);
  return s;
}

int CrossedElement::max_abs_support() const {
  int m = 0;
  for (const auto& [p, _] : comps_) m = std::max(m, std::abs(p));
  return m;
}

Complex CrossedElement::value(int p, const Point& m) const {
  return eval(component(p), reduce_torus(m));
}

Complex CrossedElement::value(int p, double x, double y) const {
  return eval(component(p), x - std::floor(x), y - std::floor(y));
}

ExactScalar cocycle_u_turns(const Params& pr, int p, long long k, const ExactScalar& y) {
  return (y - pr.nu().scaled(p)).scaled(Rational(Int(pr.c()) * k * p));
}

Complex cocycle_u(const Params& pr, int p, long long k, const ExactScalar& y) {
  return unit_turns(cocycle_u_turns(pr, p, k, y));
}

namespace {

// turns of H_1 at m: c * floor(x) * (y - nu)
ExactScalar h1_turns(const Params& pr, const Point& m) {
  Int k = m.x.floor();
  if (k == 0) return ExactScalar();
  return (m.y - pr.nu()).scaled(Rational(Int(pr.c()) * k));
}

}  // namespace

ExactScalar cocycle_h_turns(const Params& pr, int p, const Point& m) {
  ExactScalar turns;
  if (p > 0) {
    for (int q = 0; q < p; ++q) turns += h1_turns(pr, lambda_shift(pr, -q, m));
  } else {
    for (int q = p; q < 0; ++q) turns -= h1_turns(pr, lambda_shift(pr, -q, m));
  }
  return turns;
}

Complex cocycle_h(const Params& pr, int p, const Point& m) { return unit_turns(cocycle_h_turns(pr, p, m)); }

CrossedElement embed(const QhmElement& a) {
  const Params& pr = a.params();
  std::map<int, ExprPtr> out;
  for (const auto& [p, f] : a.components()) {
    std::vector<ExprPtr> factors;
    if (p > 0) {
      for (int q = 0; q < p; ++q)
        factors.push_back(floor_phase(ExactScalar(Rational(pr.c())),
                                      pr.nu().scaled(-(2 * Rational(q) + 1)), pr.mu().scaled(-2 * Rational(q))));
    } else if (p < 0) {
      for (int q = p; q < 0; ++q)
        factors.push_back(conj_of(floor_phase(ExactScalar(Rational(pr.c())),
                                              pr.nu().scaled(-(2 * Rational(q) + 1)), pr.mu().scaled(-2 * Rational(q)))));
    }
    factors.push_back(f);
    out.emplace(p, prod_of(std::move(factors)));
  }
  return CrossedElement(pr, std::move(out));
}

ExprPtr torus_shifted(const ExprPtr& f, const ExactScalar& u, const ExactScalar& v) {
  ExactScalar fu = u.mod1();
  ExactScalar fv = v.mod1();
  if (fu.is_zero()) return shifted(ExactScalar(), fv, f);
  ExactScalar split = ExactScalar(1) - fu;
  return sum_of({prod_of({strip(ExactScalar(), split), shifted(fu, fv, f)}),
                 prod_of({strip(split, ExactScalar(1)), shifted(fu - ExactScalar(1), fv, f)})});
}

CrossedElement cp_multiply(const CrossedElement& a, const CrossedElement& b) {
  if (!(a.params() == b.params())) throw std::invalid_argument("parameter mismatch in product");
  const Params& pr = a.params();
  std::map<int, ExprPtr> out;
  for (const auto& [q, fq] : a.components()) {
    ExactScalar u = pr.mu().scaled(-2 * Rational(q));
    ExactScalar v = pr.nu().scaled(-2 * Rational(q));
    for (const auto& [j, gj] : b.components()) {
      int p = q + j;
      ExprPtr term = prod_of({fq, torus_shifted(gj, u, v)});
      auto it = out.find(p);
      if (it == out.end()) out.emplace(p, std::move(term));
      else it->second = sum_of({it->second, std::move(term)});
    }
  }
  return CrossedElement(pr, std::move(out));
}

CrossedElement cp_adjoint(const CrossedElement& a) {
  const Params& pr = a.params();
  std::map<int, ExprPtr> out;
  for (const auto& [q, fq] : a.components()) {
    int p = -q;
    ExactScalar u = pr.mu().scaled(-2 * Rational(p));
    ExactScalar v = pr.nu().scaled(-2 * Rational(p));
    out.emplace(p, conj_of(torus_shifted(fq, u, v)));
  }
  return CrossedElement(pr, std::move(out));
}

std::vector<ExactScalar> strip_lattice_violations(const CrossedElement& a) {
  std::vector<ExactScalar> bad;
  for (const auto& [p, f] : a.components()) {
    std::vector<ExactScalar> bps;
    collect_x_breakpoints(f, bps);
    for (const auto& b : bps) {
      if (!in_strip_lattice(a.params(), b)) bad.push_back(b);
    }
  }
  return bad;
}

}  // namespace qhm
