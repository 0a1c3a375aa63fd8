#include "qhm/traces.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "qhm/hnf.hpp"

namespace qhm {

namespace {

std::string defect_message(double defect) {
  std::ostringstream os;
  os << "measure fails the shift-invariance check (defect " << defect << ")";
  return os.str();
}

}  // namespace

NonInvariantMeasure::NonInvariantMeasure(double defect)
    : std::invalid_argument(defect_message(defect)), defect_(defect) {}

ExprPtr cond_expect(const QhmElement& a) { return a.component(0); }

Complex trace_value(const QhmElement& a, const Measure& m, double invariance_tol) {
  double defect = invariance_defect(m, a.params());
  if (defect > invariance_tol) throw NonInvariantMeasure(defect);
  return integrate(m, cond_expect(a));
}

double tracial_defect(const QhmElement& a, const QhmElement& b, const Measure& m) {
  return std::abs(trace_value(multiply(a, b), m) - trace_value(multiply(b, a), m));
}

StripMass strip_mass(const Measure& m, const Params& pr) {
  StripMass out;
  ExactScalar tm = pr.two_mu();
  out.wrapped = ExactScalar(1) < tm;
  out.width = out.wrapped ? ExactScalar(1) : tm;
  ExprPtr chi = strip(ExactScalar(), out.width);  // zero() when the width is zero

  if (const auto* am = std::get_if<AtomicMeasure>(&m)) {
    Rational mass = 0;
    for (size_t i = 0; i < am->points.size(); ++i) {
      ExactScalar x = am->points[i].x.mod1();
      if (x < out.width) mass += am->weights[i];
    }
    out.exact_mass = ExactScalar(mass);
    out.quadrature = integrate(m, chi);
    return out;
  }

  // Haar or product: the x-marginal is Lebesgue, so the mass is the total
  // length of the fence segments on which the indicator is 1.  Exact scalar
  // arithmetic end to end; the indicator evaluates to exactly 0 or 1.
  std::vector<ExactScalar> fence;
  collect_x_breakpoints(chi, fence);
  fence.push_back(ExactScalar());
  std::sort(fence.begin(), fence.end());
  fence.erase(std::unique(fence.begin(), fence.end()), fence.end());
  fence.push_back(ExactScalar(1));
  ExactScalar mass;
  ExactScalar half(Rational(1, 2));
  for (size_t s = 0; s + 1 < fence.size(); ++s) {
    ExactScalar len = fence[s + 1] - fence[s];
    if (!(ExactScalar() < len)) continue;
    Point mid{fence[s] + len.scaled(Rational(1, 2)), half};
    if (std::abs(eval(chi, mid) - Complex{1.0, 0.0}) < 0.5) mass = mass + len;
  }
  out.exact_mass = mass;
  out.quadrature = integrate_splitx(m, chi);
  return out;
}

TraceRangeGroup span_group(std::vector<ExactScalar> gens) {
  gens.push_back(ExactScalar(1));
  long d = 0;
  for (const auto& g : gens) {
    if (g.is_rational()) continue;
    if (d != 0 && d != g.field()) throw FieldMismatch("span generators mix quadratic fields");
    d = g.field();
  }
  Int D = 1;
  for (const auto& g : gens) {
    D = int_lcm(D, Int(denominator(g.rational_part())));
    if (d != 0) D = int_lcm(D, Int(denominator(g.surd_part())));
  }
  std::vector<std::vector<Int>> rows;
  for (const auto& g : gens) {
    Rational a = g.rational_part() * D;
    if (d == 0) {
      rows.push_back({numerator(a)});
    } else {
      Rational b = g.surd_part() * D;
      rows.push_back({numerator(a), numerator(b)});
    }
  }
  std::vector<std::vector<Int>> h;
  if (d == 0) {
    Int g = 0;
    for (const auto& r : rows) g = gcd(g, r[0]);
    if (g < 0) g = -g;
    h = {{g}};
  } else {
    h = hnf_rows(rows);
  }
  Int g = D;
  for (const auto& r : h)
    for (const auto& e : r) g = gcd(g, e);
  if (g < 0) g = -g;
  if (g > 1) {
    D /= g;
    for (auto& r : h)
      for (auto& e : r) e /= g;
  }
  return TraceRangeGroup{d, D, std::move(h)};
}

TraceRangeGroup trace_range(const Params& pr) {
  return span_group({pr.two_mu(), pr.two_nu()});
}

bool TraceRangeGroup::contains(const ExactScalar& s) const {
  if (!s.is_rational() && s.field() != d) return false;
  Rational ka = s.rational_part() * D;
  if (denominator(ka) != 1) return false;
  if (d == 0) {
    if (!s.is_rational()) return false;
    return numerator(ka) % rows[0][0] == 0;
  }
  Rational kb = s.surd_part() * D;
  if (denominator(kb) != 1) return false;
  const Int& h11 = rows[0][0];
  const Int& h12 = rows[0][1];
  const Int& h22 = rows[1][1];
  Int k1 = numerator(ka), k2 = numerator(kb);
  if (k1 % h11 != 0) return false;
  return (k2 - (k1 / h11) * h12) % h22 == 0;
}

bool group_equal(const TraceRangeGroup& a, const TraceRangeGroup& b) {
  if (a.d != b.d) throw FieldMismatch("trace-range groups carry different field tags");
  auto included = [](const TraceRangeGroup& x, const TraceRangeGroup& y) {
    for (const auto& r : x.rows) {
      ExactScalar v = x.d == 0 ? ExactScalar(Rational(r[0], x.D))
                               : ExactScalar(Rational(r[0], x.D), Rational(r[1], x.D), x.d);
      if (!y.contains(v)) return false;
    }
    return true;
  };
  return included(a, b) && included(b, a);
}

std::optional<ExactScalar> delta_lambda_winding(const Params& pr,
                                                const std::vector<ExactScalar>& breakpoints,
                                                const std::vector<long long>& windings) {
  for (size_t i = 0; i < breakpoints.size(); ++i) {
    const ExactScalar& t = breakpoints[i];
    if (!(ExactScalar() < t) || !(t < ExactScalar(1))) {
      throw std::domain_error("breakpoints must lie in (0,1)");
    }
    if (i > 0 && !(breakpoints[i - 1] < t)) {
      throw std::domain_error("breakpoints must be strictly increasing");
    }
    if (!in_strip_lattice(pr, t)) {
      throw std::domain_error("breakpoint " + to_string(t) + " is not in 2*mu*Z + Z");
    }
  }
  if (windings.size() != breakpoints.size() + 1) {
    throw std::invalid_argument("need one winding per piece (breakpoints + 1)");
  }
  long long n0 = windings.front();
  for (long long n : windings)
    if (n != n0) return std::nullopt;
  return pr.two_nu().scaled(Rational(n0));
}

bool rationally_independent(const Params& pr) {
  // Coordinates of {1, 2mu, 2nu} over {1, sqrt(d)}; three vectors in Q^2, so
  // the rank computed below can never reach 3.
  std::vector<std::array<Rational, 2>> v = {
      {Rational(1), Rational(0)},
      {pr.two_mu().rational_part(), pr.two_mu().surd_part()},
      {pr.two_nu().rational_part(), pr.two_nu().surd_part()}};
  int rank = 0;
  for (int col = 0; col < 2; ++col) {
    for (size_t r = rank; r < v.size(); ++r) {
      if (v[r][col] == 0) continue;
      std::swap(v[rank], v[r]);
      for (size_t k = 0; k < v.size(); ++k) {
        if (static_cast<int>(k) == rank || v[k][col] == 0) continue;
        Rational f = v[k][col] / v[rank][col];
        for (int c = 0; c < 2; ++c) v[k][c] -= f * v[rank][c];
      }
      ++rank;
      break;
    }
  }
  return rank == 3;
}

std::vector<Measure> invariant_measures(const Params& pr, int haar_n) {
  std::vector<Measure> out;
  out.push_back(HaarMeasure{haar_n});
  bool mu_rat = pr.two_mu().is_rational();
  bool nu_rat = pr.two_nu().is_rational();
  if (mu_rat && nu_rat) {
    out.push_back(orbit_measure(pr, Point{ExactScalar(), ExactScalar()}));
    out.push_back(orbit_measure(
        pr, Point{ExactScalar(Rational(1, 3)), ExactScalar(Rational(1, 7))}));
  } else if (nu_rat) {
    long long q = pr.two_nu().rational_part() == 0
                      ? 1
                      : denominator(pr.two_nu().rational_part()).convert_to<long long>();
    out.push_back(ProductMeasure{haar_n, q, ExactScalar()});
    out.push_back(ProductMeasure{haar_n, q, ExactScalar(Rational(1, 7))});
  }
  return out;
}

}  // namespace qhm
