#include "qhm/expr.hpp"

#include <cmath>
#include <numbers>

namespace qhm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGuard = 1e-9;  // numeric-path distance below which branch decisions go exact

ExprPtr make(Expr::Kind k, decltype(Expr::payload) payload) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->payload = std::move(payload);
  return e;
}

Complex unit_d(double turns) {
  turns -= std::floor(turns);
  double ang = kTwoPi * turns;
  return {std::cos(ang), std::sin(ang)};
}

bool is_const_one(const ExprPtr& e) {
  return e->kind == Expr::Kind::Const && std::get<Expr::ConstP>(e->payload).v == 1;
}

}  // namespace

Complex unit_turns(const ExactScalar& turns) {
  double r = turns.mod1().to_double();
  double ang = kTwoPi * r;
  return {std::cos(ang), std::sin(ang)};
}

ExprPtr lit(Rational v) {
  double vd = to_double(v);
  return make(Expr::Kind::Const, Expr::ConstP{std::move(v), vd});
}
ExprPtr lit(long long v) { return lit(Rational(v)); }
ExprPtr zero() { return lit(0); }
ExprPtr one() { return lit(1); }

ExprPtr phase_turns(ExactScalar turns) {
  if (turns.is_integer()) return one();
  Complex val = unit_turns(turns);
  return make(Expr::Kind::Phase, Expr::PhaseP{std::move(turns), val});
}

ExprPtr coord(Axis axis) { return make(Expr::Kind::Var, Expr::VarP{axis}); }

ExprPtr harmonic(Rational q, Rational r, Rational s) {
  if (q == 0 && r == 0) return phase_turns(ExactScalar(std::move(s)));
  double qd = to_double(q), rd = to_double(r);
  Complex sp = unit_d(to_double(s));
  return make(Expr::Kind::Harmonic, Expr::HarmonicP{std::move(q), std::move(r), std::move(s), qd, rd, sp});
}

ExprPtr sinpi(Axis axis) { return make(Expr::Kind::SinPi, Expr::TrigP{axis}); }
ExprPtr cospi(Axis axis) { return make(Expr::Kind::CosPi, Expr::TrigP{axis}); }

ExprPtr abs_of(ExprPtr e) { return make(Expr::Kind::Abs, Expr::UnaryP{std::move(e)}); }

ExprPtr conj_of(ExprPtr e) {
  if (e->kind == Expr::Kind::Const) return e;
  if (e->kind == Expr::Kind::Conj) return std::get<Expr::UnaryP>(e->payload).child;
  return make(Expr::Kind::Conj, Expr::UnaryP{std::move(e)});
}

ExprPtr sum_of(std::vector<ExprPtr> terms) {
  std::vector<ExprPtr> flat;
  for (auto& t : terms) {
    if (is_zero_expr(t)) continue;
    if (t->kind == Expr::Kind::Sum) {
      for (const auto& s : std::get<Expr::NaryP>(t->payload).terms) flat.push_back(s);
    } else {
      flat.push_back(std::move(t));
    }
  }
  if (flat.empty()) return zero();
  if (flat.size() == 1) return flat.front();
  return make(Expr::Kind::Sum, Expr::NaryP{std::move(flat)});
}

ExprPtr prod_of(std::vector<ExprPtr> factors) {
  std::vector<ExprPtr> flat;
  for (auto& f : factors) {
    if (is_zero_expr(f)) return zero();
    if (is_const_one(f)) continue;
    if (f->kind == Expr::Kind::Prod) {
      for (const auto& s : std::get<Expr::NaryP>(f->payload).terms) flat.push_back(s);
    } else {
      flat.push_back(std::move(f));
    }
  }
  if (flat.empty()) return one();
  if (flat.size() == 1) return flat.front();
  return make(Expr::Kind::Prod, Expr::NaryP{std::move(flat)});
}

ExprPtr strip(ExactScalar lo, ExactScalar hi) {
  if (!(lo < hi)) return zero();
  double lod = lo.to_double(), hid = hi.to_double();
  return make(Expr::Kind::Strip, Expr::StripP{std::move(lo), std::move(hi), lod, hid});
}

ExprPtr floor_phase(ExactScalar alpha, ExactScalar beta, ExactScalar shift) {
  if (alpha.is_zero()) return one();
  double ad = alpha.to_double(), bd = beta.to_double(), sd = shift.to_double();
  return make(Expr::Kind::FloorPhase, Expr::FloorPhaseP{std::move(alpha), std::move(beta), std::move(shift), ad, bd, sd});
}

ExprPtr shifted(ExactScalar dx, ExactScalar dy, ExprPtr e) {
  if (dx.is_zero() && dy.is_zero()) return e;
  switch (e->kind) {
    case Expr::Kind::Const:
    case Expr::Kind::Phase:
      return e;  // constants ignore coordinates
    case Expr::Kind::Shift: {
      const auto& p = std::get<Expr::ShiftP>(e->payload);
      return shifted(dx + p.dx, dy + p.dy, p.child);
    }
    default:
      break;
  }
  double dxd = dx.to_double(), dyd = dy.to_double();
  return make(Expr::Kind::Shift, Expr::ShiftP{std::move(dx), std::move(dy), dxd, dyd, std::move(e)});
}

bool is_zero_expr(const ExprPtr& e) {
  return e->kind == Expr::Kind::Const && std::get<Expr::ConstP>(e->payload).v == 0;
}

size_t node_count(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Abs:
    case Expr::Kind::Conj:
      return 1 + node_count(std::get<Expr::UnaryP>(e->payload).child);
    case Expr::Kind::Sum:
    case Expr::Kind::Prod: {
      size_t n = 1;
      for (const auto& t : std::get<Expr::NaryP>(e->payload).terms) n += node_count(t);
      return n;
    }
    case Expr::Kind::Shift:
      return 1 + node_count(std::get<Expr::ShiftP>(e->payload).child);
    default:
      return 1;
  }
}

Complex eval(const ExprPtr& e, const Point& pt) {
  switch (e->kind) {
    case Expr::Kind::Const:
      return {std::get<Expr::ConstP>(e->payload).vd, 0.0};
    case Expr::Kind::Phase:
      return std::get<Expr::PhaseP>(e->payload).value;
    case Expr::Kind::Var: {
      const auto& p = std::get<Expr::VarP>(e->payload);
      return {(p.axis == Axis::X ? pt.x : pt.y).to_double(), 0.0};
    }
    case Expr::Kind::Harmonic: {
      const auto& p = std::get<Expr::HarmonicP>(e->payload);
      ExactScalar turns = pt.x.scaled(p.q) + pt.y.scaled(p.r) + ExactScalar(p.s);
      return unit_turns(turns);
    }
    case Expr::Kind::SinPi:
    case Expr::Kind::CosPi: {
      const auto& p = std::get<Expr::TrigP>(e->payload);
      const ExactScalar& v = (p.axis == Axis::X ? pt.x : pt.y);
      // reduce mod 2 exactly, then one trig call on a small argument
      double r = 2.0 * v.scaled(Rational(1, 2)).mod1().to_double();
      double val = (e->kind == Expr::Kind::SinPi) ? std::sin(std::numbers::pi * r) : std::cos(std::numbers::pi * r);
      return {val, 0.0};
    }
    case Expr::Kind::Abs:
      return {std::abs(eval(std::get<Expr::UnaryP>(e->payload).child, pt)), 0.0};
    case Expr::Kind::Conj:
      return std::conj(eval(std::get<Expr::UnaryP>(e->payload).child, pt));
    case Expr::Kind::Sum: {
      Complex acc{0.0, 0.0};
      for (const auto& t : std::get<Expr::NaryP>(e->payload).terms) acc += eval(t, pt);
      return acc;
    }
    case Expr::Kind::Prod: {
      Complex acc{1.0, 0.0};
      for (const auto& t : std::get<Expr::NaryP>(e->payload).terms) {
        acc *= eval(t, pt);
        if (acc == Complex{0.0, 0.0}) return acc;
      }
      return acc;
    }
    case Expr::Kind::Strip: {
      const auto& p = std::get<Expr::StripP>(e->payload);
      bool in = !(pt.x < p.lo) && pt.x < p.hi;
      return {in ? 1.0 : 0.0, 0.0};
    }
    case Expr::Kind::FloorPhase: {
      const auto& p = std::get<Expr::FloorPhaseP>(e->payload);
      Int k = (pt.x + p.shift).floor();
      if (k == 0) return {1.0, 0.0};
      ExactScalar turns = (p.alpha * (pt.y + p.beta)).scaled(Rational(k));
      return unit_turns(turns);
    }
    case Expr::Kind::Shift: {
      const auto& p = std::get<Expr::ShiftP>(e->payload);
      return eval(p.child, Point{pt.x + p.dx, pt.y + p.dy});
    }
  }
  return {0.0, 0.0};  // unreachable
}

namespace {

// Exact floor of (x + shift) when the fast path sits too close to an integer.
Int exact_floor_shifted(double x, const ExactScalar& shift) {
  return (ExactScalar(rational_from_double(x)) + shift).floor();
}

}  // namespace

Complex eval(const ExprPtr& e, double x, double y) {
  switch (e->kind) {
    case Expr::Kind::Const:
      return {std::get<Expr::ConstP>(e->payload).vd, 0.0};
    case Expr::Kind::Phase:
      return std::get<Expr::PhaseP>(e->payload).value;
    case Expr::Kind::Var:
      return {std::get<Expr::VarP>(e->payload).axis == Axis::X ? x : y, 0.0};
    case Expr::Kind::Harmonic: {
      const auto& p = std::get<Expr::HarmonicP>(e->payload);
      return p.sphase * unit_d(p.qd * x + p.rd * y);
    }
    case Expr::Kind::SinPi:
      return {std::sin(std::numbers::pi * (std::get<Expr::TrigP>(e->payload).axis == Axis::X ? x : y)), 0.0};
    case Expr::Kind::CosPi:
      return {std::cos(std::numbers::pi * (std::get<Expr::TrigP>(e->payload).axis == Axis::X ? x : y)), 0.0};
    case Expr::Kind::Abs:
      return {std::abs(eval(std::get<Expr::UnaryP>(e->payload).child, x, y)), 0.0};
    case Expr::Kind::Conj:
      return std::conj(eval(std::get<Expr::UnaryP>(e->payload).child, x, y));
    case Expr::Kind::Sum: {
      Complex acc{0.0, 0.0};
      for (const auto& t : std::get<Expr::NaryP>(e->payload).terms) acc += eval(t, x, y);
      return acc;
    }
    case Expr::Kind::Prod: {
      Complex acc{1.0, 0.0};
      for (const auto& t : std::get<Expr::NaryP>(e->payload).terms) {
        acc *= eval(t, x, y);
        if (acc == Complex{0.0, 0.0}) return acc;
      }
      return acc;
    }
    case Expr::Kind::Strip: {
      const auto& p = std::get<Expr::StripP>(e->payload);
      bool in;
      if (std::abs(x - p.lod) < kGuard || std::abs(x - p.hid) < kGuard) {
        ExactScalar xe{rational_from_double(x)};
        in = !(xe < p.lo) && xe < p.hi;
      } else {
        in = x >= p.lod && x < p.hid;
      }
      return {in ? 1.0 : 0.0, 0.0};
    }
    case Expr::Kind::FloorPhase: {
      const auto& p = std::get<Expr::FloorPhaseP>(e->payload);
      double f = x + p.shiftd;
      double kf = std::floor(f);
      double frac = f - kf;
      long long k;
      if (frac < kGuard || frac > 1.0 - kGuard) {
        k = exact_floor_shifted(x, p.shift).convert_to<long long>();
      } else {
        k = static_cast<long long>(kf);
      }
      if (k == 0) return {1.0, 0.0};
      return unit_d(p.alphad * static_cast<double>(k) * (y + p.betad));
    }
    case Expr::Kind::Shift: {
      const auto& p = std::get<Expr::ShiftP>(e->payload);
      return eval(p.child, x + p.dxd, y + p.dyd);
    }
  }
  return {0.0, 0.0};  // unreachable
}

void collect_x_breakpoints(const ExprPtr& e, std::vector<ExactScalar>& out) {
  switch (e->kind) {
    case Expr::Kind::Strip: {
      const auto& p = std::get<Expr::StripP>(e->payload);
      out.push_back(p.lo.mod1());
      out.push_back(p.hi.mod1());
      return;
    }
    case Expr::Kind::FloorPhase: {
      // floor(x + t) jumps where x = -t mod 1
      const auto& p = std::get<Expr::FloorPhaseP>(e->payload);
      out.push_back((-p.shift).mod1());
      return;
    }
    case Expr::Kind::Abs:
    case Expr::Kind::Conj:
      collect_x_breakpoints(std::get<Expr::UnaryP>(e->payload).child, out);
      return;
    case Expr::Kind::Sum:
    case Expr::Kind::Prod:
      for (const auto& t : std::get<Expr::NaryP>(e->payload).terms) collect_x_breakpoints(t, out);
      return;
    case Expr::Kind::Shift: {
      const auto& p = std::get<Expr::ShiftP>(e->payload);
      std::vector<ExactScalar> inner;
      collect_x_breakpoints(p.child, inner);
      for (auto& b : inner) out.push_back((b - p.dx).mod1());
      return;
    }
    default:
      return;
  }
}

namespace {

std::string rational_dsl(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

std::string linear_dsl(const Rational& q, const Rational& r, const Rational& s) {
  std::string out;
  auto append = [&out](const Rational& coeff, const char* var) {
    if (coeff == 0) return;
    if (!out.empty() && coeff > 0) out += "+";
    if (coeff == -1 && var[0] != '\0') out += "-";
    else if (!(coeff == 1 && var[0] != '\0')) out += rational_dsl(coeff) + (var[0] != '\0' ? "*" : "");
    out += var;
  };
  append(q, "x");
  append(r, "y");
  append(s, "");
  return out.empty() ? "0" : out;
}

}  // namespace

std::string to_dsl(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Const:
      return rational_dsl(std::get<Expr::ConstP>(e->payload).v);
    case Expr::Kind::Phase: {
      const auto& t = std::get<Expr::PhaseP>(e->payload).turns;
      if (!t.is_rational()) throw std::domain_error("phase constant with surd turns has no grammar form");
      return "e(" + linear_dsl(0, 0, t.rational_part()) + ")";
    }
    case Expr::Kind::Var:
      return std::get<Expr::VarP>(e->payload).axis == Axis::X ? "x" : "y";
    case Expr::Kind::Harmonic: {
      const auto& p = std::get<Expr::HarmonicP>(e->payload);
      return "e(" + linear_dsl(p.q, p.r, p.s) + ")";
    }
    case Expr::Kind::SinPi:
      return std::get<Expr::TrigP>(e->payload).axis == Axis::X ? "sinpi(x)" : "sinpi(y)";
    case Expr::Kind::CosPi:
      return std::get<Expr::TrigP>(e->payload).axis == Axis::X ? "cospi(x)" : "cospi(y)";
    case Expr::Kind::Abs:
      return "abs(" + to_dsl(std::get<Expr::UnaryP>(e->payload).child) + ")";
    case Expr::Kind::Conj:
      return "conj(" + to_dsl(std::get<Expr::UnaryP>(e->payload).child) + ")";
    case Expr::Kind::Sum: {
      std::string out;
      for (const auto& t : std::get<Expr::NaryP>(e->payload).terms) {
        if (!out.empty()) out += " + ";
        out += to_dsl(t);
      }
      return "(" + out + ")";
    }
    case Expr::Kind::Prod: {
      std::string out;
      for (const auto& t : std::get<Expr::NaryP>(e->payload).terms) {
        if (!out.empty()) out += "*";
        out += to_dsl(t);
      }
      return out;
    }
    case Expr::Kind::Strip: {
      const auto& p = std::get<Expr::StripP>(e->payload);
      return "chi(" + to_string(p.lo) + "," + to_string(p.hi) + ")";
    }
    case Expr::Kind::FloorPhase:
      throw std::domain_error("floor-phase factor has no grammar form");
    case Expr::Kind::Shift:
      throw std::domain_error("shifted argument has no grammar form");
  }
  throw std::domain_error("expression node has no grammar form");
}

}  // namespace qhm
