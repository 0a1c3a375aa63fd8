#pragma once

#include "qhm/params.hpp"

#include <complex>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace qhm {

// Immutable expression tree over real variables (x, y).
//
// Node set: rational constant, unit phase exp(2*pi*i*t), coordinate, harmonic
// exp(2*pi*i*(q x + r y + s)), sinpi/cospi, |.|, conjugate, sum, product,
// strip indicator chi_[lo,hi)(x), floor phase exp(2*pi*i*a*floor(x+t)*(y+b)),
// and argument shift (x,y) -> (x+dx, y+dy).  The set is closed under the
// operations the element algebra needs (products, conjugation, shifted
// evaluation through the covariance rule), so every derived element stays
// representable.
//
// Two evaluation paths share the semantics:
//  * eval(expr, Point)        — coordinates as exact scalars; strip membership
//                               and floors are decided exactly; phases are
//                               reduced mod 1 exactly before any trig call.
//  * eval(expr, double, double) — fast path; branch decisions within 1e-9 of
//                               a boundary fall back to exact comparison on
//                               the (exactly lifted) dyadic coordinate.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;
using Complex = std::complex<double>;

enum class Axis : uint8_t { X, Y };

struct Expr {
  enum class Kind : uint8_t {
    Const,
    Phase,
    Var,
    Harmonic,
    SinPi,
    CosPi,
    Abs,
    Conj,
    Sum,
    Prod,
    Strip,
    FloorPhase,
    Shift,
  };

  struct ConstP {
    Rational v;
    double vd;
  };
  struct PhaseP {
    ExactScalar turns;
    Complex value;  // cached, reduced exactly at construction
  };
  struct VarP {
    Axis axis;
  };
  struct HarmonicP {
    Rational q, r, s;
    double qd, rd;
    Complex sphase;
  };
  struct TrigP {
    Axis axis;
  };
  struct UnaryP {
    ExprPtr child;
  };
  struct NaryP {
    std::vector<ExprPtr> terms;
  };
  struct StripP {
    ExactScalar lo, hi;
    double lod, hid;
  };
  struct FloorPhaseP {
    ExactScalar alpha, beta, shift;
    double alphad, betad, shiftd;
  };
  struct ShiftP {
    ExactScalar dx, dy;
    double dxd, dyd;
    ExprPtr child;
  };

  Kind kind;
  std::variant<ConstP, PhaseP, VarP, HarmonicP, TrigP, UnaryP, NaryP, StripP, FloorPhaseP, ShiftP> payload;
};

ExprPtr lit(Rational v);
ExprPtr lit(long long v);
ExprPtr zero();
ExprPtr one();
ExprPtr phase_turns(ExactScalar turns);                 // exp(2*pi*i*turns)
ExprPtr coord(Axis axis);
ExprPtr harmonic(Rational q, Rational r, Rational s);   // exp(2*pi*i*(qx+ry+s))
ExprPtr sinpi(Axis axis = Axis::X);
ExprPtr cospi(Axis axis = Axis::X);
ExprPtr abs_of(ExprPtr e);
ExprPtr conj_of(ExprPtr e);
ExprPtr sum_of(std::vector<ExprPtr> terms);
ExprPtr prod_of(std::vector<ExprPtr> factors);
ExprPtr strip(ExactScalar lo, ExactScalar hi);          // chi_[lo,hi) in x
ExprPtr floor_phase(ExactScalar alpha, ExactScalar beta, ExactScalar shift);
ExprPtr shifted(ExactScalar dx, ExactScalar dy, ExprPtr e);

Complex eval(const ExprPtr& e, const Point& pt);
Complex eval(const ExprPtr& e, double x, double y);

bool is_zero_expr(const ExprPtr& e);
size_t node_count(const ExprPtr& e);

// x-positions (reduced mod 1) where the expression may jump on [0,1).
void collect_x_breakpoints(const ExprPtr& e, std::vector<ExactScalar>& out);

// Render in the element-file grammar; throws std::domain_error for nodes the
// grammar cannot spell (floor phases, shifts, irrational phase constants).
std::string to_dsl(const ExprPtr& e);

Complex unit_turns(const ExactScalar& turns);  // exp(2*pi*i*turns), exact mod-1 reduction

}  // namespace qhm
