#include "dmtherm/critical.hpp"

#include <algorithm>
#include <cmath>

#include "dmtherm/entanglement.hpp"
#include "dmtherm/errors.hpp"

namespace dmtherm {

namespace {

// (J, m, |d|) for one of the two single-axis cases
struct BranchInputs {
  double j = 0.0;
  double m = 0.0;
  double d = 0.0;
};

BranchInputs inputs_z(const Couplings& c) { return {c.jz, xi_z(c), std::abs(c.jx - c.jy)}; }
BranchInputs inputs_y(const Couplings& c) { return {c.jy, eta_y(c), std::abs(c.jx - c.jz)}; }

// log1p(-e^{-2x}) = log(1 - e^{-2x}); -inf at x = 0
double log_one_minus_exp2(double x) { return x <= 0.0 ? -INFINITY : std::log1p(-std::exp(-2.0 * x)); }
double log_one_plus_exp2(double x) { return std::log1p(std::exp(-2.0 * std::abs(x))); }

// With ln sinh x = x - ln 2 + log1p(-e^{-2x}) and ln cosh x = x - ln 2 +
// log1p(e^{-2x}), the ln 2 terms cancel and the leading part is beta times a
// constant, so the equations stay finite for any beta.
double branch_log(const BranchInputs& b, TcBranch branch, double beta) {
  if (branch == TcBranch::SecondEq)
    return beta * (b.d - 2.0 * b.j - b.m) + log_one_minus_exp2(beta * b.d) - log_one_plus_exp2(beta * b.m);
  return beta * (2.0 * b.j + b.m - b.d) + log_one_minus_exp2(beta * b.m) - log_one_plus_exp2(beta * b.d);
}

PhaseBoundary boundary(double j, double a, double b) {
  PhaseBoundary pb;
  pb.j_greater = std::max(a, b);
  pb.j_less = std::min(a, b);
  if (j < pb.j_greater && j < -pb.j_less) pb.d_star = std::sqrt((j - pb.j_greater) * (j + pb.j_less));
  return pb;
}

CriticalResult solve(const BranchInputs& b, const PhaseBoundary& pb, double d_abs) {
  if (pb.d_star && std::abs(d_abs - *pb.d_star) < 1e-12) return {0.0, TcBranch::ZeroAtBoundary, 0.0};

  const double slope_first = 2.0 * b.j + b.m - b.d;
  const TcBranch branch = slope_first >= 0.0 ? TcBranch::FirstEq : TcBranch::SecondEq;
  const double slope = branch == TcBranch::FirstEq ? slope_first : -slope_first;

  // The sinh argument vanishing means the two competing weights coincide and
  // the concurrence is zero at every temperature.
  if (branch == TcBranch::FirstEq && b.m == 0.0)
    throw Error(ErrorKind::NoTransition, "first equation has sinh(0): concurrence vanishes identically");
  if (branch == TcBranch::SecondEq && b.d == 0.0)
    throw Error(ErrorKind::NoTransition, "second equation has no solution when its exchange difference is zero");
  if (slope == 0.0) return {0.0, TcBranch::ZeroAtBoundary, 0.0};

  const auto g = [&](double t) { return branch_log(b, branch, 1.0 / t); };

  double lo = 1e-6;
  while (g(lo) <= 0.0) {
    lo *= 1e-3;
    if (lo < 1e-300) return {0.0, TcBranch::ZeroAtBoundary, 0.0};
  }
  double hi = std::max(1.0, 2.0 * lo);
  while (g(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 0x1p60) throw Error(ErrorKind::NoTransition, "no sign change below 2^60");
  }

  // geometric halving while the bracket is wide, then plain bisection to the last ulp
  while (hi / lo > 1.001) {
    const double mid = std::sqrt(lo * hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  const double glo = std::abs(g(lo));
  const double ghi = std::abs(g(hi));
  return glo <= ghi ? CriticalResult{lo, branch, glo} : CriticalResult{hi, branch, ghi};
}

}  // namespace

std::string_view to_string(TcBranch b) {
  switch (b) {
    case TcBranch::FirstEq: return "FirstEq";
    case TcBranch::SecondEq: return "SecondEq";
    case TcBranch::ZeroAtBoundary: return "ZeroAtBoundary";
  }
  return "FirstEq";
}

PhaseBoundary d_z_star(const Couplings& c) { return boundary(c.jz, c.jx, c.jy); }
PhaseBoundary d_y_star(const Couplings& c) { return boundary(c.jy, c.jx, c.jz); }

CriticalResult critical_temperature_z(const Couplings& c) {
  if (!admits_z_form(c)) throw Error(ErrorKind::WrongDmCase, "critical_temperature_z needs dx = dy = 0");
  return solve(inputs_z(c), d_z_star(c), std::abs(c.dz));
}

CriticalResult critical_temperature_y(const Couplings& c) {
  if (!admits_y_form(c)) throw Error(ErrorKind::WrongDmCase, "critical_temperature_y needs dx = dz = 0");
  return solve(inputs_y(c), d_y_star(c), std::abs(c.dy));
}

double critical_equation_z(const Couplings& c, double t, TcBranch branch) {
  if (!(t > 0.0)) throw Error(ErrorKind::NonPositiveTemperature, "t must be positive");
  return branch_log(inputs_z(c), branch, 1.0 / t);
}

double critical_equation_y(const Couplings& c, double t, TcBranch branch) {
  if (!(t > 0.0)) throw Error(ErrorKind::NonPositiveTemperature, "t must be positive");
  return branch_log(inputs_y(c), branch, 1.0 / t);
}

double critical_temperature_oracle(const Couplings& c) {
  const auto margin = [&](double t) { return concurrence_generic(c, t).margin; };

  // Walk up in doublings and remember the last entangled point.
  double last_positive = -1.0;
  double t = 1e-3;
  for (int k = 0; k <= 60; ++k, t *= 2.0)
    if (margin(t) > 0.0) last_positive = t;
  if (last_positive < 0.0) throw Error(ErrorKind::NoTransition, "concurrence is zero on the whole probe grid");

  double lo = last_positive;
  double hi = 2.0 * last_positive;
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    (margin(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace dmtherm
