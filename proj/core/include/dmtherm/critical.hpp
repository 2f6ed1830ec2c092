#pragma once

#include <optional>
#include <string_view>

#include "dmtherm/model.hpp"

namespace dmtherm {

// Which of the two transcendental equations fixes T_c.
//   FirstEq:  e^{2J/T} sinh(m/T) / cosh(|d|/T) = 1,  used when 2J + m >= |d|
//   SecondEq: e^{-2J/T} sinh(|d|/T) / cosh(m/T) = 1, otherwise
// with (J, m, d) = (Jz, xi, Jx - Jy) for D along z and (Jy, eta, Jx - Jz) for D along y.
enum class TcBranch { FirstEq, SecondEq, ZeroAtBoundary };

std::string_view to_string(TcBranch b);

struct CriticalResult {
  double tc = 0.0;
  TcBranch branch = TcBranch::FirstEq;
  double residual = 0.0;  // |log of the branch equation| at tc
};

struct PhaseBoundary {
  std::optional<double> d_star;
  double j_greater = 0.0;
  double j_less = 0.0;
};

// D_z* = sqrt((Jz - J>)(Jz + J<)), J> = max(Jx, Jy), J< = min(Jx, Jy).
// Present only when the two branch conditions actually meet, i.e.
// Jz < J> and Jz < -J<; the product alone also admits spurious roots.
PhaseBoundary d_z_star(const Couplings& c);

// Same with Jz -> Jy and J~ over (Jx, Jz).
PhaseBoundary d_y_star(const Couplings& c);

CriticalResult critical_temperature_z(const Couplings& c);
CriticalResult critical_temperature_y(const Couplings& c);

// Log of the left-hand side of the chosen branch equation at temperature t;
// zero exactly at T_c.
double critical_equation_z(const Couplings& c, double t, TcBranch branch);
double critical_equation_y(const Couplings& c, double t, TcBranch branch);

// Any DM direction: scans the spin-flip concurrence on doubling temperatures
// from 1e-3 and bisects the last positive-to-zero transition to 1e-8.
double critical_temperature_oracle(const Couplings& c);

}  // namespace dmtherm
