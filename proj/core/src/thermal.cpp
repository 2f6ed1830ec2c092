#include "dmtherm/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dmtherm/errors.hpp"

namespace dmtherm {

namespace {

double partition_from(const std::array<double, 4>& energies, double t) {
  return std::exp(thermal_weights(energies, t).log_partition);
}

}  // namespace

Weights thermal_weights(const std::array<double, 4>& energies, double t) {
  double sum = 0.0;
  Weights out;
  out.w = shifted_boltzmann_factors(energies, t, sum);
  for (double& x : out.w) x /= sum;
  const double emin = *std::min_element(energies.begin(), energies.end());
  out.log_partition = -emin / t + std::log(sum);
  return out;
}

double partition_z(const Couplings& c, double t) { return partition_from(spectrum_z(c).eigenvalues, t); }
double partition_y(const Couplings& c, double t) { return partition_from(spectrum_y(c).eigenvalues, t); }

double partition_xy(const Couplings& c, double t) {
  if (!admits_xy_form(c)) throw Error(ErrorKind::WrongDmCase, "partition_xy needs dz = 0 and jx = jy");
  // Z does not depend on the phase of D, so dx = dy = 0 is fine here
  const double j = c.jx;
  const double zeta = zeta_xy(c);
  return partition_from({2.0 * j - c.jz, c.jz, -j + zeta, -j - zeta}, t);
}

ZEntries z_entries(const Couplings& c, double t) {
  const auto spec = spectrum_z(c);
  const auto [w, logz] = thermal_weights(spec.eigenvalues, t);
  ZEntries e;
  e.r = 0.5 * (w[0] + w[1]);
  e.s = 0.5 * (w[0] - w[1]);
  e.u = 0.5 * (w[2] + w[3]);
  const double xi = xi_z(c);
  if (xi > 0.0) e.v = Complex(c.jx + c.jy, 2.0 * c.dz) / xi * (0.5 * (w[2] - w[3]));
  return e;
}

YEntries y_entries(const Couplings& c, double t) {
  const auto spec = spectrum_y(c);
  const auto [w, logz] = thermal_weights(spec.eigenvalues, t);
  const auto [phi1, phi2] = mixing_angles_y(c);
  const double s1 = std::sin(phi1), c1 = std::cos(phi1);
  const double s2 = std::sin(phi2), c2 = std::cos(phi2);
  YEntries e;
  e.r1 = 0.5 * (w[1] + s1 * s1 * w[2] + s2 * s2 * w[3]);
  e.r2 = 0.5 * (-w[1] + s1 * s1 * w[2] + s2 * s2 * w[3]);
  e.u1 = 0.5 * (w[0] + c1 * c1 * w[2] + c2 * c2 * w[3]);
  e.u2 = 0.5 * (w[0] - c1 * c1 * w[2] - c2 * c2 * w[3]);
  e.q = 0.5 * (s1 * c1 * w[2] + s2 * c2 * w[3]);
  return e;
}

XYEntries xy_entries(const Couplings& c, double t) {
  if (!admits_xy_form(c)) throw Error(ErrorKind::WrongDmCase, "xy_entries needs dz = 0 and jx = jy");
  if (c.dx == 0.0 && c.dy == 0.0)
    throw Error(ErrorKind::DegenerateDmPhase, "dx = dy = 0 leaves the phase of z3, z4 undefined");

  const double j = c.jx;
  const double k = j + c.jz;
  const double d = std::hypot(c.dx, c.dy);
  const double zeta = zeta_xy(c);
  const auto [w, logz] = thermal_weights({2.0 * j - c.jz, c.jz, -j + zeta, -j - zeta}, t);

  // |<00|E3>|^2 = (zeta + K)/(4 zeta), |<01|E3>|^2 = (zeta - K)/(4 zeta); E4 swaps them
  const double zeta_minus = k > 0.0 ? 4.0 * d * d / (zeta + k) : zeta - k;
  const double zeta_plus = k > 0.0 ? zeta + k : 4.0 * d * d / (zeta - k);
  const double big = zeta_plus / (4.0 * zeta);
  const double small = zeta_minus / (4.0 * zeta);

  XYEntries e;
  e.z1 = 0.5 * w[1] + big * w[2] + small * w[3];
  e.z2 = 0.5 * w[0] + small * w[2] + big * w[3];
  e.z5 = 0.5 * w[0] - small * w[2] - big * w[3];
  e.m3 = d / (2.0 * zeta) * (w[2] - w[3]);
  e.m4 = 0.5 * w[1] - big * w[2] - small * w[3];

  const double psi = std::atan2(c.dy, c.dx);
  e.z3 = Complex(0.0, 1.0) * std::polar(e.m3, -psi);
  e.z4 = std::polar(1.0, -2.0 * psi) * e.m4;
  return e;
}

ComplexMatrix4 assemble(const ZEntries& e) {
  ComplexMatrix4 m;
  m(0, 0) = e.r;
  m(3, 3) = e.r;
  m(0, 3) = e.s;
  m(3, 0) = e.s;
  m(1, 1) = e.u;
  m(2, 2) = e.u;
  m(1, 2) = e.v;
  m(2, 1) = std::conj(e.v);
  return m;
}

ComplexMatrix4 assemble(const YEntries& e) {
  ComplexMatrix4 m;
  m(0, 0) = e.r1;
  m(3, 3) = e.r1;
  m(0, 3) = e.r2;
  m(3, 0) = e.r2;
  m(1, 1) = e.u1;
  m(2, 2) = e.u1;
  m(1, 2) = e.u2;
  m(2, 1) = e.u2;
  for (std::size_t row : {0u, 3u}) {
    m(row, 1) = -e.q;
    m(row, 2) = e.q;
    m(1, row) = -e.q;
    m(2, row) = e.q;
  }
  return m;
}

ComplexMatrix4 assemble(const XYEntries& e) {
  ComplexMatrix4 m;
  m(0, 0) = e.z1;
  m(3, 3) = e.z1;
  m(1, 1) = e.z2;
  m(2, 2) = e.z2;
  m(1, 2) = e.z5;
  m(2, 1) = e.z5;
  m(0, 3) = e.z4;
  m(3, 0) = std::conj(e.z4);
  m(0, 1) = e.z3;
  m(0, 2) = -e.z3;
  m(1, 3) = e.z3;
  m(2, 3) = -e.z3;
  m(1, 0) = std::conj(e.z3);
  m(2, 0) = -std::conj(e.z3);
  m(3, 1) = std::conj(e.z3);
  m(3, 2) = -std::conj(e.z3);
  return m;
}

namespace {

ThermalState make_state(const ComplexMatrix4& rho, const Couplings& c, double t, double log_partition) {
  ThermalState s;
  s.rho = rho;
  s.temperature = t;
  s.couplings = c;
  s.log_partition = log_partition;
  s.partition_value = std::exp(log_partition);
  return s;
}

}  // namespace

ZThermal thermal_state_z(const Couplings& c, double t) {
  const auto e = z_entries(c, t);
  const double logz = thermal_weights(spectrum_z(c).eigenvalues, t).log_partition;
  return {make_state(assemble(e), c, t, logz), e};
}

YThermal thermal_state_y(const Couplings& c, double t) {
  const auto e = y_entries(c, t);
  const double logz = thermal_weights(spectrum_y(c).eigenvalues, t).log_partition;
  return {make_state(assemble(e), c, t, logz), e};
}

XYThermal thermal_state_xy(const Couplings& c, double t) {
  const auto e = xy_entries(c, t);
  const double zeta = zeta_xy(c);
  const double logz = thermal_weights({2.0 * c.jx - c.jz, c.jz, -c.jx + zeta, -c.jx - zeta}, t).log_partition;
  return {make_state(assemble(e), c, t, logz), e};
}

ThermalState thermal_state_generic(const Couplings& c, double t) {
  const auto spec = spectrum_numeric(c);
  const auto rho = gibbs_from_spectrum(spec, t);
  return make_state(rho, c, t, thermal_weights(spec.eigenvalues, t).log_partition);
}

}  // namespace dmtherm
