#include "dmtherm/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dmtherm/errors.hpp"
#include "dmtherm/thermal.hpp"

namespace dmtherm {

namespace {

ConcurrenceBreakdown from_descending(const std::array<double, 4>& l) {
  ConcurrenceBreakdown b;
  b.lambdas = l;
  b.margin = l[0] - l[1] - l[2] - l[3];
  b.value = std::clamp(b.margin, 0.0, 1.0);
  return b;
}

// max(|a - c| - b - d, 0); the quadruple stays in its labelled order
ConcurrenceBreakdown from_quadruple(double a, double b, double c, double d) {
  ConcurrenceBreakdown out;
  out.lambdas = {a, b, c, d};
  out.margin = std::abs(a - c) - b - d;
  out.value = std::clamp(out.margin, 0.0, 1.0);
  return out;
}

}  // namespace

ConcurrenceBreakdown concurrence_wootters(const ComplexMatrix4& rho) {
  validate_density_matrix(rho);
  const auto s = hermitian_eig(rho);

  // rho = W W^dagger with W = V diag(sqrt(mu)); the lambdas are the singular
  // values of W^T S W. This avoids squaring: tiny lambdas keep full
  // absolute precision instead of sqrt(eps).
  const double mu_max = std::max(s.eigenvalues[3], 0.0);
  const double cutoff = 64.0 * std::numeric_limits<double>::epsilon() * mu_max;
  ComplexMatrix4 w;
  for (std::size_t j = 0; j < 4; ++j) {
    const double mu = s.eigenvalues[j] <= cutoff ? 0.0 : std::sqrt(s.eigenvalues[j]);
    for (std::size_t i = 0; i < 4; ++i) w(i, j) = s.eigenvectors[j][i] * mu;
  }

  // tau = W^T S W; S = antidiag(-1, 1, 1, -1) so S W just permutes and flips rows
  ComplexMatrix4 sw;
  for (std::size_t j = 0; j < 4; ++j) {
    sw(0, j) = -w(3, j);
    sw(1, j) = w(2, j);
    sw(2, j) = w(1, j);
    sw(3, j) = -w(0, j);
  }
  ComplexMatrix4 tau;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < 4; ++k) acc += w(k, i) * sw(k, j);
      tau(i, j) = acc;
    }
  return from_descending(singular_values(tau));
}

ConcurrenceBreakdown concurrence_z(const Couplings& c, double t) {
  const auto w = thermal_weights(spectrum_z(c).eigenvalues, t).w;
  // xi1 = max(w1, w2), xi2 = min, xi3 = w4, xi4 = w3
  return from_quadruple(std::max(w[0], w[1]), std::min(w[0], w[1]), w[3], w[2]);
}

ConcurrenceBreakdown concurrence_y(const Couplings& c, double t, Eta2Variant variant) {
  const auto e = spectrum_y(c).eigenvalues;
  const auto w = thermal_weights(e, t).w;
  double eta2 = std::min(w[0], w[1]);
  if (variant == Eta2Variant::Jz) {
    // exp(-beta (|Jx - Jz| + Jz)) / Z, evaluated with the same shift as w
    double sum = 0.0;
    shifted_boltzmann_factors(e, t, sum);
    const double gap = std::abs(c.jx - c.jz) + c.jz - *std::min_element(e.begin(), e.end());
    if (t >= kMinTemperature)
      eta2 = std::exp(-gap / t) / sum;
    else
      eta2 = gap < 0.0 ? std::numeric_limits<double>::infinity() : (gap == 0.0 ? 1.0 / sum : 0.0);
  }
  return from_quadruple(std::max(w[0], w[1]), eta2, w[3], w[2]);
}

std::array<double, 3> xy_cubic_coefficients(const Couplings& c, double t) {
  const auto z = xy_entries(c, t);
  const double z1 = z.z1;
  const double a1 = z.m3 * z.m3;  // |z3|^2
  const double a2 = z.m4 * z.m4;  // |z4|^2
  // z3^2 z4* + c.c. = 2 Re(z3^2 z4*) = -2 m3^2 m4, with the phases cancelling
  const double a3 = -2.0 * a1 * z.m4;
  const double a4 = z.z2 - z.z5;

  const double al1 = 2.0 * z1 * z1 + 8.0 * a1 + 2.0 * a2 + a4 * a4;
  const double al2 = std::pow(z1, 4) + (4.0 * a1 + a2) * (4.0 * a1 + a2) - 8.0 * z1 * a3 - 4.0 * a3 * a4 +
                     8.0 * z1 * a1 * (z1 - a4) - 2.0 * a2 * (z1 * z1 - a4 * a4) + 2.0 * z1 * z1 * a4 * a4;
  const double root = 2.0 * a3 - 4.0 * z1 * a1 + (z1 * z1 - a2) * a4;
  return {al1, al2, root * root};
}

std::array<double, 3> xy_cubic_coefficients_spectral(const Couplings& c, double t) {
  if (!admits_xy_form(c)) throw Error(ErrorKind::WrongDmCase, "in-plane form needs dz = 0 and jx = jy");
  const double j = c.jx;
  const double zeta = zeta_xy(c);
  const auto w = thermal_weights({2.0 * j - c.jz, c.jz, -j + zeta, -j - zeta}, t).w;
  const double p = w[1] * w[1];
  const double q = w[2] * w[2];
  const double r = w[3] * w[3];
  return {p + q + r, p * q + p * r + q * r, p * q * r};
}

ConcurrenceBreakdown concurrence_xy(const Couplings& c, double t, XyCubicForm form) {
  const auto z = xy_entries(c, t);
  const auto [al1, al2, al3] =
      form == XyCubicForm::Spectral ? xy_cubic_coefficients_spectral(c, t) : xy_cubic_coefficients(c, t);
  const auto roots = solve_cubic_real(al1, al2, al3);

  std::array<double, 4> l{};
  l[0] = std::abs(z.z2 + z.z5);
  for (std::size_t k = 0; k < 3; ++k) {
    if (roots[k] < -1e-9)
      throw Error(ErrorKind::ComplexRootsDetected, "negative eigenvalue of R: " + std::to_string(roots[k]));
    l[k + 1] = std::sqrt(std::max(roots[k], 0.0));
  }
  std::sort(l.begin(), l.end(), std::greater<>());
  return from_descending(l);
}

ConcurrenceBreakdown concurrence_generic(const Couplings& c, double t) {
  return concurrence_wootters(thermal_state_generic(c, t).rho);
}

ConcurrenceBreakdown concurrence(const Couplings& c, double t) {
  switch (classify(c)) {
    case DmCase::ZOnly: return concurrence_z(c, t);
    case DmCase::YOnly: return concurrence_y(c, t);
    case DmCase::XYPlane: return concurrence_xy(c, t);
    case DmCase::General: break;
  }
  return concurrence_generic(c, t);
}

}  // namespace dmtherm
