#include "dmtherm/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "dmtherm/errors.hpp"

namespace dmtherm {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::WrongDmCase, what);
}

// Normalize (a, b) to (sin, cos) of an angle; returns false on (0, 0).
bool unit_pair(double a, double b, double& s, double& c) {
  const double n = std::hypot(a, b);
  if (n == 0.0) return false;
  s = a / n;
  c = b / n;
  return true;
}

}  // namespace

bool is_finite(const Couplings& c) {
  return std::isfinite(c.jx) && std::isfinite(c.jy) && std::isfinite(c.jz) && std::isfinite(c.dx) &&
         std::isfinite(c.dy) && std::isfinite(c.dz);
}

std::string_view to_string(DmCase c) {
  switch (c) {
    case DmCase::ZOnly: return "ZOnly";
    case DmCase::YOnly: return "YOnly";
    case DmCase::XYPlane: return "XYPlane";
    case DmCase::General: return "General";
  }
  return "General";
}

DmCase classify(const Couplings& c) {
  if (c.dx == 0.0 && c.dy == 0.0) return DmCase::ZOnly;
  if (c.dx == 0.0 && c.dz == 0.0) return DmCase::YOnly;
  if (c.dz == 0.0 && c.jx == c.jy) return DmCase::XYPlane;
  return DmCase::General;
}

bool admits_z_form(const Couplings& c) { return c.dx == 0.0 && c.dy == 0.0; }
bool admits_y_form(const Couplings& c) { return c.dx == 0.0 && c.dz == 0.0; }
bool admits_xy_form(const Couplings& c) { return c.dz == 0.0 && c.jx == c.jy; }

ComplexMatrix4 build_hamiltonian(const Couplings& c) {
  const Complex i(0.0, 1.0);
  ComplexMatrix4 h;
  // exchange part
  h(0, 0) = c.jz;
  h(1, 1) = -c.jz;
  h(2, 2) = -c.jz;
  h(3, 3) = c.jz;
  h(0, 3) = c.jx - c.jy;
  h(3, 0) = c.jx - c.jy;
  h(1, 2) = c.jx + c.jy;
  h(2, 1) = c.jx + c.jy;

  // Dz (sx sy - sy sx)
  h(1, 2) += 2.0 * i * c.dz;
  h(2, 1) -= 2.0 * i * c.dz;

  // Dx (sy sz - sz sy) + Dy (sz sx - sx sz), both coupling |00>,|11> to |01>,|10>
  const Complex b = i * c.dx + c.dy;
  h(0, 1) += b;
  h(0, 2) -= b;
  h(1, 3) += b;
  h(2, 3) -= b;
  h(1, 0) += std::conj(b);
  h(2, 0) -= std::conj(b);
  h(3, 1) += std::conj(b);
  h(3, 2) -= std::conj(b);
  return h;
}

double xi_z(const Couplings& c) { return std::hypot(2.0 * c.dz, c.jx + c.jy); }
double eta_y(const Couplings& c) { return std::hypot(2.0 * c.dy, c.jx + c.jz); }
double zeta_xy(const Couplings& c) { return std::hypot(2.0 * std::hypot(c.dx, c.dy), c.jx + c.jz); }

double theta_z(const Couplings& c) { return std::atan2(-2.0 * c.dz, c.jx + c.jy); }

MixingAngles mixing_angles_y(const Couplings& c) {
  const double k = c.jx + c.jz;
  const double eta = eta_y(c);
  const double two_dy = 2.0 * c.dy;
  double s1 = 0.0, c1 = 0.0, s2 = 0.0, c2 = 0.0;
  bool ok = false;
  if (k >= 0.0) {
    // tan(phi1) = -2Dy/(eta - K) = -(eta + K)/(2Dy); tan(phi2) = 2Dy/(eta + K)
    ok = unit_pair(-(eta + k), two_dy, s1, c1) && unit_pair(two_dy, eta + k, s2, c2);
  } else {
    ok = unit_pair(-two_dy, eta - k, s1, c1) && unit_pair(eta - k, two_dy, s2, c2);
  }
  if (!ok) return {-std::numbers::pi / 2.0, 0.0};  // eta = 0: any orthogonal pair works
  return {std::atan2(s1, c1), std::atan2(s2, c2)};
}

SpectralDecomposition4 spectrum_z(const Couplings& c) {
  require(admits_z_form(c), "spectrum_z needs dx = dy = 0");
  const double xi = xi_z(c);
  const Complex phase = std::polar(1.0, theta_z(c));

  SpectralDecomposition4 s;
  s.eigenvalues = {c.jx - c.jy + c.jz, -c.jx + c.jy + c.jz, -c.jz + xi, -c.jz - xi};
  s.eigenvectors[0] = {kInvSqrt2, 0.0, 0.0, kInvSqrt2};
  s.eigenvectors[1] = {kInvSqrt2, 0.0, 0.0, -kInvSqrt2};
  s.eigenvectors[2] = {0.0, kInvSqrt2, kInvSqrt2 * phase, 0.0};
  s.eigenvectors[3] = {0.0, kInvSqrt2, -kInvSqrt2 * phase, 0.0};
  return s;
}

SpectralDecomposition4 spectrum_y(const Couplings& c) {
  require(admits_y_form(c), "spectrum_y needs dx = dz = 0");
  const double eta = eta_y(c);
  const auto [phi1, phi2] = mixing_angles_y(c);

  const auto mixed = [](double phi) -> ComplexVector<4> {
    const double sn = kInvSqrt2 * std::sin(phi);
    const double cs = kInvSqrt2 * std::cos(phi);
    return {sn, -cs, cs, sn};
  };

  SpectralDecomposition4 s;
  s.eigenvalues = {c.jy + (c.jx - c.jz), c.jy - (c.jx - c.jz), -c.jy + eta, -c.jy - eta};
  s.eigenvectors[0] = {0.0, kInvSqrt2, kInvSqrt2, 0.0};
  s.eigenvectors[1] = {kInvSqrt2, 0.0, 0.0, -kInvSqrt2};
  s.eigenvectors[2] = mixed(phi1);
  s.eigenvectors[3] = mixed(phi2);
  return s;
}

SpectralDecomposition4 spectrum_xy(const Couplings& c) {
  require(admits_xy_form(c), "spectrum_xy needs dz = 0 and jx = jy");
  if (c.dx == 0.0 && c.dy == 0.0)
    throw Error(ErrorKind::DegenerateDmPhase, "dx = dy = 0 leaves the phase of |E2> undefined");

  const double j = c.jx;
  const double k = j + c.jz;
  const double d = std::hypot(c.dx, c.dy);
  const double zeta = zeta_xy(c);
  // zeta -+ K without cancellation, using (zeta - K)(zeta + K) = 4 D^2
  const double zeta_minus = k > 0.0 ? 4.0 * d * d / (zeta + k) : zeta - k;
  const double zeta_plus = k > 0.0 ? zeta + k : 4.0 * d * d / (zeta - k);
  const double n3 = 2.0 * std::sqrt(zeta * zeta_minus);
  const double n4 = 2.0 * std::sqrt(zeta * zeta_plus);

  const Complex i(0.0, 1.0);
  const Complex minus_conj = 2.0 * Complex(-c.dx, c.dy);  // 2(-Dx + i Dy)
  const Complex plus = 2.0 * Complex(c.dx, c.dy);         // 2(Dx + i Dy)
  const Complex e_psi = std::polar(1.0, std::atan2(c.dy, c.dx));

  SpectralDecomposition4 s;
  s.eigenvalues = {2.0 * j - c.jz, c.jz, -j + zeta, -j - zeta};
  s.eigenvectors[0] = {0.0, kInvSqrt2, kInvSqrt2, 0.0};
  s.eigenvectors[1] = {kInvSqrt2 * std::conj(e_psi), 0.0, 0.0, kInvSqrt2 * e_psi};
  // -i (K - zeta) = i (zeta - K), -i (K + zeta) = -i (zeta + K)
  s.eigenvectors[2] = {minus_conj / n3, i * zeta_minus / n3, -i * zeta_minus / n3, plus / n3};
  s.eigenvectors[3] = {minus_conj / n4, -i * zeta_plus / n4, i * zeta_plus / n4, plus / n4};
  return s;
}

SpectralDecomposition4 sorted_by_energy(SpectralDecomposition4 s) {
  std::array<std::size_t, 4> order{};
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return s.eigenvalues[a] < s.eigenvalues[b]; });
  SpectralDecomposition4 out;
  for (std::size_t k = 0; k < 4; ++k) {
    out.eigenvalues[k] = s.eigenvalues[order[k]];
    out.eigenvectors[k] = s.eigenvectors[order[k]];
  }
  return out;
}

SpectralDecomposition4 spectrum_numeric(const Couplings& c) { return hermitian_eig(build_hamiltonian(c)); }

}  // namespace dmtherm
