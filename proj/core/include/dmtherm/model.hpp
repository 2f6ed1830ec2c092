#pragma once

#include <string_view>

#include "dmtherm/numerics.hpp"

namespace dmtherm {

// Exchange couplings J and DM vector D, energy units with k_B = 1.
struct Couplings {
  double jx = 0.0;
  double jy = 0.0;
  double jz = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  double dz = 0.0;

  bool operator==(const Couplings&) const = default;
};

bool is_finite(const Couplings& c);

enum class DmCase { ZOnly, YOnly, XYPlane, General };

std::string_view to_string(DmCase c);

// Exact comparisons on purpose: couplings are user input, and anything that
// is not exactly a special case goes through the numeric path.
// Priority: ZOnly, then YOnly, then XYPlane.
DmCase classify(const Couplings& c);

// Which closed forms apply. These are looser than classify(): D = 0 admits
// all three, and the in-plane form only needs dz = 0 and jx = jy.
bool admits_z_form(const Couplings& c);
bool admits_y_form(const Couplings& c);
bool admits_xy_form(const Couplings& c);

// J_x sx sx + J_y sy sy + J_z sz sz + D . (s1 x s2) in the basis |00>,|01>,|10>,|11>.
ComplexMatrix4 build_hamiltonian(const Couplings& c);

// xi = sqrt(4 Dz^2 + (Jx + Jy)^2)
double xi_z(const Couplings& c);
// eta = sqrt(4 Dy^2 + (Jx + Jz)^2)
double eta_y(const Couplings& c);
// zeta = sqrt(4 (Dx^2 + Dy^2) + (J + Jz)^2), J = Jx = Jy
double zeta_xy(const Couplings& c);

// Mixing phase of the Z-case eigenvectors, theta = atan2(-2 Dz, Jx + Jy).
double theta_z(const Couplings& c);

struct MixingAngles {
  double phi1 = 0.0;
  double phi2 = 0.0;
};

// phi1, phi2 of |y3>, |y4>, taken from (numerator, denominator) pairs so the
// Dy -> 0 limit stays finite. phi1 - phi2 = +-pi/2 always.
MixingAngles mixing_angles_y(const Couplings& c);

// The analytic spectra below keep the conventional level labelling, i.e. eigenvalues[i]
// is E_{i+1} and is NOT sorted. Use sorted_by_energy() to compare with
// hermitian_eig.
SpectralDecomposition4 spectrum_z(const Couplings& c);
SpectralDecomposition4 spectrum_y(const Couplings& c);
// Throws DegenerateDmPhase when dx = dy = 0: the phase of |E2> is undefined.
SpectralDecomposition4 spectrum_xy(const Couplings& c);

SpectralDecomposition4 sorted_by_energy(SpectralDecomposition4 s);

// Spectrum via the Jacobi solver; valid for every coupling set.
SpectralDecomposition4 spectrum_numeric(const Couplings& c);

}  // namespace dmtherm
