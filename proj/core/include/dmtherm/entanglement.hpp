#pragma once

#include <array>

#include "dmtherm/model.hpp"
#include "dmtherm/numerics.hpp"

namespace dmtherm {

struct ConcurrenceBreakdown {
  double value = 0.0;
  // Wootters: square roots of the eigenvalues of rho S rho* S, descending.
  // Closed forms: the xi / eta quadruple in labelled order (xi1..xi4).
  std::array<double, 4> lambdas{};
  // Signed quantity whose positive part is the concurrence. Changes sign at
  // the sudden-death temperature, so root finders bracket on it.
  double margin = 0.0;
};

ConcurrenceBreakdown concurrence_wootters(const ComplexMatrix4& rho);

ConcurrenceBreakdown concurrence_z(const Couplings& c, double t);

// eta_2 = exp(-beta(|Jx - Jz| + Jz)) / Z, as sometimes quoted, disagrees with the
// spin-flip computation; ending the exponent in Jy (mirroring eta_1) agrees.
enum class Eta2Variant { Jy, Jz };

ConcurrenceBreakdown concurrence_y(const Couplings& c, double t, Eta2Variant variant = Eta2Variant::Jy);

// Characteristic cubic coefficients alpha_1..alpha_3 for rho_XY at (c, t),
// built from the matrix entries z1..z5.
std::array<double, 3> xy_cubic_coefficients(const Couplings& c, double t);

// The same cubic written through the Boltzmann weights: every eigenstate of
// the in-plane Hamiltonian is maximally entangled, so the cubic factors as
// (L - w2^2)(L - w3^2)(L - w4^2). The entry form loses relative accuracy in
// alpha_2, alpha_3 to cancellation when two weights are tiny; this one does not.
std::array<double, 3> xy_cubic_coefficients_spectral(const Couplings& c, double t);

enum class XyCubicForm { Spectral, Entries };

// One eigenvalue (z2 + z5)^2 and three roots of the characteristic cubic.
ConcurrenceBreakdown concurrence_xy(const Couplings& c, double t, XyCubicForm form = XyCubicForm::Spectral);

// Closed form when one applies (classify order), spin-flip oracle otherwise.
ConcurrenceBreakdown concurrence(const Couplings& c, double t);

// Spin-flip oracle on the generic Gibbs state.
ConcurrenceBreakdown concurrence_generic(const Couplings& c, double t);

}  // namespace dmtherm
