#pragma once

#include <array>

#include "dmtherm/model.hpp"
#include "dmtherm/numerics.hpp"

namespace dmtherm {

struct ThermalState {
  ComplexMatrix4 rho;
  double temperature = 0.0;
  Couplings couplings;
  // Z = Tr exp(-H/t). Overflows to +inf for very low t with a negative
  // ground energy; log_partition stays finite.
  double partition_value = 0.0;
  double log_partition = 0.0;
};

// X-shaped state: corners (r, s), centre block (u, v; v*, u).
struct ZEntries {
  double r = 0.0;
  double s = 0.0;
  double u = 0.0;
  Complex v = 0.0;
};

// rows (r1,-q,q,r2), (-q,u1,u2,-q), (q,u2,u1,q), (r2,-q,q,r1)
struct YEntries {
  double r1 = 0.0;
  double r2 = 0.0;
  double u1 = 0.0;
  double u2 = 0.0;
  double q = 0.0;
};

// rows (z1,z3,-z3,z4), (z3*,z2,z5,z3), (-z3*,z5,z2,-z3), (z4*,z3*,-z3*,z1)
struct XYEntries {
  double z1 = 0.0;
  double z2 = 0.0;
  double z5 = 0.0;
  Complex z3 = 0.0;
  Complex z4 = 0.0;
  // Phase-free amplitudes: z3 = i e^{-i psi} m3, z4 = e^{-2 i psi} m4,
  // psi = arg(Dx + i Dy). Everything rotation invariant is built from these.
  double m3 = 0.0;
  double m4 = 0.0;
};

// Normalized Boltzmann weights of a labelled spectrum, plus log Z.
struct Weights {
  std::array<double, 4> w{};
  double log_partition = 0.0;
};

Weights thermal_weights(const std::array<double, 4>& energies, double t);

double partition_z(const Couplings& c, double t);
double partition_y(const Couplings& c, double t);
double partition_xy(const Couplings& c, double t);

ZEntries z_entries(const Couplings& c, double t);
YEntries y_entries(const Couplings& c, double t);
XYEntries xy_entries(const Couplings& c, double t);

ComplexMatrix4 assemble(const ZEntries& e);
ComplexMatrix4 assemble(const YEntries& e);
ComplexMatrix4 assemble(const XYEntries& e);

struct ZThermal {
  ThermalState state;
  ZEntries entries;
};
struct YThermal {
  ThermalState state;
  YEntries entries;
};
struct XYThermal {
  ThermalState state;
  XYEntries entries;
};

ZThermal thermal_state_z(const Couplings& c, double t);
YThermal thermal_state_y(const Couplings& c, double t);
XYThermal thermal_state_xy(const Couplings& c, double t);

// Reference path: Jacobi spectrum of build_hamiltonian, then Gibbs weights.
ThermalState thermal_state_generic(const Couplings& c, double t);

}  // namespace dmtherm
