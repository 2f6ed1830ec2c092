#pragma once

#include <optional>
#include <string_view>

#include "dmtherm/model.hpp"
#include "dmtherm/numerics.hpp"

namespace dmtherm {

// Projective measurement on qubit B along n = (sin t cos p, sin t sin p, cos t):
//   |B1> = cos(t/2)|0> + e^{ip} sin(t/2)|1>,  |B2> = sin(t/2)|0> - e^{ip} cos(t/2)|1>.
struct MeasurementAngles {
  double theta = 0.0;  // [0, pi/2]
  double phi = 0.0;    // [0, 2 pi)
};

// Which candidate produced the minimum. Numeric means a grid search.
enum class DiscordBranch { Numeric, Dz1, Dz2, Y1, Y2, Y3, YPerp };

std::string_view to_string(DiscordBranch b);

struct DiscordBreakdown {
  double value = 0.0;           // bits
  double mutual_info = 0.0;     // I(A:B)
  double classical_corr = 0.0;  // J(A:B) at the optimal measurement
  DiscordBranch branch = DiscordBranch::Numeric;
  std::optional<MeasurementAngles> minimizer;
};

// h(p) = -p log2 p - (1-p) log2(1-p). p within 1e-12 outside [0, 1] is
// clamped; anything further out throws OutOfRange.
double binary_entropy(double p);

double mutual_information(const ComplexMatrix4& rho);

struct ConditionalEntropy {
  double value = 0.0;  // sum_j p_j S(A | Pi_j), bits
  double p1 = 0.0;
  double p2 = 0.0;
};

ConditionalEntropy conditional_entropy(const ComplexMatrix4& rho, const MeasurementAngles& angles);

struct GridOptions {
  int n_theta = 181;
  int n_phi = 361;
  int refine_rounds = 2;
};

// Exhaustive search over measurement directions followed by golden-section
// coordinate descent. Rows run in parallel; ties go to smaller theta, then
// smaller phi, so the result does not depend on the thread count.
DiscordBreakdown discord_grid_oracle(const ComplexMatrix4& rho, const GridOptions& opts = {});

// X-state closed form: min of D_z1 = h(1/2 + |s| + |v|) and D_z2 = -2r log r - 2u log u - 1.
DiscordBreakdown discord_z(const Couplings& c, double t);

// y_max candidates for rho_Y. Keeping only y2 (Y2Only) misses that the
// measurement along the y axis gives y_perp = (r2 - u2)^2, which wins on part
// of parameter space. AllStationary takes the max over y1, y2, y3, y_perp.
enum class YMaxRule { AllStationary, Y2Only };

struct YCandidates {
  double y1 = 0.0;
  double y2 = 0.0;
  double y3 = 0.0;
  double y_perp = 0.0;
};

YCandidates y_candidates(const Couplings& c, double t);

// y(theta, phi) of the conditional-entropy closed form for rho_Y.
double y_of_angles(const Couplings& c, double t, const MeasurementAngles& angles);

DiscordBreakdown discord_y(const Couplings& c, double t, YMaxRule rule = YMaxRule::AllStationary);

// Closed form for the single-axis cases, grid oracle on the generic Gibbs state otherwise.
DiscordBreakdown discord(const Couplings& c, double t);

}  // namespace dmtherm
