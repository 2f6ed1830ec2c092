#include "dmtherm/discord.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "dmtherm/errors.hpp"
#include "dmtherm/parallel.hpp"
#include "dmtherm/thermal.hpp"

namespace dmtherm {

namespace {

constexpr double kPi = std::numbers::pi;

// h((1 + x)/2) for a Bloch length x in [0, 1], written through (1 - x)/2 so
// nearly pure conditional states keep their precision.
double h_of_bloch_length(double x) {
  x = std::clamp(x, 0.0, 1.0);
  const double lo = 0.5 * (1.0 - x);
  const double hi = 0.5 * (1.0 + x);
  return neg_xlog2x(lo) + neg_xlog2x(hi);
}

// Entropy of a 2x2 Hermitian PSD matrix with trace `tr`, normalized by tr.
double entropy2_normalized(const ComplexMatrix2& m, double tr) {
  const double half_gap = std::hypot(0.5 * (m(0, 0).real() - m(1, 1).real()), std::abs(m(0, 1)));
  return h_of_bloch_length(2.0 * half_gap / tr);
}

double entropy2(const ComplexMatrix2& m) { return entropy2_normalized(m, m.trace().real()); }

// rho = (1/4)(I + a.s x I + I x b.s + sum T_ij s_i x s_j)
struct PauliForm {
  std::array<double, 3> a{};
  std::array<double, 3> b{};
  std::array<std::array<double, 3>, 3> t{};
};

double expectation(const ComplexMatrix4& rho, const ComplexMatrix4& op) {
  double acc = 0.0;
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t l = 0; l < 4; ++l) acc += (rho(k, l) * op(l, k)).real();
  return acc;
}

PauliForm pauli_form(const ComplexMatrix4& rho) {
  const std::array<ComplexMatrix2, 3> s = {pauli_x(), pauli_y(), pauli_z()};
  const auto id = ComplexMatrix2::identity();
  PauliForm f;
  for (std::size_t i = 0; i < 3; ++i) {
    f.a[i] = expectation(rho, kron(s[i], id));
    f.b[i] = expectation(rho, kron(id, s[i]));
    for (std::size_t j = 0; j < 3; ++j) f.t[i][j] = expectation(rho, kron(s[i], s[j]));
  }
  return f;
}

// sum_j p_j S(A | Pi_j) for the measurement direction (theta, phi); any real
// angles are accepted, the direction is what matters.
double conditional_entropy_fast(const PauliForm& f, double theta, double phi) {
  const std::array<double, 3> n = {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
  double bn = 0.0;
  std::array<double, 3> tn{};
  for (std::size_t i = 0; i < 3; ++i) {
    bn += f.b[i] * n[i];
    for (std::size_t j = 0; j < 3; ++j) tn[i] += f.t[i][j] * n[j];
  }
  double g = 0.0;
  for (double sign : {1.0, -1.0}) {
    const double two_p = 1.0 + sign * bn;
    if (two_p <= 1e-300) continue;
    double r2 = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      const double ri = f.a[i] + sign * tn[i];
      r2 += ri * ri;
    }
    g += 0.5 * two_p * h_of_bloch_length(std::sqrt(r2) / two_p);
  }
  return g;
}

struct Candidate {
  double value = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

template <typename F>
double golden_section(F&& f, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

MeasurementAngles canonical(double theta, double phi) {
  // fold the direction into the upper hemisphere; -n is the same measurement
  theta = std::remainder(theta, 2.0 * kPi);
  if (theta < 0.0) {
    theta = -theta;
    phi += kPi;
  }
  if (theta > kPi / 2.0) {
    theta = kPi - theta;
    phi += kPi;
  }
  phi = std::fmod(phi, 2.0 * kPi);
  if (phi < 0.0) phi += 2.0 * kPi;
  if (phi >= 2.0 * kPi) phi = 0.0;
  return {theta, phi};
}

// Newton iterations on the tangent plane at the current best direction,
// with finite-difference derivatives. The chart has no pole, so it finishes
// minima near theta = 0 where theta/phi coordinate descent crawls.
template <typename F>
void newton_polish(F&& g_of_angles, Candidate& best, double max_step) {
  constexpr double h = 1e-4;
  for (int it = 0; it < 8; ++it) {
    const double st = std::sin(best.theta), ct = std::cos(best.theta);
    const double sp = std::sin(best.phi), cp = std::cos(best.phi);
    const std::array<double, 3> n0{st * cp, st * sp, ct};
    const std::array<double, 3> e1{ct * cp, ct * sp, -st};
    const std::array<double, 3> e2{-sp, cp, 0.0};
    const auto angles = [&](double u, double v) {
      std::array<double, 3> n{};
      for (std::size_t k = 0; k < 3; ++k) n[k] = n0[k] + u * e1[k] + v * e2[k];
      const double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
      return std::pair{std::acos(std::clamp(n[2] / norm, -1.0, 1.0)), std::atan2(n[1], n[0])};
    };
    const auto g = [&](double u, double v) {
      const auto [th, ph] = angles(u, v);
      return g_of_angles(th, ph);
    };

    const double f0 = best.value;
    const double fpu = g(h, 0.0), fmu = g(-h, 0.0), fpv = g(0.0, h), fmv = g(0.0, -h);
    const double fpp = g(h, h), fpm = g(h, -h), fmp = g(-h, h), fmm = g(-h, -h);
    const double gu = (fpu - fmu) / (2.0 * h);
    const double gv = (fpv - fmv) / (2.0 * h);
    const double huu = (fpu - 2.0 * f0 + fmu) / (h * h);
    const double hvv = (fpv - 2.0 * f0 + fmv) / (h * h);
    const double huv = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
    const double det = huu * hvv - huv * huv;
    if (!(huu > 0.0 && det > 0.0)) return;

    double du = -(hvv * gu - huv * gv) / det;
    double dv = -(huu * gv - huv * gu) / det;
    const double len = std::hypot(du, dv);
    if (len > max_step) {
      du *= max_step / len;
      dv *= max_step / len;
    }
    const double trial = g(du, dv);
    if (!(trial < best.value)) return;
    const auto [th, ph] = angles(du, dv);
    best = {trial, th, ph};
    if (len < 1e-9) return;
  }
}

void check_maximally_mixed_b(double diag_sum) {
  if (std::abs(diag_sum - 0.5) > 1e-12)
    throw Error(ErrorKind::InvalidDensityMatrix, "B marginal is not I/2, closed form does not apply");
}

}  // namespace

std::string_view to_string(DiscordBranch b) {
  switch (b) {
    case DiscordBranch::Numeric: return "Numeric";
    case DiscordBranch::Dz1: return "Dz1";
    case DiscordBranch::Dz2: return "Dz2";
    case DiscordBranch::Y1: return "Y1";
    case DiscordBranch::Y2: return "Y2";
    case DiscordBranch::Y3: return "Y3";
    case DiscordBranch::YPerp: return "YPerp";
  }
  return "Numeric";
}

double binary_entropy(double p) {
  if (!(p >= -1e-12 && p <= 1.0 + 1e-12))
    throw Error(ErrorKind::OutOfRange, "binary_entropy argument " + std::to_string(p) + " outside [0, 1]");
  p = std::clamp(p, 0.0, 1.0);
  return neg_xlog2x(p) + neg_xlog2x(1.0 - p);
}

double mutual_information(const ComplexMatrix4& rho) {
  validate_density_matrix(rho);
  const double sa = entropy2(partial_trace(rho, Subsystem::A));
  const double sb = entropy2(partial_trace(rho, Subsystem::B));
  return sa + sb - von_neumann_entropy(rho);
}

ConditionalEntropy conditional_entropy(const ComplexMatrix4& rho, const MeasurementAngles& angles) {
  validate_density_matrix(rho);
  const double ct = std::cos(angles.theta / 2.0);
  const double st = std::sin(angles.theta / 2.0);
  const Complex ph = std::polar(1.0, angles.phi);
  const std::array<ComplexVector<2>, 2> basis = {ComplexVector<2>{ct, ph * st}, ComplexVector<2>{st, -ph * ct}};

  ConditionalEntropy out;
  std::array<double, 2> probs{};
  for (std::size_t j = 0; j < 2; ++j) {
    // unnormalized post-measurement state of A: <Bj|_B rho |Bj>_B
    ComplexMatrix2 ra;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l)
          for (std::size_t m = 0; m < 2; ++m)
            ra(i, k) += std::conj(basis[j][l]) * rho(2 * i + l, 2 * k + m) * basis[j][m];
    const double p = std::max(ra.trace().real(), 0.0);
    probs[j] = p;
    if (p > 1e-300) out.value += p * entropy2_normalized(ra, p);
  }
  out.p1 = probs[0];
  out.p2 = probs[1];
  return out;
}

DiscordBreakdown discord_grid_oracle(const ComplexMatrix4& rho, const GridOptions& opts) {
  if (opts.n_theta < 64 || opts.n_phi < 128)
    throw Error(ErrorKind::OutOfRange, "grid needs n_theta >= 64 and n_phi >= 128");
  validate_density_matrix(rho);
  const PauliForm f = pauli_form(rho);

  const double d_theta = (kPi / 2.0) / (opts.n_theta - 1);
  const double d_phi = 2.0 * kPi / opts.n_phi;

  std::vector<Candidate> rows(static_cast<std::size_t>(opts.n_theta));
  parallel_for(rows.size(), [&](std::size_t i) {
    const double theta = d_theta * static_cast<double>(i);
    Candidate best{conditional_entropy_fast(f, theta, 0.0), theta, 0.0};
    for (int j = 1; j < opts.n_phi; ++j) {
      const double phi = d_phi * j;
      const double g = conditional_entropy_fast(f, theta, phi);
      if (g < best.value) best = {g, theta, phi};
    }
    rows[i] = best;
  });

  Candidate best = rows.front();
  for (const auto& r : rows)
    if (r.value < best.value) best = r;

  // coordinate descent, one grid cell either side; theta may leave [0, pi/2]
  for (int round = 0; round < opts.refine_rounds; ++round) {
    const double th = golden_section([&](double x) { return conditional_entropy_fast(f, x, best.phi); },
                                     best.theta - d_theta, best.theta + d_theta, 1e-10);
    const double g_th = conditional_entropy_fast(f, th, best.phi);
    if (g_th < best.value) best = {g_th, th, best.phi};
    const double ph = golden_section([&](double x) { return conditional_entropy_fast(f, best.theta, x); },
                                     best.phi - d_phi, best.phi + d_phi, 1e-10);
    const double g_ph = conditional_entropy_fast(f, best.theta, ph);
    if (g_ph < best.value) best = {g_ph, best.theta, ph};
  }

  newton_polish([&](double th, double ph) { return conditional_entropy_fast(f, th, ph); }, best, d_theta);

  const double sa = entropy2(partial_trace(rho, Subsystem::A));
  const double sb = entropy2(partial_trace(rho, Subsystem::B));
  const double sab = von_neumann_entropy(rho);

  DiscordBreakdown out;
  out.value = sb - sab + best.value;
  out.mutual_info = sa + sb - sab;
  out.classical_corr = sa - best.value;
  out.branch = DiscordBranch::Numeric;
  out.minimizer = canonical(best.theta, best.phi);
  return out;
}

DiscordBreakdown discord_z(const Couplings& c, double t) {
  const auto w = thermal_weights(spectrum_z(c).eigenvalues, t).w;
  const auto e = z_entries(c, t);
  check_maximally_mixed_b(e.r + e.u);

  const double s_ab = shannon_entropy_bits(w);
  const double dz1 = binary_entropy(0.5 + std::abs(e.s) + std::abs(e.v));
  const double dz2 = 2.0 * neg_xlog2x(e.r) + 2.0 * neg_xlog2x(e.u) - 1.0;

  DiscordBreakdown out;
  const double g = std::min(dz1, dz2);
  out.value = 1.0 - s_ab + g;
  out.mutual_info = 2.0 - s_ab;
  out.classical_corr = 1.0 - g;
  out.branch = dz1 <= dz2 ? DiscordBranch::Dz1 : DiscordBranch::Dz2;
  if (out.branch == DiscordBranch::Dz2) {
    out.minimizer = MeasurementAngles{0.0, 0.0};
  } else {
    // Equatorial, with the azimuth lining up the phases of s and v:
    // phi = (arg v - arg s) / 2 mod pi in this basis. The mirrored choice is
    // kept as a cheap guard against a flipped phase convention.
    const ComplexMatrix4 rho = assemble(e);
    const double half = 0.5 * (std::arg(e.v) - std::arg(Complex(e.s)));
    const MeasurementAngles m0 = canonical(kPi / 2.0, half);
    const MeasurementAngles m1 = canonical(kPi / 2.0, -half);
    out.minimizer = conditional_entropy(rho, m0).value <= conditional_entropy(rho, m1).value ? m0 : m1;
  }
  return out;
}

YCandidates y_candidates(const Couplings& c, double t) {
  const auto e = y_entries(c, t);
  const double a = e.r1 - e.u1;
  const double b = e.r2 + e.u2;
  const double q2 = e.q * e.q;
  YCandidates y;
  y.y1 = a * a + 4.0 * q2;
  y.y2 = 0.5 * (8.0 * q2 + a * a + b * b + std::abs(a - b) * std::sqrt(16.0 * q2 + (a + b) * (a + b)));
  y.y3 = b * b + 4.0 * q2;
  y.y_perp = (e.r2 - e.u2) * (e.r2 - e.u2);
  return y;
}

double y_of_angles(const Couplings& c, double t, const MeasurementAngles& angles) {
  const auto e = y_entries(c, t);
  const double ct = std::cos(angles.theta), st = std::sin(angles.theta);
  const double cp = std::cos(angles.phi);
  const double a = e.r1 - e.u1;
  const double b = e.r2 + e.u2;
  return (a * a + 4.0 * e.q * e.q) * ct * ct +
         (4.0 * e.q * e.q * cp * cp + e.r2 * e.r2 + e.u2 * e.u2 + 2.0 * e.r2 * e.u2 * std::cos(2.0 * angles.phi)) *
             st * st +
         4.0 * e.q * (b - a) * st * ct * cp;
}

DiscordBreakdown discord_y(const Couplings& c, double t, YMaxRule rule) {
  const auto w = thermal_weights(spectrum_y(c).eigenvalues, t).w;
  const auto e = y_entries(c, t);
  check_maximally_mixed_b(e.r1 + e.u1);
  const auto y = y_candidates(c, t);

  double y_max = y.y2;
  DiscordBranch branch = DiscordBranch::Y2;
  if (rule == YMaxRule::AllStationary) {
    // y2 already dominates y1 and y3; only y_perp can beat it
    const std::array<std::pair<double, DiscordBranch>, 4> all = {
        {{y.y2, DiscordBranch::Y2}, {y.y1, DiscordBranch::Y1}, {y.y3, DiscordBranch::Y3}, {y.y_perp, DiscordBranch::YPerp}}};
    for (const auto& [val, tag] : all)
      if (val > y_max) {
        y_max = val;
        branch = tag;
      }
  }

  double root = std::sqrt(std::max(y_max, 0.0));
  if (root > 0.5 + 1e-9) throw Error(ErrorKind::YMaxOutOfRange, "sqrt(y_max) = " + std::to_string(root));
  root = std::min(root, 0.5);

  const double s_ab = shannon_entropy_bits(w);
  const double g = binary_entropy(0.5 + root);

  DiscordBreakdown out;
  out.value = 1.0 - s_ab + g;
  out.mutual_info = 2.0 - s_ab;
  out.classical_corr = 1.0 - g;
  out.branch = branch;
  switch (branch) {
    case DiscordBranch::Y1: out.minimizer = MeasurementAngles{0.0, 0.0}; break;
    case DiscordBranch::Y3: out.minimizer = MeasurementAngles{kPi / 2.0, 0.0}; break;
    case DiscordBranch::YPerp: out.minimizer = MeasurementAngles{kPi / 2.0, kPi / 2.0}; break;
    case DiscordBranch::Y2: {
      // stationary point of y1 cos^2 + y3 sin^2 + 4q(b - a) sin cos in the xz plane
      const double a = e.r1 - e.u1, b = e.r2 + e.u2;
      out.minimizer = canonical(0.5 * std::atan2(4.0 * e.q * (b - a), y.y1 - y.y3), 0.0);
      break;
    }
    default: break;
  }
  return out;
}

DiscordBreakdown discord(const Couplings& c, double t) {
  switch (classify(c)) {
    case DmCase::ZOnly: return discord_z(c, t);
    case DmCase::YOnly: return discord_y(c, t);
    default: break;
  }
  return discord_grid_oracle(thermal_state_generic(c, t).rho);
}

}  // namespace dmtherm
