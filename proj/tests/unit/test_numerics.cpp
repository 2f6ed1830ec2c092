#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "dmtherm/errors.hpp"
#include "dmtherm/numerics.hpp"
#include "reference.hpp"

using namespace dmtherm;

namespace {

ComplexMatrix4 random_hermitian(std::mt19937_64& g, double scale = 3.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  ComplexMatrix4 m;
  for (std::size_t i = 0; i < 4; ++i) {
    m(i, i) = u(g);
    for (std::size_t j = i + 1; j < 4; ++j) {
      m(i, j) = Complex(u(g), u(g));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

template <typename Fn>
void expect_error(ErrorKind kind, Fn&& fn) {
  try {
    fn();
    FAIL() << "expected " << to_string(kind);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

}  // namespace

TEST(HermitianEig, MatchesEigenOnRandomMatrices) {
  std::mt19937_64 g(11);
  for (int trial = 0; trial < 200; ++trial) {
    const ComplexMatrix4 m = random_hermitian(g);
    const auto s = hermitian_eig(m);
    const Eigen::Vector4d ref_ev = Eigen::SelfAdjointEigenSolver<ref::M4>(ref::to_eigen(m)).eigenvalues();
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(s.eigenvalues[static_cast<std::size_t>(i)], ref_ev(i), 1e-12);
    EXPECT_LT(max_abs_diff(s.reconstruct(), m), 1e-12);
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b) {
        Complex dot = 0.0;
        for (std::size_t k = 0; k < 4; ++k) dot += std::conj(s.eigenvectors[a][k]) * s.eigenvectors[b][k];
        EXPECT_NEAR(std::abs(dot - Complex(a == b ? 1.0 : 0.0)), 0.0, 1e-13);
      }
  }
}

TEST(HermitianEig, AscendingAndExactOnDegenerateInput) {
  const auto s = hermitian_eig(ComplexMatrix4::diagonal({2.0, -1.0, 2.0, -1.0}));
  EXPECT_EQ(s.eigenvalues, (std::array<double, 4>{-1.0, -1.0, 2.0, 2.0}));
  const auto id = hermitian_eig(ComplexMatrix4::identity());
  for (double e : id.eigenvalues) EXPECT_EQ(e, 1.0);
}

TEST(HermitianEig, RejectsNonHermitianAndNonFinite) {
  ComplexMatrix4 m = ComplexMatrix4::identity();
  m(0, 1) = 1e-6;
  expect_error(ErrorKind::NonHermitianInput, [&] { hermitian_eig(m); });
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  m(1, 0) = m(0, 1);
  expect_error(ErrorKind::NonHermitianInput, [&] { hermitian_eig(m); });
}

TEST(SingularValues, MatchEigenSvd) {
  std::mt19937_64 g(5);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 100; ++trial) {
    ComplexMatrix4 m;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = Complex(n(g), n(g));
    const auto sv = singular_values(m);
    const Eigen::Vector4d ref_sv = Eigen::JacobiSVD<ref::M4>(ref::to_eigen(m)).singularValues();
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(sv[static_cast<std::size_t>(i)], ref_sv(i), 1e-12);
  }
}

TEST(Boltzmann, WeightsSumToOneAndFollowEnergies) {
  const auto w = boltzmann_weights({1.0, -2.0, 0.5, 3.0}, 0.7);
  EXPECT_NEAR(w[0] + w[1] + w[2] + w[3], 1.0, 1e-15);
  EXPECT_NEAR(w[0] / w[1], std::exp(-3.0 / 0.7), 1e-15);
  EXPECT_GT(w[1], w[2]);
}

TEST(Boltzmann, GroundManifoldBelowTemperatureFloor) {
  const auto w = boltzmann_weights({1.0, -2.0, -2.0, 3.0}, 1e-12);
  EXPECT_EQ(w[0], 0.0);
  EXPECT_DOUBLE_EQ(w[1], 0.5);
  EXPECT_DOUBLE_EQ(w[2], 0.5);
  EXPECT_EQ(w[3], 0.0);
}

TEST(Boltzmann, RejectsNonPositiveTemperature) {
  expect_error(ErrorKind::NonPositiveTemperature, [] { boltzmann_weights({0, 0, 0, 0}, 0.0); });
  expect_error(ErrorKind::NonPositiveTemperature, [] { boltzmann_weights({0, 0, 0, 0}, -1.0); });
  expect_error(ErrorKind::NonPositiveTemperature,
               [] { boltzmann_weights({0, 0, 0, 0}, std::numeric_limits<double>::quiet_NaN()); });
}

TEST(Gibbs, MatchesMatrixExponential) {
  std::mt19937_64 g(3);
  for (double t : {0.05, 0.3, 1.0, 7.0, 100.0}) {
    const ComplexMatrix4 h = random_hermitian(g);
    const ComplexMatrix4 rho = gibbs_from_spectrum(hermitian_eig(h), t);
    const ref::M4 x = (-ref::to_eigen(h) / t).exp();
    EXPECT_LT(ref::max_diff(rho, x / x.trace()), 1e-12) << "t=" << t;
  }
}

TEST(ValidateDensity, CatchesEachViolation) {
  EXPECT_NO_THROW(validate_density_matrix(ComplexMatrix4::identity() * Complex(0.25)));
  expect_error(ErrorKind::InvalidDensityMatrix, [] { validate_density_matrix(ComplexMatrix4::identity()); });
  expect_error(ErrorKind::InvalidDensityMatrix,
               [] { validate_density_matrix(ComplexMatrix4::diagonal({0.6, 0.6, -0.1, -0.1})); });
  ComplexMatrix4 m = ComplexMatrix4::identity() * Complex(0.25);
  m(0, 3) = 0.1;
  expect_error(ErrorKind::InvalidDensityMatrix, [&] { validate_density_matrix(m); });
}

TEST(Entropy, KnownValues) {
  EXPECT_NEAR(von_neumann_entropy(ComplexMatrix4::identity() * Complex(0.25)), 2.0, 1e-14);
  const ComplexVector<4> bell{M_SQRT1_2, 0.0, 0.0, M_SQRT1_2};
  EXPECT_NEAR(von_neumann_entropy(ComplexMatrix4::projector(bell)), 0.0, 1e-14);
  const std::array<double, 4> p{0.5, 0.25, 0.25, 0.0};
  EXPECT_NEAR(shannon_entropy_bits(p), 1.5, 1e-15);
  EXPECT_EQ(neg_xlog2x(0.0), 0.0);
}

TEST(PartialTrace, MatchesReference) {
  std::mt19937_64 g(9);
  for (int trial = 0; trial < 20; ++trial) {
    const ref::M4 rho = ref::random_density(g);
    const ComplexMatrix4 m = ref::from_eigen(rho);
    const ref::M2 ra = ref::trace_out_b(rho);
    const ref::M2 rb = ref::trace_out_a(rho);
    const auto a = partial_trace(m, Subsystem::A);
    const auto b = partial_trace(m, Subsystem::B);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        EXPECT_NEAR(std::abs(a(i, j) - ra(static_cast<int>(i), static_cast<int>(j))), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(b(i, j) - rb(static_cast<int>(i), static_cast<int>(j))), 0.0, 1e-15);
      }
  }
}

TEST(Cubic, SimpleAndRepeatedRoots) {
  auto r = solve_cubic_real(6.0, 11.0, 6.0);
  EXPECT_NEAR(r[0], 3.0, 1e-14);
  EXPECT_NEAR(r[1], 2.0, 1e-14);
  EXPECT_NEAR(r[2], 1.0, 1e-14);
  r = solve_cubic_real(6.0, 12.0, 8.0);
  for (double x : r) EXPECT_NEAR(x, 2.0, 1e-5);  // triple root: accuracy ~ eps^(1/3)
  r = solve_cubic_real(0.0, 0.0, 0.0);
  for (double x : r) EXPECT_EQ(x, 0.0);
}

TEST(Cubic, WidelySeparatedRootsKeepRelativeAccuracy) {
  const double a = 0.9, b = 3e-9, c = 2e-17;
  const auto r = solve_cubic_real(a + b + c, a * b + a * c + b * c, a * b * c);
  EXPECT_NEAR(r[0] / a, 1.0, 1e-14);
  EXPECT_NEAR(r[1] / b, 1.0, 1e-12);
  EXPECT_NEAR(r[2] / c, 1.0, 1e-10);
}

TEST(Cubic, RandomRealRootsReproduceCoefficients) {
  std::mt19937_64 g(21);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::array<double, 3> x{u(g), u(g), u(g)};
    std::sort(x.begin(), x.end(), std::greater<>());
    const auto r = solve_cubic_real(x[0] + x[1] + x[2], x[0] * x[1] + x[0] * x[2] + x[1] * x[2], x[0] * x[1] * x[2]);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(r[k], x[k], 1e-6) << trial;
  }
}

TEST(Cubic, TightClusterStaysReal) {
  // squared Boltzmann weights at very high temperature: spread far below eps^(1/3)
  for (double spread : {0.0, 1e-16, 1e-12, 1e-10, 1e-8}) {
    const std::array<double, 3> x{0.0625 * (1 + 2 * spread), 0.0625 * (1 + spread), 0.0625};
    const auto r = solve_cubic_real(x[0] + x[1] + x[2], x[0] * x[1] + x[0] * x[2] + x[1] * x[2], x[0] * x[1] * x[2]);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(r[k], 0.0625, 1e-6) << spread;
  }
}

TEST(Cubic, ComplexPairIsReported) {
  // (L - 1)(L^2 + 1)
  expect_error(ErrorKind::ComplexRootsDetected, [] { solve_cubic_real(1.0, 1.0, 1.0); });
  // a narrow pair is still caught: (L - 1)((L - 1)^2 + 1e-12)
  expect_error(ErrorKind::ComplexRootsDetected, [] { solve_cubic_real(3.0, 3.0 + 1e-12, 1.0 + 1e-12); });
}
