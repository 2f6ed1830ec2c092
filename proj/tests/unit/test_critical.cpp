#include <gtest/gtest.h>

#include <cmath>

#include "dmtherm/critical.hpp"
#include "dmtherm/entanglement.hpp"
#include "dmtherm/errors.hpp"
#include "reference.hpp"

using namespace dmtherm;

namespace {

// Last temperature where the reference concurrence is positive, found by a
// doubling scan and plain bisection on ref::concurrence.
double reference_tc(const Couplings& c) {
  const auto positive = [&](double t) { return ref::concurrence(ref::gibbs(c, t)) > 0.0; };
  double lo = 1e-2;
  if (!positive(lo)) return 0.0;
  double hi = lo;
  while (positive(hi)) hi *= 2.0;
  lo = hi / 2.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (positive(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST(PhaseBoundary, FerromagneticAnchors) {
  const Couplings f{-1, -1.5, -2, 0, 0, 0};
  ASSERT_TRUE(d_z_star(f).d_star);
  EXPECT_NEAR(*d_z_star(f).d_star, std::sqrt(3.5), 1e-14);
  ASSERT_TRUE(d_y_star(f).d_star);
  EXPECT_NEAR(*d_y_star(f).d_star, std::sqrt(7.0) / 2.0, 1e-14);
  const Couplings xx{-3, -3, -1, 0, 0, 0};
  ASSERT_TRUE(d_y_star(xx).d_star);
  EXPECT_NEAR(*d_y_star(xx).d_star, 2.0 * std::sqrt(3.0), 1e-14);
}

TEST(PhaseBoundary, AbsentForAntiferromagnet) {
  const Couplings a{1, 1.5, 2, 0, 0, 0};
  EXPECT_FALSE(d_z_star(a).d_star);
  EXPECT_FALSE(d_y_star(a).d_star);
  EXPECT_EQ(d_z_star(a).j_greater, 1.5);
  EXPECT_EQ(d_z_star(a).j_less, 1.0);
}

TEST(CriticalTemperature, ClosedFormMatchesReferenceScan) {
  ref::Sampler g(30);
  for (int i = 0; i < 15; ++i) {
    const Couplings z = g.z();
    const auto rz = critical_temperature_z(z);
    if (rz.tc > 0.05) EXPECT_NEAR(rz.tc, reference_tc(z), 1e-6 * std::max(1.0, rz.tc)) << i;
    const Couplings y = g.y();
    const auto ry = critical_temperature_y(y);
    if (ry.tc > 0.05) EXPECT_NEAR(ry.tc, reference_tc(y), 1e-6 * std::max(1.0, ry.tc)) << i;
  }
}

TEST(CriticalTemperature, ConcurrenceChangesSignAtTc) {
  ref::Sampler g(31);
  for (int i = 0; i < 100; ++i) {
    const Couplings c = g.z();
    const auto r = critical_temperature_z(c);
    if (r.tc < 1e-3) continue;
    EXPECT_GT(concurrence_z(c, r.tc * (1 - 1e-6)).margin, 0.0);
    EXPECT_LT(concurrence_z(c, r.tc * (1 + 1e-6)).margin, 0.0);
    EXPECT_LT(std::abs(critical_equation_z(c, r.tc, r.branch)), 1e-9);
  }
}

TEST(CriticalTemperature, ZeroExactlyOnTheBoundary) {
  Couplings c{-1, -1.5, -2, 0, 0, std::sqrt(3.5)};
  auto r = critical_temperature_z(c);
  EXPECT_EQ(r.tc, 0.0);
  EXPECT_EQ(r.branch, TcBranch::ZeroAtBoundary);
  c = {-1, -1.5, -2, 0, std::sqrt(7.0) / 2.0, 0};
  r = critical_temperature_y(c);
  EXPECT_EQ(r.tc, 0.0);
  EXPECT_EQ(r.branch, TcBranch::ZeroAtBoundary);
}

TEST(CriticalTemperature, BranchSwitchesAcrossBoundary) {
  const double dstar = std::sqrt(3.5);
  EXPECT_EQ(critical_temperature_z({-1, -1.5, -2, 0, 0, 0.5 * dstar}).branch, TcBranch::SecondEq);
  EXPECT_EQ(critical_temperature_z({-1, -1.5, -2, 0, 0, 1.5 * dstar}).branch, TcBranch::FirstEq);
  // the antiferromagnet never leaves the first branch
  for (double d : {0.0, 1.0, 4.0}) EXPECT_EQ(critical_temperature_z({1, 1.5, 2, 0, 0, d}).branch, TcBranch::FirstEq);
}

TEST(CriticalTemperature, IsotropicXXCaseHasNoSpuriousSecondRoot) {
  // Jx = Jy: the second equation should have no solution; check it stays negative
  const Couplings c{1, 1, 0.5, 0, 0, 0.8};
  for (double t = 0.01; t < 100; t *= 1.3) EXPECT_LT(critical_equation_z(c, t, TcBranch::SecondEq), 0.0) << t;
}

TEST(CriticalTemperature, OracleForInPlaneDm) {
  EXPECT_NEAR(critical_temperature_oracle({1, 1, 2, 1, 2, 0}), 7.6, 0.2);
  EXPECT_NEAR(critical_temperature_oracle({1, 1, 2, 1, 4, 0}), 11.5, 0.3);
  // closed form and oracle agree where both apply
  const Couplings c{1, 1, 0.2, 0, 0, 1};
  EXPECT_NEAR(critical_temperature_oracle(c), critical_temperature_z(c).tc, 1e-7);
}
