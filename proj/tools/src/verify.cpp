#include "verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>

#include "dmtherm/critical.hpp"
#include "dmtherm/discord.hpp"
#include "dmtherm/entanglement.hpp"
#include "dmtherm/errors.hpp"
#include "dmtherm/model.hpp"
#include "dmtherm/thermal.hpp"
#include "output.hpp"

namespace dmtherm::cli {

namespace {

struct Draw {
  Couplings c;
  double t = 1.0;
};

enum class Family { Z, Y, XY };

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double temperature() { return std::exp(uniform(std::log(0.05), std::log(100.0))); }

  Draw draw(Family f) {
    Draw d;
    d.c.jx = uniform(-3.0, 3.0);
    d.c.jy = uniform(-3.0, 3.0);
    d.c.jz = uniform(-3.0, 3.0);
    switch (f) {
      case Family::Z: d.c.dz = uniform(-4.0, 4.0); break;
      case Family::Y: d.c.dy = uniform(-4.0, 4.0); break;
      case Family::XY:
        d.c.jy = d.c.jx;
        d.c.dx = uniform(-4.0, 4.0);
        d.c.dy = uniform(-4.0, 4.0);
        break;
    }
    d.t = temperature();
    return d;
  }

 private:
  std::mt19937_64 rng_;
};

std::uint64_t suite_seed(std::uint64_t seed, int index) {
  // splitmix64 step, decorrelates neighbouring suite indices
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void record(SuiteResult& s, double deviation) {
  ++s.draws;
  if (!(deviation <= s.tolerance)) ++s.failures;  // NaN counts as a failure
  if (std::isnan(deviation) || deviation > s.max_deviation) s.max_deviation = deviation;
}

void record_error(SuiteResult& s, const Error& e) {
  ++s.draws;
  ++s.failures;
  if (s.note.empty()) s.note = e.what();
}

template <class Fn>
SuiteResult run_suite(std::string name, double tol, int draws, std::uint64_t seed, Fn&& body) {
  SuiteResult s;
  s.name = std::move(name);
  s.tolerance = tol;
  Sampler sampler(seed);
  for (int i = 0; i < draws; ++i) {
    try {
      body(sampler, s);
    } catch (const Error& e) {
      record_error(s, e);
    }
  }
  return s;
}

double eigen_deviation(const SpectralDecomposition4& analytic, const SpectralDecomposition4& numeric) {
  const auto a = sorted_by_energy(analytic).eigenvalues;
  double dev = 0.0;
  double scale = 1.0;
  for (std::size_t i = 0; i < 4; ++i) {
    dev = std::max(dev, std::abs(a[i] - numeric.eigenvalues[i]));
    scale = std::max(scale, std::abs(a[i]));
  }
  return dev / scale;
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.informational || s.failures == 0; });
}

int draws_for(VerifyLevel level) { return level == VerifyLevel::Full ? 1000 : 50; }

VerifyReport run_verify(VerifyLevel level, std::uint64_t seed, std::ostream* progress) {
  const auto started = std::chrono::steady_clock::now();
  const int n = draws_for(level);
  VerifyReport report;
  report.seed = seed;
  report.level = level;
  int index = 0;
  auto add = [&](SuiteResult s) {
    if (progress) *progress << "  " << s.name << (s.informational || s.failures == 0 ? " ok" : " FAILED") << '\n';
    report.suites.push_back(std::move(s));
  };
  auto next_seed = [&] { return suite_seed(seed, index++); };

  add(run_suite("spectrum_z", 1e-12, n, next_seed(), [](Sampler& g, SuiteResult& s) {
    const Draw d = g.draw(Family::Z);
    record(s, eigen_deviation(spectrum_z(d.c), spectrum_numeric(d.c)));
  }));
  add(run_suite("spectrum_y", 1e-12, n, next_seed(), [](Sampler& g, SuiteResult& s) {
    const Draw d = g.draw(Family::Y);
    record(s, eigen_deviation(spectrum_y(d.c), spectrum_numeric(d.c)));
  }));
  add(run_suite("spectrum_xy", 1e-12, n, next_seed(), [](Sampler& g, SuiteResult& s) {
    const Draw d = g.draw(Family::XY);
    record(s, eigen_deviation(spectrum_xy(d.c), spectrum_numeric(d.c)));
  }));

  add(run_suite("thermal_z", 1e-12, n, next_seed(), [](Sampler& g, SuiteResult& s) {
    const Draw d = g.draw(Family::Z);
    record(s, max_abs_diff(thermal_state_z(d.c, d.t).state.rho, thermal_state_generic(d.c, d.t).rho));
  }));
  add(run_suite("thermal_y", 1e-12, n, next_seed(), [](Sampler& g, SuiteResult& s) {
    const Draw d = g.draw(Family::Y);
    record(s, max_abs_diff(thermal_state_y(d.c, d.t).state.rho, thermal_state_generic(d.c, d.t).rho));
  }));
  add(run_suite("thermal_xy", 1e-12, n, next_seed(), [](Sampler& g, SuiteResult& s) {
    const Draw d = g.draw(Family::XY);
    record(s, max_abs_diff(thermal_state_xy(d.c, d.t).state.rho, thermal_state_generic(d.c, d.t).rho));
  }));

  add(run_suite("concurrence_z", 1e-8, n, next_seed(), [](Sampler& g, SuiteResult& s) {
    const Draw d = g.draw(Family::Z);
    record(s, std::abs(concurrence_z(d.c, d.t).value - concurrence_generic(d.c, d.t).value));
  }));
  add(run_suite("concurrence_y", 1e-8, n, next_seed(), [](Sampler& g, SuiteResult& s) {
    const Draw d = g.draw(Family::Y);
    record(s, std::abs(concurrence_y(d.c, d.t).value - concurrence_generic(d.c, d.t).value));
  }));
  add(run_suite("concurrence_xy", 1e-8, n, next_seed(), [](Sampler& g, SuiteResult& s) {
    const Draw d = g.draw(Family::XY);
    record(s, std::abs(concurrence_xy(d.c, d.t).value - concurrence_generic(d.c, d.t).value));
  }));
  {
    // cubic coefficients from the matrix entries instead of the weights
    auto s = run_suite("concurrence_xy_entries", 1e-8, n, next_seed(), [](Sampler& g, SuiteResult& s) {
      const Draw d = g.draw(Family::XY);
      record(s, std::abs(concurrence_xy(d.c, d.t, XyCubicForm::Entries).value - concurrence_generic(d.c, d.t).value));
    });
    s.informational = true;
    add(std::move(s));
  }
  add(run_suite("concurrence_xy_rotation", 1e-10, n, next_seed(), [](Sampler& g, SuiteResult& s) {
    const Draw d = g.draw(Family::XY);
    const double a = g.uniform(0.0, 2.0 * std::numbers::pi);
    Couplings r = d.c;
    r.dx = std::cos(a) * d.c.dx - std::sin(a) * d.c.dy;
    r.dy = std::sin(a) * d.c.dx + std::cos(a) * d.c.dy;
    record(s, std::abs(concurrence_xy(d.c, d.t).value - concurrence_xy(r, d.t).value));
  }));

  add(run_suite("discord_z", 1e-6, n, next_seed(), [](Sampler& g, SuiteResult& s) {
    const Draw d = g.draw(Family::Z);
    const double oracle = discord_grid_oracle(thermal_state_generic(d.c, d.t).rho).value;
    record(s, std::abs(discord_z(d.c, d.t).value - oracle));
  }));

  // The y2-only rule is tracked alongside as a finding, not a gate.
  SuiteResult y2_only;
  y2_only.name = "discord_y_y2_only";
  y2_only.tolerance = 1e-6;
  y2_only.informational = true;
  int perp_wins = 0;
  add(run_suite("discord_y", 1e-6, n, next_seed(), [&](Sampler& g, SuiteResult& s) {
    const Draw d = g.draw(Family::Y);
    const double oracle = discord_grid_oracle(thermal_state_generic(d.c, d.t).rho).value;
    record(s, std::abs(discord_y(d.c, d.t).value - oracle));
    const YCandidates y = y_candidates(d.c, d.t);
    if (y.y_perp > y.y2) ++perp_wins;
    try {
      record(y2_only, std::abs(discord_y(d.c, d.t, YMaxRule::Y2Only).value - oracle));
    } catch (const Error& e) {
      record_error(y2_only, e);
    }
  }));
  y2_only.note = "y_perp > y2 on " + std::to_string(perp_wins) + " of " + std::to_string(y2_only.draws) + " draws";
  add(std::move(y2_only));

  add(run_suite("y2_dominates_y1_y3", 1e-14, n, next_seed(), [](Sampler& g, SuiteResult& s) {
    const Draw d = g.draw(Family::Y);
    const YCandidates y = y_candidates(d.c, d.t);
    record(s, std::max(0.0, std::max(y.y1, y.y3) - y.y2));
  }));

  // Closed-form T_c against the concurrence scan. Very small T_c sits below
  // the scan's starting temperature and is skipped.
  auto tc_suite = [&](std::string name, Family f) {
    int skipped = 0;
    auto s = run_suite(std::move(name), 1e-6, n / 5 + 1, next_seed(), [&](Sampler& g, SuiteResult& suite) {
      const Draw d = g.draw(f);
      const CriticalResult cr = f == Family::Z ? critical_temperature_z(d.c) : critical_temperature_y(d.c);
      if (cr.tc < 1e-2) {
        ++skipped;
        return;
      }
      record(suite, std::abs(cr.tc - critical_temperature_oracle(d.c)) / std::max(1.0, cr.tc));
    });
    if (skipped) s.note = std::to_string(skipped) + " draws with T_c < 0.01 skipped";
    add(std::move(s));
  };
  tc_suite("tc_z", Family::Z);
  tc_suite("tc_y", Family::Y);

  {
    SuiteResult s;
    s.name = "phase_boundary";
    s.tolerance = 1e-12;
    const Couplings ferro{-1.0, -1.5, -2.0, 0.0, 0.0, 0.0};
    const Couplings yy{-3.0, -3.0, -1.0, 0.0, 0.0, 0.0};
    const auto check = [&](const PhaseBoundary& b, double expected) {
      record(s, b.d_star ? std::abs(*b.d_star - expected) : std::numeric_limits<double>::infinity());
    };
    check(d_z_star(ferro), std::sqrt(3.5));
    check(d_y_star(ferro), std::sqrt(7.0) / 2.0);
    check(d_y_star(yy), 2.0 * std::sqrt(3.0));
    add(std::move(s));
  }

  {
    // T_c for D in the xy plane, J = 1, Jz = 2: quoted as ~7.6 and ~11.5.
    // Deviation is measured in units of the accepted band half-width.
    SuiteResult s;
    s.name = "tc_xy_anchor";
    s.tolerance = 1.0;
    s.note = "deviation / band half-width";
    try {
      record(s, std::abs(critical_temperature_oracle({1.0, 1.0, 2.0, 1.0, 2.0, 0.0}) - 7.6) / 0.2);
      record(s, std::abs(critical_temperature_oracle({1.0, 1.0, 2.0, 1.0, 4.0, 0.0}) - 11.5) / 0.3);
    } catch (const Error& e) {
      record_error(s, e);
    }
    add(std::move(s));
  }

  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

void print_report(std::ostream& os, const VerifyReport& r) {
  os << "verify " << (r.level == VerifyLevel::Full ? "full" : "quick") << " seed=" << r.seed << '\n';
  for (const SuiteResult& s : r.suites) {
    const char* status = s.informational ? "info" : (s.failures == 0 ? "pass" : "FAIL");
    os << "  " << status << "  " << s.name << "  draws=" << s.draws << "  max_dev=" << digits17(s.max_deviation)
       << "  tol=" << shortest(s.tolerance);
    if (s.failures) os << "  failures=" << s.failures;
    if (!s.note.empty()) os << "  (" << s.note << ")";
    os << '\n';
  }
  os << (r.passed() ? "all suites passed" : "verification FAILED") << " in " << shortest(std::round(r.seconds * 100) / 100)
     << " s\n";
}

nlohmann::json to_json(const VerifyReport& r) {
  nlohmann::json j;
  j["level"] = r.level == VerifyLevel::Full ? "full" : "quick";
  j["seed"] = r.seed;
  j["passed"] = r.passed();
  j["seconds"] = r.seconds;
  nlohmann::json suites = nlohmann::json::array();
  for (const SuiteResult& s : r.suites) {
    suites.push_back({{"name", s.name},
                      {"draws", s.draws},
                      {"failures", s.failures},
                      {"max_deviation", s.max_deviation},
                      {"tolerance", s.tolerance},
                      {"informational", s.informational},
                      {"note", s.note}});
  }
  j["suites"] = std::move(suites);
  return j;
}

}  // namespace dmtherm::cli
