#include "dmtherm/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "dmtherm/critical.hpp"
#include "dmtherm/discord.hpp"
#include "dmtherm/entanglement.hpp"
#include "dmtherm/errors.hpp"
#include "dmtherm/parallel.hpp"
#include "dmtherm/thermal.hpp"

namespace dmtherm {

namespace {

constexpr std::array<std::pair<Parameter, std::string_view>, 7> kParameterNames = {{
    {Parameter::T, "t"},
    {Parameter::Jx, "jx"},
    {Parameter::Jy, "jy"},
    {Parameter::Jz, "jz"},
    {Parameter::Dx, "dx"},
    {Parameter::Dy, "dy"},
    {Parameter::Dz, "dz"},
}};

constexpr std::array<std::pair<Quantity, std::string_view>, 12> kQuantityNames = {{
    {Quantity::Concurrence, "concurrence"},
    {Quantity::ConcurrenceZ, "concurrence_z"},
    {Quantity::ConcurrenceY, "concurrence_y"},
    {Quantity::ConcurrenceXY, "concurrence_xy"},
    {Quantity::ConcurrenceGeneric, "concurrence_generic"},
    {Quantity::Discord, "discord"},
    {Quantity::DiscordZ, "discord_z"},
    {Quantity::DiscordY, "discord_y"},
    {Quantity::DiscordOracle, "discord_oracle"},
    {Quantity::Tc, "tc"},
    {Quantity::PartitionValue, "partition"},
    {Quantity::DiscordAtTc, "discord_at_tc"},
}};

void set(Couplings& c, double& t, Parameter p, double v) {
  switch (p) {
    case Parameter::T: t = v; break;
    case Parameter::Jx: c.jx = v; break;
    case Parameter::Jy: c.jy = v; break;
    case Parameter::Jz: c.jz = v; break;
    case Parameter::Dx: c.dx = v; break;
    case Parameter::Dy: c.dy = v; break;
    case Parameter::Dz: c.dz = v; break;
  }
}

bool needs_temperature(Quantity q) { return q != Quantity::Tc && q != Quantity::DiscordAtTc; }

// Closed-form applicability per point; failures here make the whole spec incompatible.
bool admissible(Quantity q, const Couplings& c) {
  switch (q) {
    case Quantity::ConcurrenceZ:
    case Quantity::DiscordZ: return admits_z_form(c);
    case Quantity::ConcurrenceY:
    case Quantity::DiscordY: return admits_y_form(c);
    case Quantity::ConcurrenceXY: return admits_xy_form(c);
    case Quantity::DiscordAtTc: {
      const DmCase k = classify(c);
      return k == DmCase::ZOnly || k == DmCase::YOnly;
    }
    default: return true;
  }
}

CriticalResult critical_for(const Couplings& c) {
  if (classify(c) == DmCase::ZOnly) return critical_temperature_z(c);
  if (classify(c) == DmCase::YOnly) return critical_temperature_y(c);
  throw Error(ErrorKind::IncompatibleQuantity, "closed-form T_c needs D along z or y");
}

// Ground-state limit used when T_c is exactly zero.
constexpr double kZeroTemperatureProbe = 1e-12;

struct PointResult {
  double value = 0.0;
  std::string tag;
};

PointResult evaluate_tagged(Quantity q, const Couplings& c, double t) {
  if (q == Quantity::Tc) {
    const DmCase k = classify(c);
    if (k == DmCase::ZOnly || k == DmCase::YOnly) {
      const auto r = critical_for(c);
      return {r.tc, std::string(to_string(r.branch))};
    }
    return {critical_temperature_oracle(c), "Oracle"};
  }
  return {evaluate(q, c, t), {}};
}

}  // namespace

std::string_view to_string(Parameter p) {
  for (const auto& [k, name] : kParameterNames)
    if (k == p) return name;
  return "t";
}

std::optional<Parameter> parse_parameter(std::string_view name) {
  for (const auto& [k, n] : kParameterNames)
    if (n == name) return k;
  return std::nullopt;
}

std::string_view to_string(Quantity q) {
  for (const auto& [k, name] : kQuantityNames)
    if (k == q) return name;
  return "concurrence";
}

std::optional<Quantity> parse_quantity(std::string_view name) {
  for (const auto& [k, n] : kQuantityNames)
    if (n == name) return k;
  return std::nullopt;
}

std::string_view column_name(Quantity q) {
  switch (q) {
    case Quantity::Concurrence:
    case Quantity::ConcurrenceZ:
    case Quantity::ConcurrenceY:
    case Quantity::ConcurrenceXY:
    case Quantity::ConcurrenceGeneric: return "concurrence";
    case Quantity::Discord:
    case Quantity::DiscordZ:
    case Quantity::DiscordY:
    case Quantity::DiscordOracle: return "discord";
    case Quantity::Tc: return "tc";
    case Quantity::PartitionValue: return "partition";
    case Quantity::DiscordAtTc: return "discord_at_tc";
  }
  return "value";
}

double evaluate(Quantity q, const Couplings& c, double t) {
  switch (q) {
    case Quantity::Concurrence: return concurrence(c, t).value;
    case Quantity::ConcurrenceZ: return concurrence_z(c, t).value;
    case Quantity::ConcurrenceY: return concurrence_y(c, t).value;
    case Quantity::ConcurrenceXY: return concurrence_xy(c, t).value;
    case Quantity::ConcurrenceGeneric: return concurrence_generic(c, t).value;
    case Quantity::Discord: return discord(c, t).value;
    case Quantity::DiscordZ: return discord_z(c, t).value;
    case Quantity::DiscordY: return discord_y(c, t).value;
    case Quantity::DiscordOracle: return discord_grid_oracle(thermal_state_generic(c, t).rho).value;
    case Quantity::Tc: {
      const DmCase k = classify(c);
      if (k == DmCase::ZOnly || k == DmCase::YOnly) return critical_for(c).tc;
      return critical_temperature_oracle(c);
    }
    case Quantity::PartitionValue: return thermal_state_generic(c, t).partition_value;
    case Quantity::DiscordAtTc: {
      const double tc = std::max(critical_for(c).tc, kZeroTemperatureProbe);
      return classify(c) == DmCase::ZOnly ? discord_z(c, tc).value : discord_y(c, tc).value;
    }
  }
  throw Error(ErrorKind::IncompatibleQuantity, "unknown quantity");
}

std::vector<double> axis_values(const Axis& axis, double t_floor) {
  double start = axis.start;
  if (axis.parameter == Parameter::T) start = std::max(start, t_floor);
  std::vector<double> v(static_cast<std::size_t>(axis.count));
  for (int i = 0; i < axis.count; ++i)
    v[static_cast<std::size_t>(i)] = std::lerp(start, axis.stop, static_cast<double>(i) / (axis.count - 1));
  return v;
}

void validate(const SweepSpec& spec) {
  std::vector<const Axis*> axes{&spec.axis1};
  if (spec.axis2) axes.push_back(&*spec.axis2);
  for (const Axis* a : axes) {
    if (a->count < 2) throw Error(ErrorKind::OutOfRange, "axis count must be at least 2");
    if (!(a->start < a->stop)) throw Error(ErrorKind::OutOfRange, "axis start must be below stop");
    if (!std::isfinite(a->start) || !std::isfinite(a->stop)) throw Error(ErrorKind::OutOfRange, "non-finite axis bound");
    if (a->parameter == Parameter::T && !needs_temperature(spec.quantity))
      throw Error(ErrorKind::IncompatibleQuantity, std::string(to_string(spec.quantity)) + " cannot take a temperature axis");
    if (a->parameter == Parameter::T && a->stop <= spec.t_floor)
      throw Error(ErrorKind::OutOfRange, "temperature axis lies entirely below the floor");
  }
  if (spec.axis2 && spec.axis2->parameter == spec.axis1.parameter)
    throw Error(ErrorKind::OutOfRange, "both axes sweep the same parameter");
  if (!is_finite(spec.base)) throw Error(ErrorKind::OutOfRange, "non-finite base couplings");

  const auto v1 = axis_values(spec.axis1, spec.t_floor);
  const std::vector<double> v2 = spec.axis2 ? axis_values(*spec.axis2, spec.t_floor) : std::vector<double>{0.0};
  for (double a : v1)
    for (double b : v2) {
      Couplings c = spec.base;
      double t = spec.temperature;
      set(c, t, spec.axis1.parameter, a);
      if (spec.axis2) set(c, t, spec.axis2->parameter, b);
      if (!admissible(spec.quantity, c))
        throw Error(ErrorKind::IncompatibleQuantity,
                    std::string(to_string(spec.quantity)) + " does not apply to DM case " + std::string(to_string(classify(c))));
    }
}

SweepResult run_sweep(const SweepSpec& spec) {
  validate(spec);
  const auto v1 = axis_values(spec.axis1, spec.t_floor);
  const std::vector<double> v2 = spec.axis2 ? axis_values(*spec.axis2, spec.t_floor) : std::vector<double>{0.0};

  SweepResult out;
  out.spec = spec;
  out.rows.resize(v1.size() * v2.size());
  parallel_for(
      out.rows.size(),
      [&](std::size_t k) {
        const std::size_t i = k / v2.size();
        const std::size_t j = k % v2.size();
        Couplings c = spec.base;
        double t = spec.temperature;
        set(c, t, spec.axis1.parameter, v1[i]);
        if (spec.axis2) set(c, t, spec.axis2->parameter, v2[j]);

        SweepRow& row = out.rows[k];
        row.axes = {v1[i], spec.axis2 ? v2[j] : 0.0};
        try {
          auto [value, tag] = evaluate_tagged(spec.quantity, c, t);
          row.value = value;
          row.tag = std::move(tag);
        } catch (const Error& e) {
          row.tag = std::string(to_string(e.kind()));
        }
      },
      spec.threads);
  return out;
}

SweepResult tc_curve(const Couplings& base, const Axis& d_axis) {
  if (d_axis.parameter != Parameter::Dz && d_axis.parameter != Parameter::Dy)
    throw Error(ErrorKind::IncompatibleQuantity, "tc_curve sweeps dz or dy");
  SweepSpec spec;
  spec.base = base;
  spec.axis1 = d_axis;
  spec.quantity = Quantity::Tc;
  const bool along_z = d_axis.parameter == Parameter::Dz;
  if (along_z ? !(base.dx == 0.0 && base.dy == 0.0) : !(base.dx == 0.0 && base.dz == 0.0))
    throw Error(ErrorKind::IncompatibleQuantity, "tc_curve needs the other DM components to vanish");
  return run_sweep(spec);
}

}  // namespace dmtherm
