#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dmtherm/model.hpp"

namespace dmtherm {

enum class Parameter { T, Jx, Jy, Jz, Dx, Dy, Dz };

std::string_view to_string(Parameter p);
std::optional<Parameter> parse_parameter(std::string_view name);

enum class Quantity {
  Concurrence,  // closed form picked by classify()
  ConcurrenceZ,
  ConcurrenceY,
  ConcurrenceXY,
  ConcurrenceGeneric,
  Discord,  // closed form picked by classify()
  DiscordZ,
  DiscordY,
  DiscordOracle,
  Tc,
  PartitionValue,
  DiscordAtTc,
};

std::string_view to_string(Quantity q);
std::optional<Quantity> parse_quantity(std::string_view name);
// CSV column name, e.g. "concurrence" for every concurrence flavour.
std::string_view column_name(Quantity q);

struct Axis {
  Parameter parameter = Parameter::T;
  double start = 0.0;
  double stop = 1.0;
  int count = 2;
  std::string label;  // column header; empty means the parameter name
};

struct SweepSpec {
  Couplings base;
  double temperature = 1.0;  // used when no axis is T
  Axis axis1;
  std::optional<Axis> axis2;
  Quantity quantity = Quantity::Concurrence;
  std::string quantity_label;  // empty means column_name(quantity)
  double t_floor = 1e-3;       // temperature axes never go below this
  unsigned threads = 0;        // 0 = hardware concurrency
};

struct SweepRow {
  std::array<double, 2> axes{};
  std::optional<double> value;
  // Error kind for failed points, branch name for T_c rows, otherwise empty.
  std::string tag;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;  // row-major: axis1 outer, axis2 inner
};

// Throws IncompatibleQuantity or OutOfRange for an unusable spec; errors at
// individual points are recorded in the row tag instead.
void validate(const SweepSpec& spec);

std::vector<double> axis_values(const Axis& axis, double t_floor);

SweepResult run_sweep(const SweepSpec& spec);

// T_c along a D axis (dz for D along z, dy for D along y); tags carry the branch.
SweepResult tc_curve(const Couplings& base, const Axis& d_axis);

// Evaluates one quantity at one point, throwing on failure.
double evaluate(Quantity q, const Couplings& c, double t);

}  // namespace dmtherm
