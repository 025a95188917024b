#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bec2/field.hpp"
#include "bec2/medium_optics.hpp"
#include "bec2/params.hpp"
#include "bec2/propagator.hpp"

namespace bec2 {

enum class PacketShape { uniform, gaussian, file };
enum class TableFormat { csv, json };
enum class SnapshotFormat { csv, binary };

struct GridConfig {
  int n_points = 1024;
  int periods = 8;  // box length in intensity periods pi / (n k_L)

  bool operator==(const GridConfig&) const = default;
};

struct PacketConfig {
  PacketShape shape = PacketShape::uniform;
  double width = 0.0;   // gaussian only, internal units
  double center = 0.0;  // gaussian only
  std::string path;     // file only: binary snapshot base path

  bool operator==(const PacketConfig&) const = default;
};

struct EvolveSettings {
  int steps = 2000;
  PotentialMode mode = PotentialMode::full;
  bool kinetic = true;
  double z_span = 6.0;      // propagate z in [-z_span w_L, +z_span w_L]
  int observer_stride = 0;  // 0: resolved to max(1, steps / 100)

  bool operator==(const EvolveSettings&) const = default;
};

struct OutputConfig {
  std::string dir;  // empty: resolved from --out, then BEC2_OUT, then ./bec2_out
  TableFormat table_format = TableFormat::csv;
  SnapshotFormat snapshot_format = SnapshotFormat::csv;

  bool operator==(const OutputConfig&) const = default;
};

struct SweepConfig {
  std::string command;    // index | chi | diffract | simulate
  std::string parameter;  // JSON pointer into the config, e.g. /mixture/densities/0
  double from = 0.0;
  double to = 0.0;
  int count = 1;

  bool operator==(const SweepConfig&) const = default;
};

// Medium response at the nominal densities, evaluated once at parse time.
struct DerivedQuantities {
  std::array<double, 2> alpha{};
  std::array<double, 2> eff_volume{};
  std::array<double, 2> eps{};  // alpha_j rho_j
  std::array<double, 2> coupling{};
  std::array<double, 2> tau{};
  double screening_sum = 0.0;
  double chi = 0.0;
  double n_squared = 1.0;
  double n = 1.0;
  bool singular = false;    // screening factor at the pole
  bool evanescent = false;  // n^2 < 0
  bool components_separated = false;

  bool operator==(const DerivedQuantities&) const = default;
};

// A fully resolved run: internal-unit physics plus run settings. resolved_text
// is the canonical user-unit echo (defaults materialized); re-parsing it
// reproduces this struct exactly.
struct RunConfig {
  UnitSystem units;
  Mixture mixture;  // internal units
  double envelope_width = 1.0;
  double vacuum_wavenumber = 1.0;
  std::optional<double> index_override;
  GridConfig grid;
  PacketConfig packet;
  EvolveSettings evolve;
  int max_order = 20;  // resolved: explicit value or ceil(max |tau|) + 20
  OutputConfig output;
  std::optional<SweepConfig> sweep;
  DerivedQuantities derived;
  std::vector<std::string> warnings;
  std::string resolved_text;

  // Field configuration for propagation. Throws SingularMediumError at the
  // medium pole and DomainError when the index is evanescent (unless an
  // explicit positive index_override was given).
  FieldConfig field() const;

  EvolveConfig evolve_config() const;  // includes field(); dz from z_span and steps
  MatterState initial_state() const;   // per packet config, z = -z_span w_L

  bool operator==(const RunConfig&) const = default;
};

// Parses and fully resolves a JSON run configuration. Collects every
// violation into one ValidationError. `source_name` labels parse errors.
RunConfig parse_config_text(const std::string& text,
                            const std::string& source_name = "<config>");
RunConfig parse_config_file(const std::string& path);

// Re-resolves the configuration with the value at JSON pointer `parameter`
// replaced; used for sweeps. The pointer is applied to the user-unit
// resolved text.
RunConfig with_parameter(const RunConfig& base, const std::string& parameter,
                         double value);

std::string to_string(PacketShape s);
std::string to_string(TableFormat f);
std::string to_string(SnapshotFormat f);
std::string to_string(PotentialMode m);

}  // namespace bec2
