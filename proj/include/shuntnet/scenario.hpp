#pragma once

#include "shuntnet/beam.hpp"
#include "shuntnet/frf.hpp"
#include "shuntnet/model.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>

namespace shuntnet {

// A scenario file is plain text in a small TOML style dialect: `[section]`
// headers, `[[sweep]]` for repeated sweep tables, `key = value` pairs,
// `#` comments. Values are numbers, bare words, quoted strings or numeric
// arrays `[a, b, c]`. Sections:
//
//   [model]       source = beam | import, path = <bundle dir>
//   [beam]        any BeamConfig field by name, plus `groups = n` for n
//                 equal contiguous cell groups
//   [synthesis]   targets = [..] 1-based mode numbers as printed by the
//                 mode listing, relative_scaling = [..],
//                 internal_shapes = identity-pad | random-orthogonal,
//                 alpha = at-bound | <fraction>, seed = <integer>
//   [comparison]  type = analog-cells, cp, resistance, inductance, ratio
//   [[sweep]]     f_min, f_max, points, spacing = log | linear,
//                 mech_damping, input_dof, output_dof,
//                 quantity = velocity | displacement
//   [output]      dir = <directory>
//
// Relative input_dof / output_dof defaults for a beam model are the first
// node deflection (0) and the last node deflection (N - 2).

enum class ModelSource { Beam, Import };

struct ComparisonConfig {
    AnalogCellConfig cell;
    bool enabled = false;
};

struct Scenario {
    ModelSource source = ModelSource::Beam;
    BeamConfig beam;
    std::filesystem::path import_path;

    bool synthesize_network = false;
    std::vector<int> targets; ///< 1-based indices into the full mode list
    Eigen::VectorXd relative_scaling;
    InternalShapePolicy internal_shapes = InternalShapePolicy::IdentityPad;
    double alpha_fraction = 1.0;
    std::uint64_t seed = 0;

    ComparisonConfig comparison;
    std::vector<SweepConfig> sweeps;
    std::filesystem::path out_dir = "out";
};

Scenario parse_scenario_file(const std::filesystem::path& file);

/// Command line overrides applied on top of a parsed scenario.
struct RunOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> out_dir;
    bool quiet = false;
};

/// Half width (relative) of the assessment band placed around each targeted
/// resonance when the pipeline reports attenuations.
inline constexpr double band_half_width = 0.10;

/// Bands [f (1 - half_width), f (1 + half_width)] around each frequency.
std::vector<Band> resonance_bands(const Eigen::VectorXd& freqs_hz,
                                  double half_width_rel = band_half_width);

/// Process exit codes used by the command line tool.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int check_failed = 1;
inline constexpr int parse = 2;
inline constexpr int model = 3;
inline constexpr int synthesis = 4;
inline constexpr int numerics = 5;
} // namespace exit_code

/// Maps toolkit exceptions onto the exit codes above.
int exit_code_for(const std::exception& error);

/// Full pipeline behind `run`: load or build the model, synthesize when
/// requested, write the network bundle, passivity report, coupling and MAC
/// tables, FRF and attenuation CSVs into the output directory. Progress
/// goes to `log` unless quiet. Throws on failure.
void run_pipeline(const Scenario& scenario, const RunOverrides& overrides,
                  std::ostream& log);

/// CLI entry points. Each catches toolkit exceptions, prints the message to
/// `err` and returns the mapped exit code.
int command_run(const std::filesystem::path& scenario_file,
                const RunOverrides& overrides,
                std::ostream& out, std::ostream& err);

int command_list_modes(const std::filesystem::path& scenario_file,
                       const RunOverrides& overrides,
                       std::ostream& out, std::ostream& err);

int command_check(const std::filesystem::path& network_dir,
                  const std::filesystem::path& model_dir,
                  std::ostream& out, std::ostream& err);

} // namespace shuntnet
