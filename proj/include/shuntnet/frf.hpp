#pragma once

#include "shuntnet/model.hpp"

#include <filesystem>

namespace shuntnet {

enum class FrequencySpacing { Linear, Log };

/// One frequency sweep request. Input is a unit force at `input_dof`, the
/// response is read at `output_dof`.
struct SweepConfig {
    double f_min_hz = 1.0;
    double f_max_hz = 100.0;
    int n_points = 400;          ///< base grid size before densification
    FrequencySpacing spacing = FrequencySpacing::Log;
    double mech_damping = 0.0;   ///< uniform modal damping ratio zeta_m
    int input_dof = 0;
    int output_dof = 0;
    ResponseQuantity quantity = ResponseQuantity::Velocity;
};

/// Builds the evaluation grid for a sweep: the base grid, plus 200 extra
/// log spaced points within +-5% of every resonance in `resonances_hz` that
/// falls inside the sweep band (so peaks are resolved), with every point
/// nudged to keep a relative distance of at least 1e-6 from each listed
/// resonance. Sorted and deduplicated.
Eigen::VectorXd make_grid(const SweepConfig& sweep,
                          const Eigen::VectorXd& resonances_hz);

/// Coupled frequency response of the structure with an electrical network
/// on its ports. Per grid point the network is condensed onto the ports,
///
///   [ H(s) + s Gamma E^T Y(s)^{-1} E Gamma^T ] x = f,   s = j omega,
///
/// with H(s) = s^2 M + K_sc (+ modal damping when mech_damping > 0) and
/// Y(s) = s C + G + B / s. Passing a null network gives the short circuit
/// response. Grid points where Y or the coupled operator is singular are
/// reported in `skipped_points` and dropped. Zero frequency is never
/// evaluated. Throws ModelError on dimension mismatches, NumericsError when
/// the eigensolve behind the grid layout fails.
FrfResult coupled_frf(const PiezoStructureModel& model,
                      const ElectricalNetwork* network,
                      const SweepConfig& sweep);

/// A frequency band [low, high] in Hz.
struct Band {
    double f_low_hz = 0.0;
    double f_high_hz = 0.0;
};

/// Peak attenuation per band in dB: 20 log10 of the ratio between the
/// baseline and damped maxima of |response| inside the band. Both results
/// must share the same grid; a band containing no grid point is an error.
std::vector<double> attenuation(const FrfResult& baseline,
                                const FrfResult& damped,
                                const std::vector<Band>& bands);

/// Single mode demo: a unit mass oscillator with short circuit resonance
/// `omega_sc`, coupling factor `kc` through one transducer of capacitance
/// `cp`, shunted by its closed form parallel RL tuning. Returns the coupled
/// response for the given sweep (input and output dof are forced to 0).
FrfResult sdof_demo(double kc, double omega_sc, double cp,
                    const SweepConfig& sweep);

/// Short circuit counterpart of sdof_demo on the identical grid.
FrfResult sdof_demo_short_circuit(double kc, double omega_sc, double cp,
                                  const SweepConfig& sweep);

/// Writes an FRF as CSV: `# key = value` metadata lines, a header row
/// `freq_hz,re,im,abs`, then one row per grid point. Decimal separator is
/// always '.', delimiter ','.
void write_frf_csv(const FrfResult& result, const std::filesystem::path& file);

/// Reads back a CSV written by write_frf_csv, restoring the metadata
/// (label, dofs, quantity, skipped point count) along with the samples.
FrfResult read_frf_csv(const std::filesystem::path& file);

} // namespace shuntnet
