#pragma once

#include "shuntnet/modal.hpp"
#include "shuntnet/model.hpp"

#include <optional>

namespace shuntnet {

/// Electrical mode shapes restricted to the transducer ports, in the two
/// normalizations used throughout the synthesis chain.
///
/// `dimensionless` stores one unit 2-norm column per target. The passivity
/// constraint on the set reads
///
///   alpha^2 * lambda_max(Phi * D^2 * Phi^T) <= 1,  D = diag(scaling)
///
/// and `capacitance_normalized` carries the physical port shapes
///
///   Phi_p = alpha * Cp^{-1/2} * Phi * D.
struct ModeShapeSet {
    Eigen::MatrixXd dimensionless;           ///< P x Ns, unit norm columns
    Eigen::MatrixXd capacitance_normalized;  ///< P x Ns
    Eigen::VectorXd scaling;                 ///< relative weights d_k, > 0
    double alpha = 0.0;                      ///< common scale factor, > 0
};

/// Per target electrical frequency and damping ratio.
struct ModalTuning {
    Eigen::VectorXd omega_e_sq; ///< squared electrical frequencies
    Eigen::VectorXd zeta_e;     ///< electrical damping ratios
};

/// Parallel RL shunt values for a single mode, in network units
/// (reluctance = 1/L, conductance = 1/R).
struct RlTuning {
    double reluctance = 0.0;
    double conductance = 0.0;
};

/// Closed form parallel RL tuning for one structural mode seen through one
/// transducer:
///
///   B = (2 - kc^2) * omega_sc^2 * cp / 2
///   G = sqrt(3 kc^2 / 2) * omega_sc * cp
///
/// `kc_sq` is the squared effective coupling factor, `omega_sc` the short
/// circuit resonance in rad/s, `cp` the blocked capacitance. Requires
/// 0 <= kc_sq < 2 and positive omega_sc, cp.
RlTuning yamada_sdof(double kc_sq, double omega_sc, double cp);

/// Electrical tuning per target from its effective coupling factor:
///
///   omega_e^2 = (2 - k^2) * omega_sc^2 / 2
///   zeta_e    = sqrt(3)/2 * sqrt(k^2 / (2 - k^2))
///
/// Entries of `eemcf` must lie in [0, sqrt(2)). Vector lengths must agree.
ModalTuning modal_tuning(const Eigen::VectorXd& eemcf,
                         const Eigen::VectorXd& omega_sc);

/// The port shape maximizing the effective coupling factor for a single
/// mechanical mode r over the unit ball of dimensionless shapes:
///
///   phi_bar = Cp^{-1/2} g / sqrt(g^T Cp^{-1} g),  g = coupling^T phi_r
///
/// Returns the unit norm dimensionless column and its capacitance
/// normalized counterpart Cp^{-1/2} phi_bar. Throws SynthesisError when the
/// mode is rigid or uncontrollable (||g|| < tol relative to ||coupling||).
struct OptimalShape {
    Eigen::VectorXd dimensionless;
    Eigen::VectorXd capacitance_normalized;
};

OptimalShape optimal_shape_single(const PiezoStructureModel& model,
                                  const ModalBasis& mech,
                                  int mode_index);

/// Combines per target optimal columns into one passive set. The common
/// factor is alpha = fraction / sqrt(lambda_max(Phi D^2 Phi^T)), so that a
/// fraction of 1 activates the passivity bound exactly. Uniform rescaling of
/// `relative_scaling` leaves the physical shapes unchanged.
ModeShapeSet scale_shapes(const Eigen::MatrixXd& dimensionless_singles,
                          const SynthesisConfig& config,
                          const Eigen::MatrixXd& capacitance_piezo);

/// Everything a synthesis run produces. `electrical_shapes` holds one
/// column per targeted mode over all electrical dofs; the columns are
/// generalized eigenvectors of (B, C) and congruence with them recovers
/// I, 2 Z_e Omega_e and Omega_e^2 from C, G and B. `phi_e_condition` is
/// the 2-norm condition number of the shape matrix the construction rests
/// on: the stacked square matrix when it is inverted, the rectangular port
/// shape matrix when the Gram pseudoinverse route is taken.
struct SynthesisResult {
    ElectricalNetwork network;
    ModeShapeSet shapes;
    Eigen::MatrixXd electrical_shapes;
    ModalTuning tuning;
    double phi_e_condition = 1.0;
};

/// Synthesizes a passive multi port network realizing the targeted modal
/// data. With P ports and Ns targets the electrical dof count is
/// max(P, Ns): equal counts invert the port shape matrix directly, fewer
/// targets than ports complete the shape basis on the kernel of Phi_p^T,
/// fewer ports than targets add internal dofs via the configured completion
/// policy. Ports always come first in the assembled network, so the
/// localization matrix is [I; 0].
SynthesisResult synthesize(const PiezoStructureModel& model,
                           const ModalBasis& mech,
                           const SynthesisConfig& config);

/// Spectral summary of the passivity requirements for a network paired with
/// a transducer array of blocked capacitance `capacitance_piezo`.
struct PassivityReport {
    double min_eig_capacitance = 0.0;   ///< lambda_min(C)
    double min_eig_conductance = 0.0;   ///< lambda_min(G)
    double min_eig_reluctance = 0.0;    ///< lambda_min(B)
    double min_eig_interconnect = 0.0;  ///< lambda_min(C - E Cp E^T)
    double norm_capacitance = 0.0;      ///< ||C||_2, scale for the verdict
    bool passive = false;
    /// lambda_min(Cp^{-1} - E^T Phi_e Phi_e^T E) when an electrical basis is
    /// supplied. Nonnegative is necessary for passivity of the pairing.
    std::optional<double> min_eig_shape_bound;
};

PassivityReport check_passivity(const ElectricalNetwork& network,
                                const Eigen::MatrixXd& capacitance_piezo,
                                const ModalBasis* electrical = nullptr);

/// Text rendering of a passivity report, one line per quantity plus the
/// verdict. Used verbatim by the command line tool.
std::string format_passivity_report(const PassivityReport& report);

} // namespace shuntnet
