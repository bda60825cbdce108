#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace shuntnet {

/// Tolerances shared across the toolkit. All thresholds are relative unless
/// noted otherwise.
namespace tol {
/// PSD slack: an eigenvalue lambda of a nominally PSD matrix A is accepted
/// when lambda >= -psd * ||A||_2.
inline constexpr double psd = 1e-10;
/// Orthonormality residual bound for modal bases, max |Phi^T B Phi - I|.
inline constexpr double orth = 1e-8;
/// Modes with omega^2 < rigid * max(omega^2) are tagged rigid. The value
/// sits at the eigensolver's numerical zero (n * eps * lambda_max): fine
/// finite element models spread their spectrum over ten orders of
/// magnitude, so anything looser swallows genuine low flexible modes.
inline constexpr double rigid = 1e-12;
/// A target mode r is uncontrollable when ||coupling^T phi_r|| falls below
/// uncontrollable * ||coupling||.
inline constexpr double uncontrollable = 1e-12;
/// Condition number limit on the stacked electrical shape matrix before the
/// internal completion is rejected.
inline constexpr double condition_limit = 1e12;
} // namespace tol

/// Second order model of a structure with an array of piezoelectric
/// transducers, all ports short-circuited in the baseline:
///
///   mass * x'' + stiffness_sc * x + coupling * psi_p' = f
///
/// where psi_p are the port flux linkages (time integral of port voltage).
struct PiezoStructureModel {
    Eigen::MatrixXd mass;              ///< N x N, symmetric positive definite
    Eigen::MatrixXd stiffness_sc;      ///< N x N, short-circuit stiffness, symmetric PSD
    Eigen::MatrixXd coupling;          ///< N x P, generalized force per unit port flux rate
    Eigen::MatrixXd capacitance_piezo; ///< P x P, blocked capacitance of the transducers, SPD

    int n_dof() const { return static_cast<int>(mass.rows()); }
    int n_transducers() const { return static_cast<int>(coupling.cols()); }
};

/// Checks dimensions, symmetry and definiteness. Throws ModelError on the
/// first violated invariant.
void validate(const PiezoStructureModel& model);

/// Lumped multi-port electrical network in flux linkage coordinates psi:
///
///   capacitance * psi'' + conductance * psi' + reluctance * psi = localization * q_p'
///
/// The capacitance matrix is the overall one, transducer capacitances
/// included. `localization` holds one canonical unit column per port giving
/// the network dof the corresponding transducer connects to.
struct ElectricalNetwork {
    Eigen::MatrixXd capacitance; ///< Ne x Ne, symmetric PSD (often PD)
    Eigen::MatrixXd conductance; ///< Ne x Ne, symmetric PSD
    Eigen::MatrixXd reluctance;  ///< Ne x Ne, symmetric PSD (inverse inductances)
    Eigen::MatrixXd localization; ///< Ne x P, binary, distinct canonical unit columns

    int n_total() const { return static_cast<int>(capacitance.rows()); }
    int n_ports() const { return static_cast<int>(localization.cols()); }
    int n_internal() const { return n_total() - n_ports(); }
};

/// Structural checks for a network on its own (pairing checks against a
/// specific transducer array live in check_passivity). Throws ModelError.
void validate(const ElectricalNetwork& network);

/// Which metric the mode shape columns are normalized against.
enum class Normalization { Mass, Capacitance };

/// Solution of a generalized symmetric eigenproblem K phi = omega^2 M phi
/// with shapes normalized so that shapes^T M shapes = I.
struct ModalBasis {
    Eigen::MatrixXd shapes;   ///< dim x M, metric-orthonormal columns
    Eigen::VectorXd omega_sq; ///< M ascending values, negatives clamped to zero
    Normalization normalization = Normalization::Mass;
    /// Optional per mode viscous damping ratios (same length as omega_sq).
    std::optional<Eigen::VectorXd> damping_ratios;

    int dim() const { return static_cast<int>(shapes.rows()); }
    int n_modes() const { return static_cast<int>(shapes.cols()); }
};

/// Consistency checks against a given metric (the one named by
/// `normalization`). Throws ModelError.
void validate(const ModalBasis& basis, const Eigen::MatrixXd& metric);

/// How internal electrical dofs are completed when fewer ports than targets
/// are available.
enum class InternalShapePolicy { IdentityPad, RandomOrthogonal };

/// Inputs controlling a synthesis run.
struct SynthesisConfig {
    /// Strictly increasing 0-based indices into the mechanical basis. Rigid
    /// modes are not eligible.
    std::vector<int> targeted_modes;
    /// Relative coupling weights d_k per target, all > 0. Empty means uniform.
    Eigen::VectorXd relative_scaling;
    InternalShapePolicy internal_shapes = InternalShapePolicy::IdentityPad;
    /// Fraction of the passivity bound used by the common scale factor,
    /// in (0, 1]. 1.0 places the design exactly on the bound.
    double alpha_fraction = 1.0;
    /// Seed for the random orthogonal completion.
    std::uint64_t seed = 0;
};

enum class ResponseQuantity { Displacement, Velocity };

/// Single input, single output frequency response on a discrete grid.
struct FrfResult {
    Eigen::VectorXd freq_hz;    ///< strictly increasing, all > 0
    Eigen::VectorXcd response;  ///< same length, finite entries
    int input_dof = 0;
    int output_dof = 0;
    ResponseQuantity quantity = ResponseQuantity::Velocity;
    std::string label;          ///< free form tag carried into CSV metadata
    int skipped_points = 0;     ///< grid points dropped due to singular solves
};

} // namespace shuntnet
