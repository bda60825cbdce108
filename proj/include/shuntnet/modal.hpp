#pragma once

#include "shuntnet/model.hpp"

namespace shuntnet {

/// Modal coupling data between selected mechanical modes and the modes of an
/// electrical network attached to the transducer ports.
struct CouplingTable {
    std::vector<int> mech_modes; ///< the targeted mechanical mode indices
    /// gamma(r, k) = phi_r^T * coupling * localization^T * phi_e_k,
    /// rows follow mech_modes, columns follow the electrical basis.
    Eigen::MatrixXd gamma;
    /// eemcf(r, k) = |gamma(r, k)| / omega_r, the effective coupling factor
    /// of the pair.
    Eigen::MatrixXd eemcf;
};

/// Solves K phi = omega^2 M phi for symmetric K (PSD) and SPD metric M by
/// Cholesky reduction to a standard symmetric problem. Shapes come back
/// metric-orthonormal, eigenvalues ascending with small negatives clamped to
/// zero, and each column signed so its largest magnitude entry is positive.
/// Throws ModelError on bad inputs (non-symmetric K, metric not PD) and
/// NumericsError when the eigensolver fails.
ModalBasis solve_modes(const Eigen::MatrixXd& stiffness,
                       const Eigen::MatrixXd& metric,
                       Normalization normalization);

/// True when mode i is a rigid body mode: omega_sq(i) < rigid tol times the
/// largest eigenvalue of the basis.
bool is_rigid_mode(const ModalBasis& basis, int i);

/// Indices of the non rigid modes, ascending.
std::vector<int> flexible_mode_indices(const ModalBasis& basis);

/// Modal coupling coefficients and effective coupling factors between
/// mechanical modes `targeted` (mass normalized basis) and an electrical
/// basis (capacitance normalized). Throws ModelError on a normalization tag
/// mismatch, SynthesisError when a targeted mode is rigid.
CouplingTable coupling_coefficients(const PiezoStructureModel& model,
                                    const ModalBasis& mech,
                                    const ElectricalNetwork& network,
                                    const ModalBasis& electrical,
                                    const std::vector<int>& targeted);

/// Modal assurance criterion of a set of shape columns against itself:
/// mac(i, j) = |c_i^T c_j|^2 / (||c_i||^2 ||c_j||^2). Throws ModelError on a
/// zero column.
Eigen::MatrixXd auto_mac(const Eigen::MatrixXd& columns);

/// How well a basis diagonalizes the three network matrices. Residuals are
/// max absolute off-diagonal entries of Phi^T A Phi relative to the largest
/// diagonal entry (0 when the projected matrix is all zero). Conductance is
/// reported rather than assumed diagonal: an externally supplied network may
/// not share eigenvectors with its conductance matrix.
struct OrthogonalityReport {
    double capacitance_residual = 0.0;
    double conductance_residual = 0.0;
    double reluctance_residual = 0.0;
};

OrthogonalityReport orthogonality_report(const ElectricalNetwork& network,
                                         const ModalBasis& electrical);

/// Per mode summary used by the mode listing command. The coupling factor
/// estimate comes from the short to open circuit frequency shift,
/// k^2 = (omega_oc^2 - omega_sc^2) / omega_sc^2, with the open circuit
/// stiffness K_sc + coupling * capacitance^-1 * coupling^T. Rigid modes get
/// a zero estimate.
struct CircuitShiftTable {
    Eigen::VectorXd omega_sc_sq;
    Eigen::VectorXd omega_oc_sq;
    Eigen::VectorXd eemcf;
    std::vector<bool> rigid;
};

CircuitShiftTable circuit_shift_eemcf(const PiezoStructureModel& model);

} // namespace shuntnet
