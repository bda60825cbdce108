#include "shuntnet/modal.hpp"

#include "shuntnet/errors.hpp"
#include "shuntnet/numeric.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace shuntnet {

ModalBasis solve_modes(const Eigen::MatrixXd& stiffness,
                       const Eigen::MatrixXd& metric,
                       Normalization normalization)
{
    const Eigen::Index n = stiffness.rows();
    if (n == 0 || stiffness.cols() != n) {
        throw ModelError("solve_modes: stiffness must be square and non empty");
    }
    if (metric.rows() != n || metric.cols() != n) {
        throw ModelError("solve_modes: metric dimension mismatch");
    }
    if (!stiffness.allFinite() || !metric.allFinite()) {
        throw ModelError("solve_modes: non finite input");
    }
    if (!nearly_symmetric(stiffness, tol::psd) || !nearly_symmetric(metric, tol::psd)) {
        throw ModelError("solve_modes: inputs must be symmetric");
    }
    {
        Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (metric + metric.transpose()));
        if (llt.info() != Eigen::Success) {
            throw ModelError("solve_modes: metric is not positive definite");
        }
    }

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        0.5 * (stiffness + stiffness.transpose()),
        0.5 * (metric + metric.transpose()),
        Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
    if (solver.info() != Eigen::Success) {
        throw NumericsError("solve_modes: eigensolver did not converge");
    }

    ModalBasis basis;
    basis.normalization = normalization;
    basis.omega_sq = solver.eigenvalues().cwiseMax(0.0);
    basis.shapes = solver.eigenvectors();

    // sign convention: largest magnitude entry of every column positive
    for (Eigen::Index k = 0; k < basis.shapes.cols(); ++k) {
        Eigen::Index at = 0;
        basis.shapes.col(k).cwiseAbs().maxCoeff(&at);
        if (basis.shapes(at, k) < 0.0) {
            basis.shapes.col(k) = -basis.shapes.col(k);
        }
    }
    return basis;
}

bool is_rigid_mode(const ModalBasis& basis, int i)
{
    if (i < 0 || i >= basis.n_modes()) {
        throw ModelError("is_rigid_mode: index out of range");
    }
    const double top = basis.omega_sq.maxCoeff();
    return basis.omega_sq(i) < tol::rigid * top;
}

std::vector<int> flexible_mode_indices(const ModalBasis& basis)
{
    std::vector<int> out;
    for (int i = 0; i < basis.n_modes(); ++i) {
        if (!is_rigid_mode(basis, i)) {
            out.push_back(i);
        }
    }
    return out;
}

CouplingTable coupling_coefficients(const PiezoStructureModel& model,
                                    const ModalBasis& mech,
                                    const ElectricalNetwork& network,
                                    const ModalBasis& electrical,
                                    const std::vector<int>& targeted)
{
    if (mech.normalization != Normalization::Mass) {
        throw ModelError("coupling_coefficients: mechanical basis must be mass normalized");
    }
    if (electrical.normalization != Normalization::Capacitance) {
        throw ModelError("coupling_coefficients: electrical basis must be capacitance normalized");
    }
    if (mech.dim() != model.n_dof()) {
        throw ModelError("coupling_coefficients: mechanical basis dimension mismatch");
    }
    if (electrical.dim() != network.n_total()) {
        throw ModelError("coupling_coefficients: electrical basis dimension mismatch");
    }
    if (network.n_ports() != model.n_transducers()) {
        throw ModelError("coupling_coefficients: port count does not match the transducer count");
    }
    if (targeted.empty()) {
        throw ModelError("coupling_coefficients: no targeted modes");
    }

    CouplingTable table;
    table.mech_modes = targeted;
    const int ns = static_cast<int>(targeted.size());
    const int me = electrical.n_modes();

    // shapes of the electrical modes seen at the ports
    const Eigen::MatrixXd port_shapes = network.localization.transpose() * electrical.shapes;

    table.gamma.resize(ns, me);
    table.eemcf.resize(ns, me);
    for (int r = 0; r < ns; ++r) {
        const int idx = targeted[r];
        if (idx < 0 || idx >= mech.n_modes()) {
            throw ModelError("coupling_coefficients: targeted mode index out of range");
        }
        if (is_rigid_mode(mech, idx)) {
            throw SynthesisError("coupling_coefficients: targeted mode "
                                 + std::to_string(idx) + " is a rigid body mode");
        }
        const double omega = std::sqrt(mech.omega_sq(idx));
        const Eigen::RowVectorXd row =
            mech.shapes.col(idx).transpose() * model.coupling * port_shapes;
        table.gamma.row(r) = row;
        table.eemcf.row(r) = row.cwiseAbs() / omega;
    }
    return table;
}

Eigen::MatrixXd auto_mac(const Eigen::MatrixXd& columns)
{
    const Eigen::Index m = columns.cols();
    if (m == 0) {
        throw ModelError("auto_mac: no columns");
    }
    Eigen::VectorXd norms(m);
    for (Eigen::Index k = 0; k < m; ++k) {
        norms(k) = columns.col(k).norm();
        if (norms(k) == 0.0) {
            throw ModelError("auto_mac: zero column " + std::to_string(k));
        }
    }
    Eigen::MatrixXd mac(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            const double dot = columns.col(i).dot(columns.col(j));
            mac(i, j) = (dot * dot) / (norms(i) * norms(i) * norms(j) * norms(j));
        }
    }
    return mac;
}

namespace {

double offdiag_residual(const Eigen::MatrixXd& projected)
{
    const Eigen::Index m = projected.rows();
    if (projected.cwiseAbs().maxCoeff() == 0.0) {
        return 0.0;
    }
    const double diag_scale = projected.diagonal().cwiseAbs().maxCoeff();
    double offdiag = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            if (i != j) {
                offdiag = std::max(offdiag, std::abs(projected(i, j)));
            }
        }
    }
    if (diag_scale == 0.0) {
        return offdiag == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return offdiag / diag_scale;
}

} // namespace

OrthogonalityReport orthogonality_report(const ElectricalNetwork& network,
                                         const ModalBasis& electrical)
{
    if (electrical.dim() != network.n_total()) {
        throw ModelError("orthogonality_report: basis dimension mismatch");
    }
    const Eigen::MatrixXd& phi = electrical.shapes;
    OrthogonalityReport report;
    report.capacitance_residual = offdiag_residual(phi.transpose() * network.capacitance * phi);
    report.conductance_residual = offdiag_residual(phi.transpose() * network.conductance * phi);
    report.reluctance_residual = offdiag_residual(phi.transpose() * network.reluctance * phi);
    return report;
}

CircuitShiftTable circuit_shift_eemcf(const PiezoStructureModel& model)
{
    validate(model);
    const Eigen::LLT<Eigen::MatrixXd> cp_llt(model.capacitance_piezo);
    const Eigen::MatrixXd open_stiffness =
        model.stiffness_sc
        + model.coupling * cp_llt.solve(model.coupling.transpose());

    const ModalBasis sc = solve_modes(model.stiffness_sc, model.mass, Normalization::Mass);
    const ModalBasis oc = solve_modes(open_stiffness, model.mass, Normalization::Mass);

    CircuitShiftTable table;
    table.omega_sc_sq = sc.omega_sq;
    table.omega_oc_sq = oc.omega_sq;
    table.eemcf = Eigen::VectorXd::Zero(sc.n_modes());
    table.rigid.resize(sc.n_modes());
    for (int i = 0; i < sc.n_modes(); ++i) {
        table.rigid[i] = is_rigid_mode(sc, i);
        if (!table.rigid[i]) {
            const double shift = (oc.omega_sq(i) - sc.omega_sq(i)) / sc.omega_sq(i);
            table.eemcf(i) = std::sqrt(std::max(0.0, shift));
        }
    }
    return table;
}

} // namespace shuntnet
