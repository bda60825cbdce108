#include "shuntnet/model.hpp"

#include "shuntnet/errors.hpp"
#include "shuntnet/numeric.hpp"

#include <string>

namespace shuntnet {

namespace {

void require(bool condition, const std::string& message)
{
    if (!condition) {
        throw ModelError(message);
    }
}

void require_square_sym(const Eigen::MatrixXd& a, int n, const std::string& name)
{
    require(a.rows() == n && a.cols() == n,
            name + ": expected " + std::to_string(n) + "x" + std::to_string(n)
                + ", got " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    require(a.allFinite(), name + ": non finite entries");
    require(nearly_symmetric(a, tol::psd), name + ": not symmetric");
}

void require_spd(const Eigen::MatrixXd& a, int n, const std::string& name)
{
    require_square_sym(a, n, name);
    require(sym_min_eigenvalue(a) > 0.0, name + ": not positive definite");
}

void require_psd(const Eigen::MatrixXd& a, int n, const std::string& name)
{
    require_square_sym(a, n, name);
    require(sym_positive_semidefinite(a, tol::psd), name + ": not positive semidefinite");
}

} // namespace

void validate(const PiezoStructureModel& model)
{
    const int n = model.n_dof();
    require(n >= 1, "model: empty mass matrix");
    require_spd(model.mass, n, "mass");
    require_psd(model.stiffness_sc, n, "stiffness_sc");

    const int p = model.n_transducers();
    require(p >= 1, "coupling: at least one transducer required");
    require(model.coupling.rows() == n,
            "coupling: row count does not match the dof count");
    require(model.coupling.allFinite(), "coupling: non finite entries");
    require_spd(model.capacitance_piezo, p, "capacitance_piezo");
}

void validate(const ElectricalNetwork& network)
{
    const int ne = network.n_total();
    require(ne >= 1, "network: empty capacitance matrix");
    require_psd(network.capacitance, ne, "capacitance");
    require_psd(network.conductance, ne, "conductance");
    require_psd(network.reluctance, ne, "reluctance");

    const Eigen::MatrixXd& e = network.localization;
    const int p = network.n_ports();
    require(p >= 1 && p <= ne, "localization: port count out of range");
    require(e.rows() == ne, "localization: row count does not match network dofs");
    for (int j = 0; j < p; ++j) {
        double sum = 0.0;
        for (int i = 0; i < ne; ++i) {
            const double v = e(i, j);
            require(v == 0.0 || v == 1.0, "localization: entries must be 0 or 1");
            sum += v;
        }
        require(sum == 1.0, "localization: each column must select exactly one dof");
    }
    const Eigen::MatrixXd gram = e.transpose() * e;
    require(gram.isIdentity(0.0), "localization: ports must attach to distinct dofs");
}

void validate(const ModalBasis& basis, const Eigen::MatrixXd& metric)
{
    const int m = basis.n_modes();
    require(m >= 1, "modal basis: no modes");
    require(basis.omega_sq.size() == m, "modal basis: omega_sq length mismatch");
    require(basis.shapes.allFinite(), "modal basis: non finite shapes");
    require((basis.omega_sq.array() >= 0.0).all(), "modal basis: negative omega_sq");
    for (int i = 0; i + 1 < m; ++i) {
        require(basis.omega_sq(i) <= basis.omega_sq(i + 1),
                "modal basis: omega_sq not ascending");
    }
    if (basis.damping_ratios) {
        require(basis.damping_ratios->size() == m,
                "modal basis: damping ratio length mismatch");
        require((basis.damping_ratios->array() >= 0.0).all(),
                "modal basis: negative damping ratio");
    }
    require(metric.rows() == basis.dim() && metric.cols() == basis.dim(),
            "modal basis: metric dimension mismatch");
    const Eigen::MatrixXd gram = basis.shapes.transpose() * metric * basis.shapes;
    const double residual = (gram - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
    require(residual <= tol::orth, "modal basis: shapes not orthonormal in the metric");
}

} // namespace shuntnet
