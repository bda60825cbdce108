#include "shuntnet/synthesis.hpp"

#include "shuntnet/errors.hpp"
#include "shuntnet/numeric.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace shuntnet {

RlTuning yamada_sdof(double kc_sq, double omega_sc, double cp)
{
    if (!(kc_sq >= 0.0) || !(kc_sq < 2.0)) {
        throw SynthesisError("yamada_sdof: kc_sq must lie in [0, 2)");
    }
    if (!(omega_sc > 0.0) || !(cp > 0.0)) {
        throw SynthesisError("yamada_sdof: omega_sc and cp must be positive");
    }
    RlTuning tuning;
    tuning.reluctance = 0.5 * (2.0 - kc_sq) * omega_sc * omega_sc * cp;
    tuning.conductance = std::sqrt(1.5 * kc_sq) * omega_sc * cp;
    return tuning;
}

ModalTuning modal_tuning(const Eigen::VectorXd& eemcf, const Eigen::VectorXd& omega_sc)
{
    if (eemcf.size() != omega_sc.size() || eemcf.size() == 0) {
        throw SynthesisError("modal_tuning: vector lengths must agree and be non empty");
    }
    ModalTuning tuning;
    tuning.omega_e_sq.resize(eemcf.size());
    tuning.zeta_e.resize(eemcf.size());
    for (Eigen::Index k = 0; k < eemcf.size(); ++k) {
        const double k2 = eemcf(k) * eemcf(k);
        if (!(eemcf(k) >= 0.0) || !(k2 < 2.0)) {
            throw SynthesisError("modal_tuning: coupling factor out of [0, sqrt(2))");
        }
        if (!(omega_sc(k) > 0.0)) {
            throw SynthesisError("modal_tuning: omega_sc must be positive");
        }
        tuning.omega_e_sq(k) = 0.5 * (2.0 - k2) * omega_sc(k) * omega_sc(k);
        tuning.zeta_e(k) = 0.5 * std::sqrt(3.0) * std::sqrt(k2 / (2.0 - k2));
    }
    return tuning;
}

OptimalShape optimal_shape_single(const PiezoStructureModel& model,
                                  const ModalBasis& mech,
                                  int mode_index)
{
    if (mech.normalization != Normalization::Mass) {
        throw ModelError("optimal_shape_single: basis must be mass normalized");
    }
    if (mech.dim() != model.n_dof()) {
        throw ModelError("optimal_shape_single: basis dimension mismatch");
    }
    if (mode_index < 0 || mode_index >= mech.n_modes()) {
        throw SynthesisError("optimal_shape_single: mode index out of range");
    }
    if (is_rigid_mode(mech, mode_index)) {
        throw SynthesisError("optimal_shape_single: mode " + std::to_string(mode_index)
                             + " is a rigid body mode and cannot be targeted");
    }

    const Eigen::VectorXd g = model.coupling.transpose() * mech.shapes.col(mode_index);
    if (g.norm() < tol::uncontrollable * model.coupling.norm()) {
        throw SynthesisError("optimal_shape_single: mode " + std::to_string(mode_index)
                             + " is uncontrollable through the transducer array");
    }

    const Eigen::MatrixXd inv_sqrt = spd_inv_sqrt(model.capacitance_piezo);
    OptimalShape shape;
    const Eigen::VectorXd v = inv_sqrt * g;
    shape.dimensionless = v / v.norm();
    shape.capacitance_normalized = inv_sqrt * shape.dimensionless;
    return shape;
}

ModeShapeSet scale_shapes(const Eigen::MatrixXd& dimensionless_singles,
                          const SynthesisConfig& config,
                          const Eigen::MatrixXd& capacitance_piezo)
{
    const Eigen::Index p = dimensionless_singles.rows();
    const Eigen::Index ns = dimensionless_singles.cols();
    if (p == 0 || ns == 0) {
        throw SynthesisError("scale_shapes: empty shape matrix");
    }
    for (Eigen::Index k = 0; k < ns; ++k) {
        if (std::abs(dimensionless_singles.col(k).norm() - 1.0) > tol::orth) {
            throw SynthesisError("scale_shapes: column " + std::to_string(k)
                                 + " is not unit norm");
        }
    }
    Eigen::VectorXd d = config.relative_scaling;
    if (d.size() == 0) {
        d = Eigen::VectorXd::Ones(ns);
    }
    if (d.size() != ns) {
        throw SynthesisError("scale_shapes: relative scaling length mismatch");
    }
    if (!(d.array() > 0.0).all()) {
        throw SynthesisError("scale_shapes: relative scaling entries must be positive");
    }
    if (!(config.alpha_fraction > 0.0) || config.alpha_fraction > 1.0) {
        throw SynthesisError("scale_shapes: alpha fraction must lie in (0, 1]");
    }
    if (capacitance_piezo.rows() != p || capacitance_piezo.cols() != p) {
        throw SynthesisError("scale_shapes: capacitance dimension mismatch");
    }

    const Eigen::MatrixXd weighted = dimensionless_singles * d.asDiagonal();
    const double lambda_max = sym_spectral_norm(weighted * weighted.transpose());

    ModeShapeSet set;
    set.dimensionless = dimensionless_singles;
    set.scaling = d;
    set.alpha = config.alpha_fraction / std::sqrt(lambda_max);
    set.capacitance_normalized =
        set.alpha * (spd_inv_sqrt(capacitance_piezo) * weighted);
    return set;
}

namespace {

// Seeded orthonormal completion of the row space of `port_shapes` inside
// R^ns, returned as rows. Columns of the result are mutually orthonormal
// and orthogonal to every row of `port_shapes`.
Eigen::MatrixXd random_row_completion(const Eigen::MatrixXd& port_shapes,
                                      std::uint64_t seed)
{
    const Eigen::Index p = port_shapes.rows();
    const Eigen::Index ns = port_shapes.cols();
    const Eigen::Index missing = ns - p;

    // orthonormal basis of the row space
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(port_shapes.transpose());
    const Eigen::MatrixXd q_rows =
        Eigen::MatrixXd(qr.householderQ()).leftCols(p);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd draw(ns, missing);
    for (Eigen::Index j = 0; j < missing; ++j) {
        for (Eigen::Index i = 0; i < ns; ++i) {
            draw(i, j) = gauss(rng);
        }
    }
    const Eigen::MatrixXd projected = draw - q_rows * (q_rows.transpose() * draw);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr2(projected);
    Eigen::MatrixXd basis = Eigen::MatrixXd(qr2.householderQ()).leftCols(missing);
    // strip any residual row space component picked up through roundoff
    basis -= q_rows * (q_rows.transpose() * basis);
    return basis.transpose();
}

} // namespace

SynthesisResult synthesize(const PiezoStructureModel& model,
                           const ModalBasis& mech,
                           const SynthesisConfig& config)
{
    validate(model);
    if (mech.normalization != Normalization::Mass || mech.dim() != model.n_dof()) {
        throw ModelError("synthesize: mechanical basis does not fit the model");
    }
    const auto& targets = config.targeted_modes;
    if (targets.empty()) {
        throw SynthesisError("synthesize: no targeted modes");
    }
    for (std::size_t i = 0; i + 1 < targets.size(); ++i) {
        if (targets[i] >= targets[i + 1]) {
            throw SynthesisError("synthesize: targeted modes must be strictly increasing");
        }
    }

    const int p = model.n_transducers();
    const int ns = static_cast<int>(targets.size());

    Eigen::MatrixXd singles(p, ns);
    Eigen::VectorXd omega_targets(ns);
    for (int k = 0; k < ns; ++k) {
        singles.col(k) = optimal_shape_single(model, mech, targets[k]).dimensionless;
        omega_targets(k) = std::sqrt(mech.omega_sq(targets[k]));
    }

    SynthesisResult result;
    result.shapes = scale_shapes(singles, config, model.capacitance_piezo);
    const Eigen::MatrixXd& phi_p = result.shapes.capacitance_normalized;

    // coupling factors of the scaled pairs, then the per target electrical tuning
    Eigen::VectorXd eemcf(ns);
    for (int k = 0; k < ns; ++k) {
        const double gamma =
            mech.shapes.col(targets[k]).dot(model.coupling * phi_p.col(k));
        eemcf(k) = std::abs(gamma) / omega_targets(k);
    }
    result.tuning = modal_tuning(eemcf, omega_targets);

    const Eigen::VectorXd omega_e = result.tuning.omega_e_sq.cwiseSqrt();
    const Eigen::VectorXd g_modal = 2.0 * result.tuning.zeta_e.cwiseProduct(omega_e);

    ElectricalNetwork net;
    if (p <= ns) {
        // stack internal dof shapes under the port shapes until square
        Eigen::MatrixXd phi_e(ns, ns);
        phi_e.topRows(p) = phi_p;
        if (p < ns) {
            const double scale = phi_p.norm() / std::sqrt(double(p) * double(ns));
            Eigen::MatrixXd internal;
            if (config.internal_shapes == InternalShapePolicy::IdentityPad) {
                internal = Eigen::MatrixXd::Zero(ns - p, ns);
                internal.rightCols(ns - p) = Eigen::MatrixXd::Identity(ns - p, ns - p);
            } else {
                internal = random_row_completion(phi_p, config.seed);
            }
            phi_e.bottomRows(ns - p) = scale * internal;
        }

        result.phi_e_condition = condition_number(phi_e);
        if (!std::isfinite(result.phi_e_condition)
            || result.phi_e_condition > tol::condition_limit) {
            std::ostringstream msg;
            msg << "synthesize: stacked electrical shape matrix is numerically singular"
                << " (condition " << result.phi_e_condition << ")";
            if (config.internal_shapes == InternalShapePolicy::IdentityPad) {
                msg << "; retry with the random orthogonal completion policy";
            }
            throw SynthesisError(msg.str());
        }

        const Eigen::MatrixXd inv =
            phi_e.partialPivLu().solve(Eigen::MatrixXd::Identity(ns, ns));
        net.capacitance = inv.transpose() * inv;
        net.conductance = inv.transpose() * g_modal.asDiagonal() * inv;
        net.reluctance = inv.transpose() * result.tuning.omega_e_sq.asDiagonal() * inv;
        net.localization = Eigen::MatrixXd::Identity(ns, ns).leftCols(p);
        result.electrical_shapes = phi_e;
    } else {
        // more ports than targets: complete on the kernel of phi_p^T
        result.phi_e_condition = condition_number(phi_p);
        if (!std::isfinite(result.phi_e_condition)
            || result.phi_e_condition > tol::condition_limit) {
            throw SynthesisError("synthesize: port shapes are numerically rank deficient");
        }
        const Eigen::MatrixXd gram = phi_p.transpose() * phi_p;
        const Eigen::MatrixXd gram_inv =
            gram.llt().solve(Eigen::MatrixXd::Identity(ns, ns));

        Eigen::HouseholderQR<Eigen::MatrixXd> qr(phi_p);
        const Eigen::MatrixXd v =
            Eigen::MatrixXd(qr.householderQ()).rightCols(p - ns);
        const double beta =
            sym_spectral_norm(v.transpose() * model.capacitance_piezo * v);

        const Eigen::MatrixXd left = phi_p * gram_inv;
        net.capacitance = left * gram_inv * phi_p.transpose()
                          + beta * v * v.transpose();
        net.conductance = left * g_modal.asDiagonal() * left.transpose();
        net.reluctance = left * result.tuning.omega_e_sq.asDiagonal() * left.transpose();
        net.localization = Eigen::MatrixXd::Identity(p, p);
        result.electrical_shapes = phi_p;
    }

    symmetrize(net.capacitance);
    symmetrize(net.conductance);
    symmetrize(net.reluctance);
    validate(net);
    result.network = std::move(net);
    return result;
}

PassivityReport check_passivity(const ElectricalNetwork& network,
                                const Eigen::MatrixXd& capacitance_piezo,
                                const ModalBasis* electrical)
{
    const int ne = network.n_total();
    const int p = network.n_ports();
    if (network.conductance.rows() != ne || network.reluctance.rows() != ne
        || network.localization.rows() != ne) {
        throw ModelError("check_passivity: inconsistent network dimensions");
    }
    if (capacitance_piezo.rows() != p || capacitance_piezo.cols() != p) {
        throw ModelError("check_passivity: transducer capacitance must be "
                         + std::to_string(p) + "x" + std::to_string(p));
    }
    if (!nearly_symmetric(network.capacitance, tol::psd)
        || !nearly_symmetric(network.conductance, tol::psd)
        || !nearly_symmetric(network.reluctance, tol::psd)) {
        throw ModelError("check_passivity: network matrices must be symmetric");
    }

    PassivityReport report;
    report.min_eig_capacitance = sym_min_eigenvalue(network.capacitance);
    report.min_eig_conductance = sym_min_eigenvalue(network.conductance);
    report.min_eig_reluctance = sym_min_eigenvalue(network.reluctance);
    report.norm_capacitance = sym_spectral_norm(network.capacitance);

    const Eigen::MatrixXd interconnect =
        network.capacitance
        - network.localization * capacitance_piezo * network.localization.transpose();
    report.min_eig_interconnect = sym_min_eigenvalue(interconnect);

    const auto slack = [](const Eigen::MatrixXd& a) {
        return tol::psd * sym_spectral_norm(a);
    };
    report.passive =
        report.min_eig_capacitance >= -slack(network.capacitance)
        && report.min_eig_conductance >= -slack(network.conductance)
        && report.min_eig_reluctance >= -slack(network.reluctance)
        && report.min_eig_interconnect >= -tol::psd * report.norm_capacitance;

    if (electrical != nullptr) {
        if (electrical->dim() != ne) {
            throw ModelError("check_passivity: electrical basis dimension mismatch");
        }
        const Eigen::MatrixXd cp_inv = capacitance_piezo.llt().solve(
            Eigen::MatrixXd::Identity(p, p));
        const Eigen::MatrixXd port_shapes =
            network.localization.transpose() * electrical->shapes;
        Eigen::MatrixXd bound = cp_inv - port_shapes * port_shapes.transpose();
        symmetrize(bound);
        report.min_eig_shape_bound = sym_min_eigenvalue(bound);
    }
    return report;
}

std::string format_passivity_report(const PassivityReport& report)
{
    char line[96];
    std::string text;
    const auto add = [&](const char* name, double value) {
        std::snprintf(line, sizeof line, "%-28s = % .12e\n", name, value);
        text += line;
    };
    add("lambda_min(capacitance)", report.min_eig_capacitance);
    add("lambda_min(conductance)", report.min_eig_conductance);
    add("lambda_min(reluctance)", report.min_eig_reluctance);
    add("lambda_min(interconnect)", report.min_eig_interconnect);
    add("norm(capacitance)", report.norm_capacitance);
    if (report.min_eig_shape_bound) {
        add("lambda_min(shape_bound)", *report.min_eig_shape_bound);
    }
    text += report.passive ? "verdict = passive\n" : "verdict = not passive\n";
    return text;
}

} // namespace shuntnet
