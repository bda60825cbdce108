#include "shuntnet/frf.hpp"

#include "shuntnet/errors.hpp"
#include "shuntnet/modal.hpp"
#include "shuntnet/synthesis.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

namespace shuntnet {

namespace {

constexpr double pole_gap = 1e-6; // relative keep-out around listed resonances

void check_sweep(const SweepConfig& sweep)
{
    if (!(sweep.f_min_hz > 0.0) || !(sweep.f_max_hz > sweep.f_min_hz)) {
        throw ModelError("sweep: need 0 < f_min < f_max");
    }
    if (sweep.n_points < 2) {
        throw ModelError("sweep: need at least two base points");
    }
    if (!(sweep.mech_damping >= 0.0)) {
        throw ModelError("sweep: negative mechanical damping");
    }
}

} // namespace

Eigen::VectorXd make_grid(const SweepConfig& sweep, const Eigen::VectorXd& resonances_hz)
{
    check_sweep(sweep);
    std::vector<double> pts;
    pts.reserve(sweep.n_points + 200 * resonances_hz.size());

    const double fmin = sweep.f_min_hz;
    const double fmax = sweep.f_max_hz;
    for (int i = 0; i < sweep.n_points; ++i) {
        const double t = double(i) / double(sweep.n_points - 1);
        pts.push_back(sweep.spacing == FrequencySpacing::Linear
                          ? fmin + t * (fmax - fmin)
                          : fmin * std::pow(fmax / fmin, t));
    }

    // resolve peaks: extra log spaced points in a +-5% window per resonance
    for (Eigen::Index r = 0; r < resonances_hz.size(); ++r) {
        const double fr = resonances_hz(r);
        if (!(fr > 0.0)) {
            continue;
        }
        const double lo = std::max(fmin, 0.95 * fr);
        const double hi = std::min(fmax, 1.05 * fr);
        if (!(lo < hi)) {
            continue;
        }
        for (int i = 0; i < 200; ++i) {
            const double t = double(i) / 199.0;
            pts.push_back(lo * std::pow(hi / lo, t));
        }
    }

    // keep every point a relative pole_gap away from the listed resonances
    for (double& f : pts) {
        for (Eigen::Index r = 0; r < resonances_hz.size(); ++r) {
            const double fr = resonances_hz(r);
            if (fr > 0.0 && std::abs(f - fr) < pole_gap * fr) {
                f = (f <= fr) ? fr * (1.0 - pole_gap) : fr * (1.0 + pole_gap);
            }
        }
    }

    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return Eigen::Map<const Eigen::VectorXd>(pts.data(), pts.size());
}

namespace {

using Complex = std::complex<double>;

struct SweepWorkspace {
    ModalBasis basis;
    Eigen::MatrixXcd port_modal; // coupling^T * shapes, complex copy
    Eigen::VectorXcd in_modal;   // shapes^T * e_in
    Eigen::VectorXcd out_modal;  // shapes^T * e_out
};

// Response of the coupled system at one frequency through the port
// condensation. Returns displacement at the output dof, or nullopt when a
// solve degenerates. `ypp` is E^T Y(s)^{-1} E, empty for the short circuit.
std::optional<Complex> point_response(const SweepWorkspace& w, double zeta_m,
                                      double omega, const Eigen::MatrixXcd* ypp)
{
    const Complex s(0.0, omega);
    const Eigen::Index m = w.basis.n_modes();

    Eigen::VectorXcd denom(m);
    for (Eigen::Index k = 0; k < m; ++k) {
        const double wk2 = w.basis.omega_sq(k);
        denom(k) = Complex(wk2 - omega * omega,
                           2.0 * zeta_m * std::sqrt(wk2) * omega);
    }

    const Eigen::VectorXcd d_inv_b = w.in_modal.cwiseQuotient(denom);
    if (ypp == nullptr) {
        return (w.out_modal.transpose() * d_inv_b)(0); // sum c_k b_k / d_k
    }

    const Eigen::Index p = ypp->rows();
    const Eigen::MatrixXcd weight = s * (*ypp);
    const Eigen::MatrixXcd u_dinv =
        w.port_modal * denom.cwiseInverse().asDiagonal();
    const Eigen::MatrixXcd gram = u_dinv * w.port_modal.transpose();
    // (W^-1 + S)^-1 = (I + W S)^-1 W, with S = U D^-1 U^T; the ordering
    // matters, S and W do not commute
    const Eigen::MatrixXcd inner =
        Eigen::MatrixXcd::Identity(p, p) + weight * gram;
    const Eigen::VectorXcd t = w.port_modal * d_inv_b;
    const Eigen::VectorXcd solved = inner.partialPivLu().solve(weight * t);
    if (!solved.allFinite()) {
        return std::nullopt;
    }
    const Eigen::VectorXcd eta =
        d_inv_b - (w.port_modal.transpose() * solved).cwiseQuotient(denom);
    const Complex response = (w.out_modal.transpose() * eta)(0);
    if (!std::isfinite(response.real()) || !std::isfinite(response.imag())) {
        return std::nullopt;
    }
    return response;
}

} // namespace

FrfResult coupled_frf(const PiezoStructureModel& model,
                      const ElectricalNetwork* network,
                      const SweepConfig& sweep)
{
    validate(model);
    check_sweep(sweep);
    const int n = model.n_dof();
    if (sweep.input_dof < 0 || sweep.input_dof >= n
        || sweep.output_dof < 0 || sweep.output_dof >= n) {
        throw ModelError("sweep: input or output dof out of range");
    }
    if (network != nullptr) {
        validate(*network);
        if (network->n_ports() != model.n_transducers()) {
            throw ModelError("coupled_frf: network port count does not match the model");
        }
    }

    SweepWorkspace w;
    w.basis = solve_modes(model.stiffness_sc, model.mass, Normalization::Mass);
    w.port_modal = (model.coupling.transpose() * w.basis.shapes).cast<Complex>();
    w.in_modal = w.basis.shapes.row(sweep.input_dof).transpose().cast<Complex>();
    w.out_modal = w.basis.shapes.row(sweep.output_dof).transpose().cast<Complex>();

    std::vector<double> resonances;
    for (int i : flexible_mode_indices(w.basis)) {
        resonances.push_back(std::sqrt(w.basis.omega_sq(i)) / (2.0 * std::numbers::pi));
    }
    const Eigen::VectorXd grid = make_grid(
        sweep, Eigen::Map<const Eigen::VectorXd>(resonances.data(), resonances.size()));

    Eigen::MatrixXcd cap, con, rel, ports;
    if (network != nullptr) {
        cap = network->capacitance.cast<Complex>();
        con = network->conductance.cast<Complex>();
        rel = network->reluctance.cast<Complex>();
        ports = network->localization.cast<Complex>();
    }

    std::vector<double> kept_freq;
    std::vector<Complex> kept_resp;
    int skipped = 0;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        const double omega = 2.0 * std::numbers::pi * grid(i);
        const Complex s(0.0, omega);

        std::optional<Eigen::MatrixXcd> ypp;
        if (network != nullptr) {
            const Eigen::MatrixXcd y = s * cap + con + rel / s;
            const Eigen::MatrixXcd z = y.partialPivLu().solve(ports);
            if (!z.allFinite()) {
                ++skipped; // singular network admittance at this frequency
                continue;
            }
            ypp = ports.transpose() * z;
        }

        const auto response = point_response(
            w, sweep.mech_damping, omega, ypp ? &*ypp : nullptr);
        if (!response) {
            ++skipped;
            continue;
        }
        kept_freq.push_back(grid(i));
        kept_resp.push_back(sweep.quantity == ResponseQuantity::Velocity
                                ? s * *response
                                : *response);
    }

    FrfResult result;
    result.freq_hz = Eigen::Map<const Eigen::VectorXd>(kept_freq.data(), kept_freq.size());
    result.response = Eigen::Map<const Eigen::VectorXcd>(kept_resp.data(), kept_resp.size());
    result.input_dof = sweep.input_dof;
    result.output_dof = sweep.output_dof;
    result.quantity = sweep.quantity;
    result.skipped_points = skipped;
    result.label = network == nullptr ? "short_circuit" : "coupled";
    return result;
}

std::vector<double> attenuation(const FrfResult& baseline,
                                const FrfResult& damped,
                                const std::vector<Band>& bands)
{
    if (baseline.freq_hz.size() != damped.freq_hz.size()
        || baseline.freq_hz != damped.freq_hz) {
        throw ModelError("attenuation: results must share one grid");
    }
    std::vector<double> out;
    out.reserve(bands.size());
    for (const Band& band : bands) {
        double base_peak = 0.0;
        double damped_peak = 0.0;
        bool hit = false;
        for (Eigen::Index i = 0; i < baseline.freq_hz.size(); ++i) {
            const double f = baseline.freq_hz(i);
            if (f >= band.f_low_hz && f <= band.f_high_hz) {
                hit = true;
                base_peak = std::max(base_peak, std::abs(baseline.response(i)));
                damped_peak = std::max(damped_peak, std::abs(damped.response(i)));
            }
        }
        if (!hit) {
            throw ModelError("attenuation: band contains no grid point");
        }
        if (base_peak == 0.0 || damped_peak == 0.0) {
            throw NumericsError("attenuation: zero response inside a band");
        }
        out.push_back(20.0 * std::log10(base_peak / damped_peak));
    }
    return out;
}

namespace {

PiezoStructureModel sdof_model(double kc, double omega_sc, double cp)
{
    if (!(kc >= 0.0) || !(kc * kc < 2.0)) {
        throw SynthesisError("sdof_demo: kc must lie in [0, sqrt(2))");
    }
    if (!(omega_sc > 0.0) || !(cp > 0.0)) {
        throw SynthesisError("sdof_demo: omega_sc and cp must be positive");
    }
    PiezoStructureModel model;
    model.mass = Eigen::MatrixXd::Constant(1, 1, 1.0);
    model.stiffness_sc = Eigen::MatrixXd::Constant(1, 1, omega_sc * omega_sc);
    // kc^2 = gamma^2 / (cp * k_sc)
    model.coupling =
        Eigen::MatrixXd::Constant(1, 1, kc * std::sqrt(cp) * omega_sc);
    model.capacitance_piezo = Eigen::MatrixXd::Constant(1, 1, cp);
    return model;
}

SweepConfig scalar_sweep(const SweepConfig& sweep)
{
    SweepConfig s = sweep;
    s.input_dof = 0;
    s.output_dof = 0;
    return s;
}

} // namespace

FrfResult sdof_demo(double kc, double omega_sc, double cp, const SweepConfig& sweep)
{
    const PiezoStructureModel model = sdof_model(kc, omega_sc, cp);
    const RlTuning rl = yamada_sdof(kc * kc, omega_sc, cp);

    ElectricalNetwork net;
    net.capacitance = Eigen::MatrixXd::Constant(1, 1, cp);
    net.conductance = Eigen::MatrixXd::Constant(1, 1, rl.conductance);
    net.reluctance = Eigen::MatrixXd::Constant(1, 1, rl.reluctance);
    net.localization = Eigen::MatrixXd::Identity(1, 1);

    FrfResult result = coupled_frf(model, &net, scalar_sweep(sweep));
    result.label = "sdof_rl";
    return result;
}

FrfResult sdof_demo_short_circuit(double kc, double omega_sc, double cp,
                                  const SweepConfig& sweep)
{
    const PiezoStructureModel model = sdof_model(kc, omega_sc, cp);
    FrfResult result = coupled_frf(model, nullptr, scalar_sweep(sweep));
    result.label = "sdof_short_circuit";
    return result;
}

void write_frf_csv(const FrfResult& result, const std::filesystem::path& file)
{
    std::ofstream out(file);
    if (!out) {
        throw IoError("cannot write " + file.string());
    }
    out << "# label = " << result.label << "\n";
    out << "# input_dof = " << result.input_dof << "\n";
    out << "# output_dof = " << result.output_dof << "\n";
    out << "# quantity = "
        << (result.quantity == ResponseQuantity::Velocity ? "velocity" : "displacement")
        << "\n";
    out << "# skipped_points = " << result.skipped_points << "\n";
    out << "freq_hz,re,im,abs\n";
    char buffer[160];
    for (Eigen::Index i = 0; i < result.freq_hz.size(); ++i) {
        const Complex v = result.response(i);
        std::snprintf(buffer, sizeof buffer, "%.17g,%.17g,%.17g,%.17g\n",
                      result.freq_hz(i), v.real(), v.imag(), std::abs(v));
        out << buffer;
    }
    if (!out) {
        throw IoError("write failed for " + file.string());
    }
}

FrfResult read_frf_csv(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in) {
        throw IoError("cannot open " + file.string());
    }
    FrfResult result;
    std::vector<double> freq;
    std::vector<Complex> resp;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                continue;
            }
            const auto key_begin = line.find_first_not_of("# \t");
            const auto key_end = line.find_last_not_of(" \t", eq - 1);
            if (key_begin == std::string::npos || key_end == std::string::npos
                || key_end < key_begin) {
                continue;
            }
            const std::string key = line.substr(key_begin, key_end - key_begin + 1);
            const auto start = line.find_first_not_of(" \t", eq + 1);
            const std::string value =
                start == std::string::npos ? std::string() : line.substr(start);
            if (key == "label") {
                result.label = value;
            } else if (key == "input_dof") {
                result.input_dof = std::atoi(value.c_str());
            } else if (key == "output_dof") {
                result.output_dof = std::atoi(value.c_str());
            } else if (key == "quantity") {
                result.quantity = value == "displacement"
                                      ? ResponseQuantity::Displacement
                                      : ResponseQuantity::Velocity;
            } else if (key == "skipped_points") {
                result.skipped_points = std::atoi(value.c_str());
            }
            continue;
        }
        if (!header_seen) {
            if (line != "freq_hz,re,im,abs") {
                throw ParseError(file.string() + ": unexpected header '" + line + "'");
            }
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        std::string cell;
        double values[4];
        for (int k = 0; k < 4; ++k) {
            if (!std::getline(row, cell, ',')) {
                throw ParseError(file.string() + ": short row '" + line + "'");
            }
            char* end = nullptr;
            values[k] = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str()) {
                throw ParseError(file.string() + ": bad number '" + cell + "'");
            }
        }
        freq.push_back(values[0]);
        resp.emplace_back(values[1], values[2]);
    }
    if (!header_seen) {
        throw ParseError(file.string() + ": missing header row");
    }
    result.freq_hz = Eigen::Map<const Eigen::VectorXd>(freq.data(), freq.size());
    result.response = Eigen::Map<const Eigen::VectorXcd>(resp.data(), resp.size());
    return result;
}

} // namespace shuntnet
