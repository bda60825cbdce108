#include "shuntnet/scenario.hpp"

#include "shuntnet/bundle_io.hpp"
#include "shuntnet/errors.hpp"
#include "shuntnet/modal.hpp"
#include "shuntnet/synthesis.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <variant>

namespace shuntnet {

namespace {

// ---------------------------------------------------------------------------
// scenario file parsing

using Value = std::variant<double, std::string, std::vector<double>>;

struct Table {
    std::map<std::string, Value> entries;
};

struct RawScenario {
    std::map<std::string, Table> sections;
    std::vector<Table> sweeps;
};

std::string trim(const std::string& s)
{
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return {};
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::string strip_comment(const std::string& line)
{
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') {
            quoted = !quoted;
        } else if (line[i] == '#' && !quoted) {
            return line.substr(0, i);
        }
    }
    return line;
}

bool parse_number(const std::string& token, double& out)
{
    const char* begin = token.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end != begin && *end == '\0';
}

Value parse_value(const std::string& raw, const std::string& context)
{
    const std::string token = trim(raw);
    if (token.empty()) {
        throw ParseError(context + ": empty value");
    }
    if (token.front() == '[') {
        if (token.back() != ']') {
            throw ParseError(context + ": unterminated array");
        }
        std::vector<double> numbers;
        std::istringstream body(token.substr(1, token.size() - 2));
        std::string cell;
        while (std::getline(body, cell, ',')) {
            const std::string t = trim(cell);
            if (t.empty()) {
                continue;
            }
            double v = 0.0;
            if (!parse_number(t, v)) {
                throw ParseError(context + ": bad array entry '" + t + "'");
            }
            numbers.push_back(v);
        }
        return numbers;
    }
    if (token.front() == '"') {
        if (token.size() < 2 || token.back() != '"') {
            throw ParseError(context + ": unterminated string");
        }
        return token.substr(1, token.size() - 2);
    }
    double v = 0.0;
    if (parse_number(token, v)) {
        return v;
    }
    return token; // bare word
}

RawScenario parse_raw(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in) {
        throw IoError("cannot open scenario " + file.string());
    }
    RawScenario raw;
    Table* current = nullptr;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string context = file.string() + ":" + std::to_string(line_no);
        const std::string t = trim(strip_comment(line));
        if (t.empty()) {
            continue;
        }
        if (t.front() == '[') {
            if (t.size() >= 4 && t[1] == '[') {
                if (t.substr(t.size() - 2) != "]]") {
                    throw ParseError(context + ": malformed table header");
                }
                const std::string name = trim(t.substr(2, t.size() - 4));
                if (name != "sweep") {
                    throw ParseError(context + ": unknown repeated section '" + name + "'");
                }
                raw.sweeps.emplace_back();
                current = &raw.sweeps.back();
            } else {
                if (t.back() != ']') {
                    throw ParseError(context + ": malformed section header");
                }
                const std::string name = trim(t.substr(1, t.size() - 2));
                if (raw.sections.count(name) != 0) {
                    throw ParseError(context + ": duplicate section '" + name + "'");
                }
                current = &raw.sections[name];
            }
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos || current == nullptr) {
            throw ParseError(context + ": expected 'key = value' inside a section");
        }
        const std::string key = trim(t.substr(0, eq));
        if (key.empty()) {
            throw ParseError(context + ": empty key");
        }
        if (current->entries.count(key) != 0) {
            throw ParseError(context + ": duplicate key '" + key + "'");
        }
        current->entries[key] = parse_value(t.substr(eq + 1), context);
    }
    return raw;
}

// typed accessors with error context

class TableReader {
public:
    TableReader(const Table& table, std::string name)
        : table_(table), name_(std::move(name))
    {
    }

    bool has(const std::string& key) const { return table_.entries.count(key) != 0; }

    double number(const std::string& key, double fallback) const
    {
        if (!has(key)) {
            return fallback;
        }
        return number(key);
    }

    double number(const std::string& key) const
    {
        const auto* v = std::get_if<double>(&get(key));
        if (v == nullptr) {
            throw ParseError(name_ + "." + key + ": expected a number");
        }
        return *v;
    }

    int integer(const std::string& key, int fallback) const
    {
        if (!has(key)) {
            return fallback;
        }
        const double v = number(key);
        if (v != std::floor(v)) {
            throw ParseError(name_ + "." + key + ": expected an integer");
        }
        return static_cast<int>(v);
    }

    std::string word(const std::string& key, const std::string& fallback) const
    {
        if (!has(key)) {
            return fallback;
        }
        const auto* v = std::get_if<std::string>(&get(key));
        if (v == nullptr) {
            throw ParseError(name_ + "." + key + ": expected a word or string");
        }
        return *v;
    }

    std::vector<double> array(const std::string& key) const
    {
        const auto* v = std::get_if<std::vector<double>>(&get(key));
        if (v == nullptr) {
            throw ParseError(name_ + "." + key + ": expected an array");
        }
        return *v;
    }

    void allow_only(std::initializer_list<const char*> keys) const
    {
        for (const auto& [key, value] : table_.entries) {
            bool known = false;
            for (const char* k : keys) {
                known = known || key == k;
            }
            if (!known) {
                throw ParseError(name_ + ": unknown key '" + key + "'");
            }
        }
    }

private:
    const Value& get(const std::string& key) const
    {
        const auto it = table_.entries.find(key);
        if (it == table_.entries.end()) {
            throw ParseError(name_ + ": missing key '" + key + "'");
        }
        return it->second;
    }

    const Table& table_;
    std::string name_;
};

SweepConfig parse_sweep(const Table& table, int index)
{
    TableReader r(table, "sweep " + std::to_string(index));
    r.allow_only({"f_min", "f_max", "points", "spacing", "mech_damping",
                  "input_dof", "output_dof", "quantity"});
    SweepConfig s;
    s.f_min_hz = r.number("f_min");
    s.f_max_hz = r.number("f_max");
    s.n_points = r.integer("points", 400);
    const std::string spacing = r.word("spacing", "log");
    if (spacing == "log") {
        s.spacing = FrequencySpacing::Log;
    } else if (spacing == "linear") {
        s.spacing = FrequencySpacing::Linear;
    } else {
        throw ParseError("sweep.spacing: expected log or linear");
    }
    s.mech_damping = r.number("mech_damping", 0.0);
    s.input_dof = r.integer("input_dof", -1);  // -1 = model default
    s.output_dof = r.integer("output_dof", -1);
    const std::string quantity = r.word("quantity", "velocity");
    if (quantity == "velocity") {
        s.quantity = ResponseQuantity::Velocity;
    } else if (quantity == "displacement") {
        s.quantity = ResponseQuantity::Displacement;
    } else {
        throw ParseError("sweep.quantity: expected velocity or displacement");
    }
    return s;
}

} // namespace

Scenario parse_scenario_file(const std::filesystem::path& file)
{
    const RawScenario raw = parse_raw(file);
    for (const auto& [name, table] : raw.sections) {
        if (name != "model" && name != "beam" && name != "synthesis"
            && name != "comparison" && name != "output") {
            throw ParseError(file.string() + ": unknown section '" + name + "'");
        }
    }

    Scenario scenario;

    if (raw.sections.count("model") != 0) {
        TableReader r(raw.sections.at("model"), "model");
        r.allow_only({"source", "path"});
        const std::string source = r.word("source", "beam");
        if (source == "beam") {
            scenario.source = ModelSource::Beam;
        } else if (source == "import") {
            scenario.source = ModelSource::Import;
            scenario.import_path = r.word("path", "");
            if (scenario.import_path.empty()) {
                throw ParseError("model.path: required when source = import");
            }
        } else {
            throw ParseError("model.source: expected beam or import");
        }
    }

    if (raw.sections.count("beam") != 0) {
        if (scenario.source != ModelSource::Beam) {
            throw ParseError("beam section given for an imported model");
        }
        TableReader r(raw.sections.at("beam"), "beam");
        r.allow_only({"n_cells", "elements_per_cell", "length", "width", "thickness",
                      "density", "youngs_modulus", "patch_capacitance",
                      "patch_coupling", "patch_stiffness_add", "groups"});
        BeamConfig& b = scenario.beam;
        b.n_cells = r.integer("n_cells", b.n_cells);
        b.elements_per_cell = r.integer("elements_per_cell", b.elements_per_cell);
        b.length = r.number("length", b.length);
        b.width = r.number("width", b.width);
        b.thickness = r.number("thickness", b.thickness);
        b.density = r.number("density", b.density);
        b.youngs_modulus = r.number("youngs_modulus", b.youngs_modulus);
        b.patch_capacitance = r.number("patch_capacitance", b.patch_capacitance);
        b.patch_coupling = r.number("patch_coupling", b.patch_coupling);
        b.patch_stiffness_add = r.number("patch_stiffness_add", b.patch_stiffness_add);
        const int groups = r.integer("groups", 0);
        if (groups > 0) {
            b.grouping = contiguous_groups(b.n_cells, groups);
        }
    }

    if (raw.sections.count("synthesis") != 0) {
        TableReader r(raw.sections.at("synthesis"), "synthesis");
        r.allow_only({"targets", "relative_scaling", "internal_shapes", "alpha", "seed"});
        scenario.synthesize_network = true;
        for (double v : r.array("targets")) {
            if (v != std::floor(v) || v < 1.0) {
                throw ParseError("synthesis.targets: expected 1-based mode numbers");
            }
            scenario.targets.push_back(static_cast<int>(v));
        }
        if (scenario.targets.empty()) {
            throw ParseError("synthesis.targets: empty target list");
        }
        if (r.has("relative_scaling")) {
            const auto weights = r.array("relative_scaling");
            scenario.relative_scaling =
                Eigen::Map<const Eigen::VectorXd>(weights.data(), weights.size());
        }
        const std::string policy = r.word("internal_shapes", "identity-pad");
        if (policy == "identity-pad") {
            scenario.internal_shapes = InternalShapePolicy::IdentityPad;
        } else if (policy == "random-orthogonal") {
            scenario.internal_shapes = InternalShapePolicy::RandomOrthogonal;
        } else {
            throw ParseError("synthesis.internal_shapes: expected identity-pad "
                             "or random-orthogonal");
        }
        if (r.has("alpha")) {
            const auto& value = raw.sections.at("synthesis").entries.at("alpha");
            if (const auto* word = std::get_if<std::string>(&value)) {
                if (*word != "at-bound") {
                    throw ParseError("synthesis.alpha: expected at-bound or a fraction");
                }
                scenario.alpha_fraction = 1.0;
            } else {
                scenario.alpha_fraction = r.number("alpha");
            }
        }
        const double seed = r.number("seed", 0.0);
        if (seed < 0.0 || seed != std::floor(seed) || seed > 9.007199254740992e15) {
            throw ParseError("synthesis.seed: expected a nonnegative integer");
        }
        scenario.seed = static_cast<std::uint64_t>(seed);
    }

    if (raw.sections.count("comparison") != 0) {
        TableReader r(raw.sections.at("comparison"), "comparison");
        r.allow_only({"type", "cp", "resistance", "inductance", "ratio"});
        if (r.word("type", "analog-cells") != "analog-cells") {
            throw ParseError("comparison.type: only analog-cells is supported");
        }
        scenario.comparison.enabled = true;
        AnalogCellConfig& cell = scenario.comparison.cell;
        cell.cp = r.number("cp", cell.cp);
        cell.resistance = r.number("resistance", cell.resistance);
        cell.inductance = r.number("inductance", cell.inductance);
        cell.ratio = r.number("ratio", cell.ratio);
    }

    int sweep_index = 0;
    for (const Table& table : raw.sweeps) {
        scenario.sweeps.push_back(parse_sweep(table, ++sweep_index));
    }

    if (raw.sections.count("output") != 0) {
        TableReader r(raw.sections.at("output"), "output");
        r.allow_only({"dir"});
        scenario.out_dir = r.word("dir", scenario.out_dir.string());
    }

    return scenario;
}

std::vector<Band> resonance_bands(const Eigen::VectorXd& freqs_hz, double half_width_rel)
{
    std::vector<Band> bands;
    bands.reserve(freqs_hz.size());
    for (Eigen::Index i = 0; i < freqs_hz.size(); ++i) {
        bands.push_back({freqs_hz(i) * (1.0 - half_width_rel),
                         freqs_hz(i) * (1.0 + half_width_rel)});
    }
    return bands;
}

int exit_code_for(const std::exception& error)
{
    if (dynamic_cast<const ParseError*>(&error) != nullptr) {
        return exit_code::parse;
    }
    if (dynamic_cast<const ModelError*>(&error) != nullptr) {
        return exit_code::model;
    }
    if (dynamic_cast<const SynthesisError*>(&error) != nullptr) {
        return exit_code::synthesis;
    }
    return exit_code::numerics; // NumericsError, IoError and anything unexpected
}

namespace {

std::string fmt(double v)
{
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.12g", v);
    return buffer;
}

std::ofstream open_out(const std::filesystem::path& file)
{
    std::ofstream out(file);
    if (!out) {
        throw IoError("cannot write " + file.string());
    }
    return out;
}

} // namespace

void run_pipeline(const Scenario& scenario, const RunOverrides& overrides,
                  std::ostream& log)
{
    const auto out_dir = overrides.out_dir.value_or(scenario.out_dir);
    const std::uint64_t seed = overrides.seed.value_or(scenario.seed);
    const bool quiet = overrides.quiet;
    const auto say = [&](const std::string& line) {
        if (!quiet) {
            log << line << "\n";
        }
    };

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
    }

    PiezoStructureModel model;
    if (scenario.source == ModelSource::Beam) {
        model = build_beam(scenario.beam);
    } else {
        model = import_model(scenario.import_path);
    }
    const int n = model.n_dof();
    say("model: " + std::to_string(n) + " dofs, "
        + std::to_string(model.n_transducers()) + " transducer ports");

    const ModalBasis mech =
        solve_modes(model.stiffness_sc, model.mass, Normalization::Mass);

    std::optional<SynthesisResult> synthesis;
    std::vector<int> targets0;
    if (scenario.synthesize_network) {
        for (int t : scenario.targets) {
            if (t < 1 || t > mech.n_modes()) {
                throw SynthesisError("target mode " + std::to_string(t)
                                     + " outside 1.." + std::to_string(mech.n_modes()));
            }
            targets0.push_back(t - 1);
        }
        SynthesisConfig cfg;
        cfg.targeted_modes = targets0;
        cfg.relative_scaling = scenario.relative_scaling;
        cfg.internal_shapes = scenario.internal_shapes;
        cfg.alpha_fraction = scenario.alpha_fraction;
        cfg.seed = seed;
        synthesis = synthesize(model, mech, cfg);

        for (std::size_t k = 0; k < targets0.size(); ++k) {
            const double f = std::sqrt(mech.omega_sq(targets0[k])) / (2.0 * std::numbers::pi);
            say("target mode " + std::to_string(scenario.targets[k]) + ": "
                + fmt(f) + " Hz, electrical tuning "
                + fmt(std::sqrt(synthesis->tuning.omega_e_sq(k)) / (2.0 * std::numbers::pi))
                + " Hz, zeta " + fmt(synthesis->tuning.zeta_e(k)));
        }
        say("alpha = " + fmt(synthesis->shapes.alpha) + ", shape matrix condition = "
            + fmt(synthesis->phi_e_condition));

        export_network(synthesis->network, out_dir / "network");

        const ModalBasis electrical = solve_modes(synthesis->network.reluctance,
                                                  synthesis->network.capacitance,
                                                  Normalization::Capacitance);
        const CouplingTable table = coupling_coefficients(
            model, mech, synthesis->network, electrical, targets0);
        {
            auto csv = open_out(out_dir / "eemcf.csv");
            csv << "mech_mode,elec_mode,gamma,eemcf\n";
            for (Eigen::Index r = 0; r < table.gamma.rows(); ++r) {
                for (Eigen::Index k = 0; k < table.gamma.cols(); ++k) {
                    csv << scenario.targets[r] << "," << (k + 1) << ","
                        << fmt(table.gamma(r, k)) << "," << fmt(table.eemcf(r, k)) << "\n";
                }
            }
        }
        {
            const Eigen::MatrixXd mac = auto_mac(synthesis->shapes.dimensionless);
            auto csv = open_out(out_dir / "auto_mac.csv");
            csv << "mode";
            for (int t : scenario.targets) {
                csv << "," << t;
            }
            csv << "\n";
            for (Eigen::Index i = 0; i < mac.rows(); ++i) {
                csv << scenario.targets[i];
                for (Eigen::Index j = 0; j < mac.cols(); ++j) {
                    csv << "," << fmt(mac(i, j));
                }
                csv << "\n";
            }
        }
        {
            const PassivityReport report = check_passivity(
                synthesis->network, model.capacitance_piezo, &electrical);
            const OrthogonalityReport orth =
                orthogonality_report(synthesis->network, electrical);
            auto txt = open_out(out_dir / "passivity.txt");
            txt << format_passivity_report(report);
            txt << "offdiag(capacitance) = " << fmt(orth.capacitance_residual) << "\n";
            txt << "offdiag(conductance) = " << fmt(orth.conductance_residual) << "\n";
            txt << "offdiag(reluctance) = " << fmt(orth.reluctance_residual) << "\n";
            say(std::string("synthesized network: ")
                + (report.passive ? "passive" : "NOT passive"));
            if (!report.passive) {
                say("  see " + (out_dir / "passivity.txt").string());
            }
        }
    }

    std::optional<ElectricalNetwork> analog;
    if (scenario.comparison.enabled) {
        const int cells = scenario.source == ModelSource::Beam
                              ? scenario.beam.n_cells
                              : model.n_transducers();
        analog = build_analog_network(scenario.comparison.cell, cells);
        if (analog->n_ports() != model.n_transducers()) {
            throw ModelError("analog comparison needs one ungrouped port per cell");
        }
        const PassivityReport report =
            check_passivity(*analog, model.capacitance_piezo);
        auto txt = open_out(out_dir / "analog_passivity.txt");
        txt << format_passivity_report(report);
        say(std::string("analog network: ")
            + (report.passive ? "passive" : "NOT passive"));
    }

    // assessment bands around the targeted short circuit resonances
    std::vector<Band> bands;
    if (!targets0.empty()) {
        Eigen::VectorXd freqs(targets0.size());
        for (std::size_t k = 0; k < targets0.size(); ++k) {
            freqs(k) = std::sqrt(mech.omega_sq(targets0[k])) / (2.0 * std::numbers::pi);
        }
        bands = resonance_bands(freqs);
    }

    std::optional<std::ofstream> attenuation_csv;
    const auto attenuation_rows = [&](int sweep_no, const std::string& curve,
                                      const FrfResult& base, const FrfResult& damped,
                                      const SweepConfig& sweep) {
        if (bands.empty()) {
            return;
        }
        std::vector<Band> inside;
        std::vector<int> numbers;
        for (std::size_t b = 0; b < bands.size(); ++b) {
            Band clipped = bands[b];
            clipped.f_low_hz = std::max(clipped.f_low_hz, sweep.f_min_hz);
            clipped.f_high_hz = std::min(clipped.f_high_hz, sweep.f_max_hz);
            if (clipped.f_low_hz < clipped.f_high_hz) {
                inside.push_back(clipped);
                numbers.push_back(static_cast<int>(b) + 1);
            }
        }
        if (inside.empty()) {
            return;
        }
        const std::vector<double> values = attenuation(base, damped, inside);
        if (!attenuation_csv) {
            attenuation_csv = open_out(out_dir / "attenuation.csv");
            *attenuation_csv << "sweep,curve,band,f_low_hz,f_high_hz,attenuation_db\n";
        }
        for (std::size_t b = 0; b < inside.size(); ++b) {
            *attenuation_csv << sweep_no << "," << curve << "," << numbers[b] << ","
                             << fmt(inside[b].f_low_hz) << "," << fmt(inside[b].f_high_hz)
                             << "," << fmt(values[b]) << "\n";
            say("sweep " + std::to_string(sweep_no) + " " + curve + " band "
                + std::to_string(numbers[b]) + ": " + fmt(values[b]) + " dB");
        }
    };

    int sweep_no = 0;
    for (SweepConfig sweep : scenario.sweeps) {
        ++sweep_no;
        if (sweep.input_dof < 0) {
            sweep.input_dof = 0;
        }
        if (sweep.output_dof < 0) {
            sweep.output_dof = scenario.source == ModelSource::Beam ? n - 2 : 0;
        }
        const std::string stem = "sweep" + std::to_string(sweep_no);

        FrfResult base = coupled_frf(model, nullptr, sweep);
        base.label = "short_circuit";
        write_frf_csv(base, out_dir / (stem + "_short_circuit.csv"));
        say(stem + ": " + std::to_string(base.freq_hz.size()) + " points");

        if (synthesis) {
            FrfResult damped = coupled_frf(model, &synthesis->network, sweep);
            damped.label = "network";
            write_frf_csv(damped, out_dir / (stem + "_network.csv"));
            attenuation_rows(sweep_no, "network", base, damped, sweep);
        }
        if (analog) {
            FrfResult damped = coupled_frf(model, &*analog, sweep);
            damped.label = "analog";
            write_frf_csv(damped, out_dir / (stem + "_analog.csv"));
            attenuation_rows(sweep_no, "analog", base, damped, sweep);
        }
    }

    say("artifacts in " + out_dir.string());
}

int command_run(const std::filesystem::path& scenario_file,
                const RunOverrides& overrides,
                std::ostream& out, std::ostream& err)
{
    try {
        const Scenario scenario = parse_scenario_file(scenario_file);
        run_pipeline(scenario, overrides, out);
        return exit_code::ok;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int command_list_modes(const std::filesystem::path& scenario_file,
                       const RunOverrides& overrides,
                       std::ostream& out, std::ostream& err)
{
    (void)overrides;
    try {
        const Scenario scenario = parse_scenario_file(scenario_file);
        const PiezoStructureModel model = scenario.source == ModelSource::Beam
                                              ? build_beam(scenario.beam)
                                              : import_model(scenario.import_path);
        const CircuitShiftTable table = circuit_shift_eemcf(model);
        out << "mode        freq_hz  rigid         eemcf\n";
        char line[96];
        for (Eigen::Index i = 0; i < table.omega_sc_sq.size(); ++i) {
            const double f = std::sqrt(table.omega_sc_sq(i)) / (2.0 * std::numbers::pi);
            std::snprintf(line, sizeof line, "%4ld %14.6e  %5s  %12.6e\n",
                          static_cast<long>(i + 1), f,
                          table.rigid[i] ? "yes" : "no", table.eemcf(i));
            out << line;
        }
        return exit_code::ok;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int command_check(const std::filesystem::path& network_dir,
                  const std::filesystem::path& model_dir,
                  std::ostream& out, std::ostream& err)
{
    try {
        const ElectricalNetwork network = import_network(network_dir);
        const PiezoStructureModel model = import_model(model_dir);
        if (network.n_ports() != model.n_transducers()) {
            throw ModelError("check: network has " + std::to_string(network.n_ports())
                             + " ports, model has "
                             + std::to_string(model.n_transducers()) + " transducers");
        }
        PassivityReport report;
        try {
            const ModalBasis electrical = solve_modes(
                network.reluctance, network.capacitance, Normalization::Capacitance);
            report = check_passivity(network, model.capacitance_piezo, &electrical);
        } catch (const ModelError&) {
            // singular capacitance: no electrical basis, spectral checks only
            report = check_passivity(network, model.capacitance_piezo);
        }
        out << format_passivity_report(report);
        return report.passive ? exit_code::ok : exit_code::check_failed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

} // namespace shuntnet
