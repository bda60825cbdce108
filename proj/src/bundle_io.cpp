#include "shuntnet/bundle_io.hpp"

#include "shuntnet/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace shuntnet {

namespace {

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string trim(const std::string& s)
{
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return {};
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& token, const std::filesystem::path& file)
{
    const char* begin = token.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw ParseError(file.string() + ": bad numeric value '" + token + "'");
    }
    return value;
}

} // namespace

Eigen::MatrixXd read_matrix_market(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in) {
        throw IoError("cannot open " + file.string());
    }

    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(file.string() + ": empty file");
    }
    std::istringstream banner(line);
    std::string tag, object, format, field, symmetry;
    banner >> tag >> object >> format >> field >> symmetry;
    if (lower(tag) != "%%matrixmarket" || lower(object) != "matrix"
        || lower(format) != "array" || lower(field) != "real"
        || lower(symmetry) != "general") {
        throw ParseError(file.string() + ": unsupported Matrix Market header '" + line + "'");
    }

    // skip comment lines, then read the size line
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (!t.empty() && t[0] != '%') {
            break;
        }
    }
    std::istringstream size_line(line);
    long rows = -1;
    long cols = -1;
    size_line >> rows >> cols;
    if (rows < 0 || cols < 0) {
        throw ParseError(file.string() + ": bad size line '" + line + "'");
    }

    Eigen::MatrixXd a(rows, cols);
    std::string token;
    for (long j = 0; j < cols; ++j) {
        for (long i = 0; i < rows; ++i) {
            if (!(in >> token)) {
                throw ParseError(file.string() + ": fewer values than the size line promises");
            }
            a(i, j) = parse_double(token, file);
        }
    }
    if (in >> token) {
        throw ParseError(file.string() + ": trailing data after the last value");
    }
    return a;
}

void write_matrix_market(const Eigen::MatrixXd& a, const std::filesystem::path& file)
{
    std::ofstream out(file);
    if (!out) {
        throw IoError("cannot write " + file.string());
    }
    out << "%%MatrixMarket matrix array real general\n";
    out << a.rows() << " " << a.cols() << "\n";
    char buffer[40];
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            std::snprintf(buffer, sizeof buffer, "%.17g", a(i, j));
            out << buffer << "\n";
        }
    }
    if (!out) {
        throw IoError("write failed for " + file.string());
    }
}

namespace {

constexpr const char* manifest_name = "manifest.txt";

std::map<std::string, std::string> read_manifest(const std::filesystem::path& dir)
{
    const auto path = dir / manifest_name;
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::map<std::string, std::string> entries;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') {
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ParseError(path.string() + ": expected 'key = value', got '" + t + "'");
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ParseError(path.string() + ": empty key or value in '" + t + "'");
        }
        entries[key] = value;
    }
    return entries;
}

Eigen::MatrixXd read_role(const std::map<std::string, std::string>& manifest,
                          const std::filesystem::path& dir, const std::string& role)
{
    const auto it = manifest.find(role);
    if (it == manifest.end()) {
        throw ParseError((dir / manifest_name).string() + ": missing entry '" + role + "'");
    }
    return read_matrix_market(dir / it->second);
}

void check_kind(const std::map<std::string, std::string>& manifest,
                const std::filesystem::path& dir, const std::string& expected)
{
    const auto it = manifest.find("kind");
    if (it == manifest.end() || it->second != expected) {
        throw ParseError((dir / manifest_name).string() + ": expected kind '" + expected + "'");
    }
}

void write_bundle(const std::filesystem::path& dir, const std::string& kind,
                  const std::vector<std::pair<std::string, const Eigen::MatrixXd*>>& roles)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create " + dir.string() + ": " + ec.message());
    }
    std::ofstream manifest(dir / manifest_name);
    if (!manifest) {
        throw IoError("cannot write " + (dir / manifest_name).string());
    }
    manifest << "kind = " << kind << "\n";
    for (const auto& [role, matrix] : roles) {
        const std::string filename = role + ".mtx";
        manifest << role << " = " << filename << "\n";
        write_matrix_market(*matrix, dir / filename);
    }
    if (!manifest) {
        throw IoError("write failed for " + (dir / manifest_name).string());
    }
}

} // namespace

PiezoStructureModel import_model(const std::filesystem::path& dir, BundleFormat)
{
    const auto manifest = read_manifest(dir);
    check_kind(manifest, dir, "piezo_structure");
    PiezoStructureModel model;
    model.mass = read_role(manifest, dir, "mass");
    model.stiffness_sc = read_role(manifest, dir, "stiffness_sc");
    model.coupling = read_role(manifest, dir, "coupling");
    model.capacitance_piezo = read_role(manifest, dir, "capacitance_piezo");
    validate(model);
    return model;
}

void export_model(const PiezoStructureModel& model, const std::filesystem::path& dir)
{
    write_bundle(dir, "piezo_structure",
                 {{"mass", &model.mass},
                  {"stiffness_sc", &model.stiffness_sc},
                  {"coupling", &model.coupling},
                  {"capacitance_piezo", &model.capacitance_piezo}});
}

ElectricalNetwork import_network(const std::filesystem::path& dir, BundleFormat)
{
    const auto manifest = read_manifest(dir);
    check_kind(manifest, dir, "electrical_network");
    ElectricalNetwork network;
    network.capacitance = read_role(manifest, dir, "capacitance");
    network.conductance = read_role(manifest, dir, "conductance");
    network.reluctance = read_role(manifest, dir, "reluctance");
    network.localization = read_role(manifest, dir, "localization");
    validate(network);
    return network;
}

void export_network(const ElectricalNetwork& network, const std::filesystem::path& dir)
{
    write_bundle(dir, "electrical_network",
                 {{"capacitance", &network.capacitance},
                  {"conductance", &network.conductance},
                  {"reluctance", &network.reluctance},
                  {"localization", &network.localization}});
}

} // namespace shuntnet
