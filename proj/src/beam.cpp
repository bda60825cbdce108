#include "shuntnet/beam.hpp"

#include "shuntnet/errors.hpp"

#include <set>
#include <string>

namespace shuntnet {

namespace {

void require(bool condition, const std::string& message)
{
    if (!condition) {
        throw ModelError(message);
    }
}

// Hermite cubic element matrices for a span of length l. Dof order per
// element is (w_left, theta_left, w_right, theta_right).
Eigen::Matrix4d element_stiffness(double ei, double l)
{
    Eigen::Matrix4d k;
    const double l2 = l * l;
    k << 12.0, 6.0 * l, -12.0, 6.0 * l,
         6.0 * l, 4.0 * l2, -6.0 * l, 2.0 * l2,
         -12.0, -6.0 * l, 12.0, -6.0 * l,
         6.0 * l, 2.0 * l2, -6.0 * l, 4.0 * l2;
    return (ei / (l2 * l)) * k;
}

Eigen::Matrix4d element_mass(double rho_a, double l)
{
    Eigen::Matrix4d m;
    const double l2 = l * l;
    m << 156.0, 22.0 * l, 54.0, -13.0 * l,
         22.0 * l, 4.0 * l2, 13.0 * l, -3.0 * l2,
         54.0, 13.0 * l, 156.0, -22.0 * l,
         -13.0 * l, -3.0 * l2, -22.0 * l, 4.0 * l2;
    return (rho_a * l / 420.0) * m;
}

std::vector<std::vector<int>> checked_grouping(const BeamConfig& config)
{
    std::vector<std::vector<int>> groups = config.grouping;
    if (groups.empty()) {
        groups.resize(config.n_cells);
        for (int c = 0; c < config.n_cells; ++c) {
            groups[c] = {c};
        }
        return groups;
    }
    std::set<int> seen;
    for (const auto& group : groups) {
        require(!group.empty(), "beam grouping: empty group");
        for (int c : group) {
            require(c >= 0 && c < config.n_cells,
                    "beam grouping: cell index out of range");
            require(seen.insert(c).second, "beam grouping: cell listed twice");
        }
    }
    require(static_cast<int>(seen.size()) == config.n_cells,
            "beam grouping: every cell must belong to a group");
    return groups;
}

} // namespace

PiezoStructureModel build_beam(const BeamConfig& config)
{
    require(config.n_cells >= 1, "beam: n_cells must be at least 1");
    require(config.elements_per_cell >= 1, "beam: elements_per_cell must be at least 1");
    require(config.length > 0.0 && config.width > 0.0 && config.thickness > 0.0,
            "beam: geometry must be strictly positive");
    require(config.density > 0.0 && config.youngs_modulus > 0.0,
            "beam: material properties must be strictly positive");
    require(config.patch_capacitance > 0.0 && config.patch_coupling > 0.0,
            "beam: patch properties must be strictly positive");
    require(config.patch_stiffness_add >= 0.0,
            "beam: patch stiffness addition cannot be negative");

    const auto groups = checked_grouping(config);

    const int n_elements = config.n_cells * config.elements_per_cell;
    const int n_nodes = n_elements + 1;
    const int n = 2 * n_nodes;
    const double l = config.length / n_elements;
    const double inertia =
        config.width * config.thickness * config.thickness * config.thickness / 12.0;
    // patches cover every cell, so the stiffness addition applies to all spans
    const double ei = config.youngs_modulus * inertia + config.patch_stiffness_add;
    const double rho_a = config.density * config.width * config.thickness;

    PiezoStructureModel model;
    model.mass = Eigen::MatrixXd::Zero(n, n);
    model.stiffness_sc = Eigen::MatrixXd::Zero(n, n);
    const Eigen::Matrix4d ke = element_stiffness(ei, l);
    const Eigen::Matrix4d me = element_mass(rho_a, l);
    for (int e = 0; e < n_elements; ++e) {
        const int base = 2 * e;
        model.stiffness_sc.block<4, 4>(base, base) += ke;
        model.mass.block<4, 4>(base, base) += me;
    }

    // one coupling column per group: the sum of the member cell columns,
    // each cell contributing +-patch_coupling on its edge rotations
    const int n_ports = static_cast<int>(groups.size());
    model.coupling = Eigen::MatrixXd::Zero(n, n_ports);
    model.capacitance_piezo = Eigen::MatrixXd::Zero(n_ports, n_ports);
    for (int g = 0; g < n_ports; ++g) {
        for (int c : groups[g]) {
            const int left_node = c * config.elements_per_cell;
            const int right_node = (c + 1) * config.elements_per_cell;
            model.coupling(2 * left_node + 1, g) -= config.patch_coupling;
            model.coupling(2 * right_node + 1, g) += config.patch_coupling;
        }
        model.capacitance_piezo(g, g) =
            config.patch_capacitance * static_cast<double>(groups[g].size());
    }

    validate(model);
    return model;
}

std::vector<std::vector<int>> contiguous_groups(int n_cells, int n_groups)
{
    require(n_groups >= 1 && n_cells >= 1, "contiguous_groups: counts must be positive");
    require(n_cells % n_groups == 0,
            "contiguous_groups: group count must divide the cell count");
    const int size = n_cells / n_groups;
    std::vector<std::vector<int>> groups(n_groups);
    for (int g = 0; g < n_groups; ++g) {
        for (int i = 0; i < size; ++i) {
            groups[g].push_back(g * size + i);
        }
    }
    return groups;
}

ElectricalNetwork build_analog_network(const AnalogCellConfig& config, int n_cells)
{
    require(n_cells >= 1, "analog network: n_cells must be at least 1");
    require(config.cp > 0.0 && config.resistance > 0.0 && config.inductance > 0.0,
            "analog network: cell values must be strictly positive");

    const int ne = 3 * n_cells + 2;
    ElectricalNetwork net;
    net.capacitance = Eigen::MatrixXd::Zero(ne, ne);
    net.conductance = Eigen::MatrixXd::Zero(ne, ne);
    net.reluctance = Eigen::MatrixXd::Zero(ne, ne);
    net.localization = Eigen::MatrixXd::Zero(ne, n_cells);

    const double a = config.ratio;
    for (int c = 0; c < n_cells; ++c) {
        // cell dofs 1..5 land on 3c .. 3c+4; dofs 4, 5 of cell c coincide
        // with dofs 1, 2 of cell c+1
        const int base = 3 * c;
        const int port = base + 2;

        net.capacitance(port, port) += 2.0 * config.cp;

        Eigen::VectorXd v1 = Eigen::VectorXd::Zero(ne);
        v1(base) = -a;
        v1(base + 1) = 1.0;
        v1(port) = -1.0;
        Eigen::VectorXd v2 = Eigen::VectorXd::Zero(ne);
        v2(port) = -1.0;
        v2(base + 3) = a;
        v2(base + 4) = 1.0;
        net.conductance += (v1 * v1.transpose() + v2 * v2.transpose()) / config.resistance;

        Eigen::VectorXd v3 = Eigen::VectorXd::Zero(ne);
        v3(base) = 1.0;
        v3(base + 3) = -1.0;
        net.reluctance += (v3 * v3.transpose()) / config.inductance;

        net.localization(port, c) = 1.0;
    }

    validate(net);
    return net;
}

} // namespace shuntnet
