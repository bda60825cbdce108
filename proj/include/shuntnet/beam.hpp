#pragma once

#include "shuntnet/model.hpp"

namespace shuntnet {

/// Free free Euler Bernoulli beam carrying a uniform array of piezoelectric
/// patch pairs, discretized with Hermite cubic elements (two dofs per node,
/// deflection w and rotation w'). The beam span is divided into `n_cells`
/// equal cells, each covered by one symmetric patch pair, and each cell is
/// meshed with `elements_per_cell` elements. Total dof count is
/// 2 * (n_cells * elements_per_cell + 1).
///
/// A patch pair responds to the relative rotation across its span, so the
/// coupling column of cell c holds +patch_coupling at the rotation dof of
/// the cell's right edge and -patch_coupling at its left edge. Wiring cells
/// together in parallel sums their columns (interior entries cancel in a
/// contiguous group) and adds their blocked capacitances.
struct BeamConfig {
    int n_cells = 20;
    int elements_per_cell = 10;
    double length = 0.45;           ///< m
    double width = 0.02;            ///< m
    double thickness = 0.002;       ///< m
    double density = 7850.0;        ///< kg/m^3
    double youngs_modulus = 210e9;  ///< Pa
    /// Blocked capacitance per patch pair (one port per group), farad.
    double patch_capacitance = 21.96e-9;
    /// Charge per unit relative rotation across one cell, C/rad.
    double patch_coupling = 1.66e-4;
    /// Extra bending stiffness of the bonded patches, added to EI on every
    /// cell span, N m^2.
    double patch_stiffness_add = 0.0;
    /// Partition of the cell indices 0 .. n_cells-1 into electrically
    /// parallel groups, one port per group. Empty means every cell is its
    /// own port.
    std::vector<std::vector<int>> grouping;
};

/// Assembles mass, short circuit stiffness, coupling and capacitance for
/// the configured beam. Throws ModelError on non positive dimensions or a
/// grouping that is not a partition of the cells.
PiezoStructureModel build_beam(const BeamConfig& config);

/// Splits the cells into `n_groups` contiguous runs of equal size (n_cells
/// must be divisible by n_groups). Convenience for the common grouped
/// layouts.
std::vector<std::vector<int>> contiguous_groups(int n_cells, int n_groups);

/// One cell of the passive analog ladder that mimics a beam cell. Local
/// dofs are (1, 2) flux pair at the left boundary, 3 the transducer port,
/// (4, 5) flux pair at the right boundary. The per cell matrices are
///
///   C_c = e3 * 2 cp * e3^T
///   G_c = (1/R) [ (-a, 1, -1, 0, 0) dyad + (0, 0, -1, a, 1) dyad ]
///   B_c = (1/L) (1, 0, 0, -1, 0) dyad
///
/// Chained cells share their boundary pair: dofs 4, 5 of cell i coincide
/// with dofs 1, 2 of cell i+1, so n cells assemble to 3n + 2 dofs with one
/// port per cell.
struct AnalogCellConfig {
    double cp = 21.96e-9;     ///< farad, patch capacitance entering the cell
    double resistance = 57.5; ///< ohm
    double inductance = 0.1611; ///< henry
    double ratio = 1.0;       ///< transformer ratio a
};

/// Assembles the ladder network for `n_cells` cells. Throws ModelError on
/// non positive cell values or n_cells < 1.
ElectricalNetwork build_analog_network(const AnalogCellConfig& config, int n_cells);

} // namespace shuntnet
