#pragma once

#include "shuntnet/model.hpp"

#include <filesystem>

namespace shuntnet {

// On-disk exchange format. A bundle is a directory holding a `manifest.txt`
// with `key = value` lines plus one Matrix Market array file per matrix:
//
//   manifest.txt      kind = piezo_structure | electrical_network
//                     <role> = <filename>    for every matrix role
//   *.mtx             dense column-major real arrays
//
// Matrices are written with 17 significant digits so that export followed by
// import reproduces every double bit for bit. Zero matrices are written
// explicitly, never omitted.

/// Reads a dense real Matrix Market array file. Throws ParseError on syntax
/// problems and IoError when the file cannot be opened.
Eigen::MatrixXd read_matrix_market(const std::filesystem::path& file);

/// Writes `a` as a dense real Matrix Market array file.
void write_matrix_market(const Eigen::MatrixXd& a, const std::filesystem::path& file);

enum class BundleFormat { Directory };

PiezoStructureModel import_model(const std::filesystem::path& dir,
                                 BundleFormat format = BundleFormat::Directory);
void export_model(const PiezoStructureModel& model, const std::filesystem::path& dir);

ElectricalNetwork import_network(const std::filesystem::path& dir,
                                 BundleFormat format = BundleFormat::Directory);
void export_network(const ElectricalNetwork& network, const std::filesystem::path& dir);

} // namespace shuntnet
