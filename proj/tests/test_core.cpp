#include <doctest.h>

#include "shuntnet/bundle_io.hpp"
#include "shuntnet/errors.hpp"
#include "shuntnet/model.hpp"
#include "shuntnet/numeric.hpp"

#include "oracles.hpp"

#include <filesystem>
#include <fstream>
#include <random>

using namespace shuntnet;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag)
{
    static std::mt19937_64 rng(std::random_device{}());
    const fs::path dir = fs::temp_directory_path()
                         / ("shuntnet_" + tag + "_" + std::to_string(rng()));
    fs::create_directories(dir);
    return dir;
}

PiezoStructureModel tiny_model()
{
    PiezoStructureModel m;
    m.mass = Eigen::Matrix2d{{2.0, 0.0}, {0.0, 1.0}};
    m.stiffness_sc = Eigen::Matrix2d{{3.0, -1.0}, {-1.0, 1.0}};
    m.coupling = Eigen::Vector2d{0.1, -0.2};
    m.capacitance_piezo = Eigen::MatrixXd::Constant(1, 1, 2e-8);
    return m;
}

} // namespace

TEST_CASE("asymmetry measures the relative skew part")
{
    Eigen::MatrixXd a(2, 2);
    a << 1.0, 2.0, 2.0, 5.0;
    CHECK(asymmetry(a) == 0.0);
    a(1, 0) = 2.0 + 5e-3;
    CHECK(asymmetry(a) == doctest::Approx(5e-3 / 5.0).epsilon(1e-12));
    CHECK(nearly_symmetric(a, 2e-3));
    CHECK(!nearly_symmetric(a, 2e-4));
}

TEST_CASE("symmetric eigenvalue helpers agree with power iteration")
{
    std::mt19937_64 rng(101);
    const Eigen::MatrixXd a = oracle::random_spd(rng, 7, 0.5, 50.0)
                              - 3.0 * Eigen::MatrixXd::Identity(7, 7);
    const double max_ref = oracle::power_max_eigenvalue(a);
    const double min_ref = -oracle::power_max_eigenvalue(-a);
    CHECK(sym_spectral_norm(a)
          == doctest::Approx(std::max(std::abs(max_ref), std::abs(min_ref)))
                 .epsilon(1e-9));
    CHECK(sym_min_eigenvalue(a) == doctest::Approx(min_ref).epsilon(1e-9));
    CHECK(!sym_positive_semidefinite(a, 1e-10));
    CHECK(sym_positive_semidefinite(a + 3.1 * Eigen::MatrixXd::Identity(7, 7), 1e-10));
}

TEST_CASE("spd square roots invert each other")
{
    std::mt19937_64 rng(102);
    const Eigen::MatrixXd a = oracle::random_spd(rng, 5, 1e-3, 1e3);
    const Eigen::MatrixXd r = spd_sqrt(a);
    const Eigen::MatrixXd ri = spd_inv_sqrt(a);
    CHECK((r * r - a).norm() <= 1e-10 * a.norm());
    CHECK((r * ri - Eigen::MatrixXd::Identity(5, 5)).norm() <= 1e-10);

    Eigen::MatrixXd indefinite = a;
    indefinite -= 2.0 * sym_spectral_norm(a) * Eigen::MatrixXd::Identity(5, 5);
    CHECK_THROWS_AS((void)spd_sqrt(indefinite), NumericsError);
}

TEST_CASE("condition number from singular values")
{
    Eigen::MatrixXd d = Eigen::Vector3d(4.0, 2.0, 0.5).asDiagonal();
    CHECK(condition_number(d) == doctest::Approx(8.0).epsilon(1e-12));
    d(2, 2) = 0.0;
    CHECK(std::isinf(condition_number(d)));
}

TEST_CASE("model validation accepts consistent data and names the offender")
{
    PiezoStructureModel m = tiny_model();
    CHECK_NOTHROW(validate(m));

    SUBCASE("mass must be positive definite")
    {
        m.mass(1, 1) = -1.0;
        CHECK_THROWS_AS(validate(m), ModelError);
    }
    SUBCASE("coupling rows must match the mechanical dimension")
    {
        m.coupling = Eigen::Vector3d::Ones();
        CHECK_THROWS_AS(validate(m), ModelError);
    }
    SUBCASE("capacitance must be symmetric")
    {
        m.capacitance_piezo = Eigen::MatrixXd::Zero(2, 2);
        m.capacitance_piezo << 1e-8, 1e-9, -1e-9, 1e-8;
        m.coupling = Eigen::MatrixXd::Ones(2, 2);
        CHECK_THROWS_AS(validate(m), ModelError);
    }
}

TEST_CASE("network validation checks the localization selector")
{
    ElectricalNetwork net;
    net.capacitance = Eigen::Matrix2d::Identity();
    net.conductance = Eigen::Matrix2d::Zero();
    net.reluctance = Eigen::Matrix2d::Identity();
    net.localization = Eigen::MatrixXd::Identity(2, 1);
    CHECK_NOTHROW(validate(net));

    SUBCASE("entries other than 0/1 are rejected")
    {
        net.localization(0, 0) = 0.5;
        CHECK_THROWS_AS(validate(net), ModelError);
    }
    SUBCASE("a port must map to exactly one dof")
    {
        net.localization(1, 0) = 1.0;
        CHECK_THROWS_AS(validate(net), ModelError);
    }
    SUBCASE("indefinite reluctance is rejected")
    {
        net.reluctance(0, 0) = -1.0;
        CHECK_THROWS_AS(validate(net), ModelError);
    }
}

TEST_CASE("matrix market round trip is bit exact")
{
    std::mt19937_64 rng(103);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd a(4, 3);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 3; ++j) {
            a(i, j) = gauss(rng) * std::pow(10.0, int(rng() % 40) - 20);
        }
    }
    a(0, 0) = 0.0;
    a(1, 2) = -0.0;
    const fs::path dir = temp_dir("mtx");
    write_matrix_market(a, dir / "a.mtx");
    const Eigen::MatrixXd b = read_matrix_market(dir / "a.mtx");
    REQUIRE(b.rows() == a.rows());
    REQUIRE(b.cols() == a.cols());
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK(b(i, j) == a(i, j));
        }
    }
    fs::remove_all(dir);
}

TEST_CASE("matrix market reader rejects malformed input")
{
    const fs::path dir = temp_dir("badmtx");
    {
        std::ofstream out(dir / "banner.mtx");
        out << "%%MatrixMarket matrix coordinate real general\n2 2 3\n";
    }
    CHECK_THROWS_AS((void)read_matrix_market(dir / "banner.mtx"), ParseError);
    {
        std::ofstream out(dir / "short.mtx");
        out << "%%MatrixMarket matrix array real general\n2 2\n1.0\n2.0\n3.0\n";
    }
    CHECK_THROWS_AS((void)read_matrix_market(dir / "short.mtx"), ParseError);
    CHECK_THROWS_AS((void)read_matrix_market(dir / "absent.mtx"), IoError);
    fs::remove_all(dir);
}

TEST_CASE("model bundles survive an export import cycle unchanged")
{
    const PiezoStructureModel m = tiny_model();
    const fs::path dir = temp_dir("bundle");
    export_model(m, dir / "model");
    const PiezoStructureModel back = import_model(dir / "model");
    CHECK(back.mass == m.mass);
    CHECK(back.stiffness_sc == m.stiffness_sc);
    CHECK(back.coupling == m.coupling);
    CHECK(back.capacitance_piezo == m.capacitance_piezo);

    ElectricalNetwork net;
    net.capacitance = Eigen::Matrix2d{{3e-8, -1e-8}, {-1e-8, 3e-8}};
    net.conductance = Eigen::Matrix2d{{1e-5, 0.0}, {0.0, 2e-5}};
    net.reluctance = Eigen::Matrix2d{{4.0, 1.0}, {1.0, 4.0}};
    net.localization = Eigen::MatrixXd::Identity(2, 1);
    export_network(net, dir / "net");
    const ElectricalNetwork nb = import_network(dir / "net");
    CHECK(nb.capacitance == net.capacitance);
    CHECK(nb.conductance == net.conductance);
    CHECK(nb.reluctance == net.reluctance);
    CHECK(nb.localization == net.localization);
    fs::remove_all(dir);
}

TEST_CASE("imported bundles are validated")
{
    PiezoStructureModel m = tiny_model();
    const fs::path dir = temp_dir("badbundle");
    export_model(m, dir / "model");
    // corrupt the mass matrix on disk into an indefinite one
    write_matrix_market(Eigen::Matrix2d{{1.0, 0.0}, {0.0, -1.0}},
                        dir / "model" / "mass.mtx");
    CHECK_THROWS_AS((void)import_model(dir / "model"), ModelError);
    CHECK_THROWS_AS((void)import_model(dir / "missing"), IoError);
    fs::remove_all(dir);
}
