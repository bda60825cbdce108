#include <doctest.h>

#include "shuntnet/errors.hpp"
#include "shuntnet/modal.hpp"
#include "shuntnet/synthesis.hpp"

#include "oracles.hpp"

#include <random>

using namespace shuntnet;

TEST_CASE("solve_modes reproduces a hand solvable two dof system")
{
    // unit masses, springs 1-1-1 chain fixed at both ends: eigenpairs
    // (1, [1 1]/sqrt 2) and (3, [1 -1]/sqrt 2)
    const Eigen::Matrix2d mass = Eigen::Matrix2d::Identity();
    const Eigen::Matrix2d k{{2.0, -1.0}, {-1.0, 2.0}};
    const ModalBasis basis = solve_modes(k, mass, Normalization::Mass);
    REQUIRE(basis.n_modes() == 2);
    CHECK(basis.omega_sq(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(basis.omega_sq(1) == doctest::Approx(3.0).epsilon(1e-12));
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(basis.shapes(0, 0) == doctest::Approx(r).epsilon(1e-12));
    CHECK(basis.shapes(1, 0) == doctest::Approx(r).epsilon(1e-12));
    // sign fixed so the largest entry is positive
    CHECK(basis.shapes.col(1).cwiseAbs().maxCoeff()
          == doctest::Approx(basis.shapes.col(1).maxCoeff()).epsilon(1e-12));
}

TEST_CASE("solve_modes returns metric orthonormal ascending shapes")
{
    std::mt19937_64 rng(201);
    const Eigen::MatrixXd metric = oracle::random_spd(rng, 9, 0.5, 5.0);
    const Eigen::MatrixXd k = oracle::random_spd(rng, 9, 1.0, 1e4);
    const ModalBasis basis = solve_modes(k, metric, Normalization::Mass);
    const Eigen::MatrixXd gram =
        basis.shapes.transpose() * metric * basis.shapes;
    CHECK((gram - Eigen::MatrixXd::Identity(9, 9)).cwiseAbs().maxCoeff() < 1e-10);
    for (int i = 1; i < 9; ++i) {
        CHECK(basis.omega_sq(i) >= basis.omega_sq(i - 1));
    }
    CHECK_THROWS_AS(
        (void)solve_modes(k, Eigen::MatrixXd::Zero(9, 9), Normalization::Mass),
        ModelError);
}

TEST_CASE("rigid detection on an unconstrained chain")
{
    const Eigen::Matrix2d k{{1.0, -1.0}, {-1.0, 1.0}};
    const ModalBasis basis =
        solve_modes(k, Eigen::Matrix2d::Identity(), Normalization::Mass);
    CHECK(is_rigid_mode(basis, 0));
    CHECK(!is_rigid_mode(basis, 1));
    CHECK(flexible_mode_indices(basis) == std::vector<int>{1});
}

TEST_CASE("auto MAC is one on a diagonal and zero for orthogonal columns")
{
    Eigen::MatrixXd shapes(3, 2);
    shapes << 1.0, 0.0, 0.0, 2.0, 0.0, 0.0;
    const Eigen::MatrixXd mac = auto_mac(shapes);
    CHECK(mac(0, 0) == doctest::Approx(1.0));
    CHECK(mac(1, 1) == doctest::Approx(1.0));
    CHECK(mac(0, 1) == doctest::Approx(0.0));

    shapes.col(1) = -3.0 * shapes.col(0);
    CHECK(auto_mac(shapes)(0, 1) == doctest::Approx(1.0));

    shapes.col(1).setZero();
    CHECK_THROWS_AS((void)auto_mac(shapes), ModelError);
}

TEST_CASE("coupling table matches the single mode closed form")
{
    // single mass on a spring with one transducer: gamma is just the
    // coupling constant times the mass normalized shape
    PiezoStructureModel m;
    m.mass = Eigen::MatrixXd::Constant(1, 1, 2.0);
    m.stiffness_sc = Eigen::MatrixXd::Constant(1, 1, 8.0);
    m.coupling = Eigen::MatrixXd::Constant(1, 1, 0.3);
    m.capacitance_piezo = Eigen::MatrixXd::Constant(1, 1, 1e-2);

    const ModalBasis mech =
        solve_modes(m.stiffness_sc, m.mass, Normalization::Mass);

    ElectricalNetwork net;
    net.capacitance = Eigen::MatrixXd::Constant(1, 1, 2e-2);
    net.conductance = Eigen::MatrixXd::Zero(1, 1);
    net.reluctance = Eigen::MatrixXd::Constant(1, 1, 5.0);
    net.localization = Eigen::MatrixXd::Identity(1, 1);
    const ModalBasis elec =
        solve_modes(net.reluctance, net.capacitance, Normalization::Capacitance);

    const CouplingTable table = coupling_coefficients(m, mech, net, elec, {0});
    // phi = 1/sqrt(2), psi = 1/sqrt(2e-2), w_sc = 2
    const double gamma_ref = 0.3 / std::sqrt(2.0) / std::sqrt(2e-2);
    CHECK(table.gamma(0, 0) == doctest::Approx(gamma_ref).epsilon(1e-12));
    CHECK(table.eemcf(0, 0) == doctest::Approx(gamma_ref / 2.0).epsilon(1e-12));

    CHECK_THROWS_AS(
        (void)coupling_coefficients(m, mech, net, elec, {1}), ModelError);
}

TEST_CASE("orthogonality report vanishes for a modal built network")
{
    std::mt19937_64 rng(202);
    const oracle::RandomStructure s = oracle::random_structure(rng, 6, 2, false);
    PiezoStructureModel m{s.mass, s.stiffness, s.coupling, s.cap_piezo};
    const ModalBasis mech = solve_modes(m.stiffness_sc, m.mass, Normalization::Mass);
    SynthesisConfig cfg;
    cfg.targeted_modes = {1, 3};
    const SynthesisResult r = synthesize(m, mech, cfg);
    const ModalBasis elec = solve_modes(r.network.reluctance, r.network.capacitance,
                                        Normalization::Capacitance);
    const OrthogonalityReport rep = orthogonality_report(r.network, elec);
    CHECK(rep.capacitance_residual < 1e-12);
    CHECK(rep.conductance_residual < 1e-10);
    CHECK(rep.reluctance_residual < 1e-12);
}

TEST_CASE("open circuit shift reproduces the scalar coupling figure")
{
    // one dof: K_c^2 = g^2 / (cp k); the short/open shift method must land
    // exactly on it
    PiezoStructureModel m;
    m.mass = Eigen::MatrixXd::Constant(1, 1, 1.0);
    m.stiffness_sc = Eigen::MatrixXd::Constant(1, 1, 100.0);
    m.coupling = Eigen::MatrixXd::Constant(1, 1, 0.5);
    m.capacitance_piezo = Eigen::MatrixXd::Constant(1, 1, 1e-2);
    const CircuitShiftTable table = circuit_shift_eemcf(m);
    REQUIRE(table.eemcf.size() == 1);
    const double kc = std::sqrt(0.5 * 0.5 / (1e-2 * 100.0));
    CHECK(table.eemcf(0) == doctest::Approx(kc).epsilon(1e-12));
    CHECK(!table.rigid[0]);
    CHECK(table.omega_sc_sq(0) == doctest::Approx(100.0).epsilon(1e-12));
}
