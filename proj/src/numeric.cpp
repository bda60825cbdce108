#include "shuntnet/numeric.hpp"

#include "shuntnet/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace shuntnet {

double asymmetry(const Eigen::MatrixXd& a)
{
    if (a.size() == 0) {
        return 0.0;
    }
    const double scale = a.cwiseAbs().maxCoeff();
    if (scale == 0.0) {
        return 0.0;
    }
    return (a - a.transpose()).cwiseAbs().maxCoeff() / scale;
}

bool nearly_symmetric(const Eigen::MatrixXd& a, double rel_tol)
{
    return asymmetry(a) <= rel_tol;
}

namespace {

Eigen::VectorXd sym_eigenvalues(const Eigen::MatrixXd& a)
{
    const Eigen::MatrixXd s = 0.5 * (a + a.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericsError("symmetric eigensolve failed");
    }
    return solver.eigenvalues();
}

} // namespace

double sym_min_eigenvalue(const Eigen::MatrixXd& a)
{
    return sym_eigenvalues(a).minCoeff();
}

double sym_spectral_norm(const Eigen::MatrixXd& a)
{
    return sym_eigenvalues(a).cwiseAbs().maxCoeff();
}

bool sym_positive_semidefinite(const Eigen::MatrixXd& a, double rel_tol)
{
    const Eigen::VectorXd ev = sym_eigenvalues(a);
    const double scale = ev.cwiseAbs().maxCoeff();
    return ev.minCoeff() >= -rel_tol * scale;
}

void symmetrize(Eigen::MatrixXd& a)
{
    a = 0.5 * (a + a.transpose()).eval();
}

namespace {

Eigen::MatrixXd spd_power(const Eigen::MatrixXd& a, double exponent)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (a + a.transpose()));
    if (solver.info() != Eigen::Success) {
        throw NumericsError("symmetric eigensolve failed");
    }
    const Eigen::VectorXd ev = solver.eigenvalues();
    if (ev.minCoeff() <= 0.0) {
        throw NumericsError("matrix power of a non positive definite matrix");
    }
    const Eigen::VectorXd powered = ev.array().pow(exponent).matrix();
    return solver.eigenvectors() * powered.asDiagonal() * solver.eigenvectors().transpose();
}

} // namespace

Eigen::MatrixXd spd_sqrt(const Eigen::MatrixXd& a)
{
    return spd_power(a, 0.5);
}

Eigen::MatrixXd spd_inv_sqrt(const Eigen::MatrixXd& a)
{
    return spd_power(a, -0.5);
}

double condition_number(const Eigen::MatrixXd& a)
{
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const Eigen::VectorXd sv = svd.singularValues();
    const double smallest = sv(sv.size() - 1);
    if (smallest == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return sv(0) / smallest;
}

} // namespace shuntnet
