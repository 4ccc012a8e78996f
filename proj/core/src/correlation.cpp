#include "pwgreeks/correlation.hpp"

#include "pwgreeks/errors.hpp"

#include <cmath>

namespace pwg {

namespace {
constexpr double kSymTol = 1e-12;
constexpr double kEigClampTol = 1e-8;
}

CorrelationModel CorrelationModel::factor(const Eigen::MatrixXd& sigma) {
    const Eigen::Index n = sigma.rows();
    if (n == 0 || sigma.cols() != n) {
        throw InvalidInput("correlation: matrix must be square and nonempty");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::fabs(sigma(i, i) - 1.0) > kSymTol) {
            throw InvalidInput("correlation: diagonal entries must be 1");
        }
        for (Eigen::Index j = 0; j < i; ++j) {
            if (std::fabs(sigma(i, j) - sigma(j, i)) > kSymTol) {
                throw InvalidInput("correlation: matrix must be symmetric");
            }
            if (std::fabs(sigma(i, j)) > 1.0 + kSymTol) {
                throw InvalidInput("correlation: entries must lie in [-1, 1]");
            }
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sigma);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("correlation: eigen decomposition failed");
    }

    CorrelationModel model;
    model.sigma_ = sigma;
    model.q_ = solver.eigenvectors();
    Eigen::VectorXd evals = solver.eigenvalues();
    for (Eigen::Index k = 0; k < n; ++k) {
        if (evals[k] < -kEigClampTol) {
            throw NotACorrelation("correlation: eigenvalue below -1e-8, not PSD");
        }
        evals[k] = std::max(evals[k], 0.0);
    }
    model.lambda_ = evals.cwiseSqrt();
    model.rho_ = model.q_ * model.lambda_.asDiagonal();

    model.has_rho_inv_ = model.lambda_.minCoeff() > kSingularTol;
    if (model.has_rho_inv_) {
        // rho = Q Lambda with Q orthogonal, so rho^{-1} = Lambda^{-1} Q^T.
        model.rho_inv_ = model.lambda_.cwiseInverse().asDiagonal() * model.q_.transpose();
    }
    return model;
}

const Eigen::MatrixXd& CorrelationModel::rho_inv() const {
    if (!has_rho_inv_) {
        throw SingularCorrelation(
            "correlation: rho is singular (min Lambda <= 1e-10); apply covariance inflation");
    }
    return rho_inv_;
}

Eigen::MatrixXd inflate(const Eigen::MatrixXd& sigma, double eps2) {
    if (!(eps2 >= 0.0 && eps2 <= 1.0)) {
        throw InvalidInput("inflate: eps2 must lie in [0, 1]");
    }
    const Eigen::Index n = sigma.rows();
    return eps2 * Eigen::MatrixXd::Identity(n, n) + (1.0 - eps2) * sigma;
}

double eps2_rule(const CorrelationModel& model) {
    const double lambda_bar = model.lambda().cwiseAbs().minCoeff();
    return 0.5 * std::exp(-10.0 * lambda_bar);
}

double eps2_rule(const Eigen::MatrixXd& sigma) {
    return eps2_rule(CorrelationModel::factor(sigma));
}

Eigen::MatrixXd equicorrelation(Eigen::Index n, double value) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Constant(n, n, value);
    m.diagonal().setOnes();
    return m;
}

} // namespace pwg
