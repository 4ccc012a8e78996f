#pragma once

#include <Eigen/Dense>

namespace pwg {

/// Correlation matrix with its eigen square root rho = Q Lambda,
/// Q^T Sigma Q = Lambda^2. rho_inv exists only when the smallest Lambda entry
/// clears the singularity tolerance; the path-weighting kernels require it.
class CorrelationModel {
public:
    /// Smallest Lambda diagonal below this means no rho_inv.
    static constexpr double kSingularTol = 1e-10;

    /// Factor a symmetric, unit-diagonal correlation matrix.
    /// Eigenvalues in [-1e-8, 0) are clamped to zero; anything more negative
    /// throws NotACorrelation.
    static CorrelationModel factor(const Eigen::MatrixXd& sigma);

    const Eigen::MatrixXd& sigma() const { return sigma_; }
    const Eigen::MatrixXd& q() const { return q_; }
    const Eigen::VectorXd& lambda() const { return lambda_; }
    const Eigen::MatrixXd& rho() const { return rho_; }

    bool has_rho_inv() const { return has_rho_inv_; }
    /// Throws SingularCorrelation when absent.
    const Eigen::MatrixXd& rho_inv() const;

    double min_lambda() const { return lambda_.minCoeff(); }
    Eigen::Index dim() const { return sigma_.rows(); }

private:
    CorrelationModel() = default;

    Eigen::MatrixXd sigma_, q_, rho_, rho_inv_;
    Eigen::VectorXd lambda_;
    bool has_rho_inv_ = false;
};

/// Covariance inflation parameters: eps1 bumps the first-step volatility,
/// eps2 blends the first-step correlation toward the identity.
struct InflationParams {
    double eps1 = 0.0;
    double eps2 = 0.0;
};

/// Sigma_eps2 = eps2 * I + (1 - eps2) * Sigma, eps2 in [0, 1].
Eigen::MatrixXd inflate(const Eigen::MatrixXd& sigma, double eps2);

/// eps2 = 0.5 * exp(-10 * min_k |Lambda_kk|).
double eps2_rule(const Eigen::MatrixXd& sigma);
double eps2_rule(const CorrelationModel& model);

/// n x n matrix with `value` everywhere off the unit diagonal.
Eigen::MatrixXd equicorrelation(Eigen::Index n, double value);

} // namespace pwg
