#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "pwgreeks/dynamics.hpp"
#include "pwgreeks/local_vol.hpp"

namespace pwg {

/// Arguments of the weight kernels. z and x are independent: the adjusted
/// estimators evaluate the kernels at (z, sqrt(dt1) * Z_hat_1) and
/// (z, sqrt(dt1) * Z_bar_1), never re-deriving x from z.
struct WeightInputs {
    Eigen::VectorXd s;   // spot vector the sensitivity is taken at
    Eigen::VectorXd z;   // first-step normal vector Z_1
    Eigen::VectorXd x;   // first-step scaled noise variant
    double dt1 = 0.0;
};

struct DeltaWeights {
    Eigen::VectorXd theta0, theta1;
};

struct GammaWeights {
    Eigen::MatrixXd lambda0, lambda1, lambda2;
};

struct WeightSet {
    Eigen::VectorXd theta0, theta1;
    Eigen::MatrixXd lambda0, lambda1, lambda2;
};

/// R(s, w) of the correlated-diagonal local-vol scheme and its derivative
/// bundles, componentwise:
///   R      = c2 + w .* c1
///   dw_r   = c1
///   ds_r   = ds_c2 + w .* ds_c1
///   dww_r  = 0
///   dsw_r  = ds_c1
struct RBundle {
    Eigen::VectorXd r, dw_r, ds_r, dww_r, dsw_r;
};

RBundle r_bundle(const CFunctions& c, const Eigen::VectorXd& w);
RBundle r_bundle(const std::vector<LocalVolSurface>& surfaces, const Eigen::VectorXd& s,
                 double dt1, const Eigen::VectorXd& w);

/// Everything the per-path kernel evaluation needs that does not change
/// across paths: the c-functions at the spot, the first-step mixing matrix
/// and its inverse, and the Gram matrix (rho^{-1})^T rho^{-1}.
struct WeightContext {
    CFunctions c;
    Eigen::MatrixXd rho, rho_inv, gram;
    double dt1 = 0.0;
};

/// Context for the base dynamics, or for the covariance-inflated first step
/// when `eps` is given (frozen vol + eps1, correlation of Sigma_eps2).
/// Throws SingularCorrelation when the required rho^{-1} does not exist.
WeightContext make_weight_context(const ModelSpec& spec,
                                  const std::optional<InflationParams>& eps = std::nullopt);
WeightContext make_weight_context(const std::vector<VolQuote>& quotes, const Eigen::VectorXd& s,
                                  double dt1, const CorrelationModel& corr);

/// Correlated-diagonal kernels, evaluated at w = rho x:
///   Theta^(0) = -dw_r
///   Theta^(1) = (z^T rho^{-1}) .* R
DeltaWeights delta_weights(const WeightContext& ctx, const Eigen::VectorXd& z,
                           const Eigen::VectorXd& x);

/// Lambda^(0) = dw_r dw_r^T + diag(dww_r .* R) - diag(dsw_r)
/// Lambda^(1) = diag(u .* ds_r) - diag(u .* dw_r .* R)
///              - [diag(R) u dw_r^T + dw_r (diag(R) u)^T],  u = (z^T rho^{-1})^T
/// Lambda^(2) = diag(R) (u u^T - gram) diag(R)
GammaWeights gamma_weights(const WeightContext& ctx, const Eigen::VectorXd& z,
                           const Eigen::VectorXd& x);

WeightSet diagonal_weights(const WeightContext& ctx, const Eigen::VectorXd& z,
                           const Eigen::VectorXd& x);

/// Spec-level entry points: build the context from the model at inputs.s.
DeltaWeights delta_weights(const ModelSpec& spec, const WeightInputs& in);
GammaWeights gamma_weights(const ModelSpec& spec, const WeightInputs& in);

/// J = (dx H_0)^{-1} (ds H_0) and its derivative blocks, supplied by a
/// callback. Index conventions:
///   j(p, l)        = J_{pl}
///   dx[r](p, l)    = d J_{pl} / d x_r
///   ds[m](p, l)    = d J_{pl} / d s_m
///   div_dx(r, l)   = sum_p d^2 J_{pl} / (d x_r d x_p)
///   div_ds(m, l)   = sum_p d^2 J_{pl} / (d s_m d x_p)
struct JBundle {
    Eigen::MatrixXd j;
    std::vector<Eigen::MatrixXd> dx, ds;
    Eigen::MatrixXd div_dx, div_ds;
};

using JCallback = std::function<JBundle(const Eigen::VectorXd& s, const Eigen::VectorXd& x)>;

/// General matrix-form kernels built verbatim from the J blocks:
///   Theta^(0)  = -div_x(J)
///   Theta^(1)  = z^T J
///   Lambda^(0) = div^T div + dx(div) J - ds(div)
///   Lambda^(1) = ds(z^T J) - dx(z^T J) J - (z^T J)^T div - div^T (z^T J)
///   Lambda^(2) = (z^T J)^T (z^T J) - J^T J
/// Matrices are returned raw (not symmetrized).
WeightSet generic_weights(const JCallback& j_callback, const WeightInputs& in);

/// J bundle of the correlated-diagonal dynamics, J(s, x) = rho^{-1} diag(R(s, rho x)).
JBundle correlated_diagonal_jbundle(const CFunctions& c, const Eigen::MatrixXd& rho,
                                    const Eigen::MatrixXd& rho_inv, const Eigen::VectorXd& x);

/// max_{lm} |A - A^T| / max(1, max |A|).
double max_relative_asymmetry(const Eigen::MatrixXd& a);

/// Assert relative asymmetry <= tol (throws NumericalError otherwise) and
/// replace A by (A + A^T) / 2.
void symmetrize_checked(Eigen::MatrixXd& a, double tol = 1e-10);

} // namespace pwg
