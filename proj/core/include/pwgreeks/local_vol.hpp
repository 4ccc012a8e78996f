#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace pwg {

/// Volatility value with its first and second spot derivatives.
struct VolQuote {
    double sigma = 0.0;
    double d_sigma = 0.0;
    double d2_sigma = 0.0;
};

/// Per-tenor (atm, skew, kurt) local volatility surface:
///
///   sigma(t, s) = atm_b + skew_b * m + kurt_b * m^2,  m = ln(s / s_ref),
///
/// with b the tenor bucket containing t (tenor values act as right edges,
/// the last bucket extends to infinity) and the result clamped to
/// [floor, cap]. While the clamp is active the reported derivatives are 0,
/// the clamped function's true derivatives.
class LocalVolSurface {
public:
    LocalVolSurface(std::vector<double> tenors, std::vector<double> atm,
                    std::vector<double> skew, std::vector<double> kurt,
                    double s_ref = 1.0, double floor = 1e-4, double cap = 5.0);

    /// Single-bucket surface with skew = kurt = 0.
    static LocalVolSurface flat(double vol, double s_ref = 1.0);

    /// sigma(t, s) and spot derivatives. Throws InvalidInput for s <= 0.
    VolQuote vol(double t, double s) const;

    std::size_t bucket(double t) const;

    double s_ref() const { return s_ref_; }
    double floor() const { return floor_; }
    double cap() const { return cap_; }
    const std::vector<double>& tenors() const { return tenors_; }

private:
    std::vector<double> tenors_, atm_, skew_, kurt_;
    double s_ref_, floor_, cap_;
};

/// First-step coefficient vectors of the correlated-diagonal local-vol scheme,
/// built from sigma_0 and its spot derivatives per asset:
///
///   c1 = sigma_0' / sigma_0
///   c2 = 1 / (s sigma_0) - dt1 * sigma_0'
///   ds_c1 = sigma_0'' / sigma_0 - c1^2
///   ds_c2 = -(1 + s c1) / (s^2 sigma_0) - dt1 * sigma_0''
struct CFunctions {
    Eigen::VectorXd c1, c2, ds_c1, ds_c2;
};

/// Quotes evaluated at t = 0 on the given spots, one surface per asset.
std::vector<VolQuote> first_step_quotes(const std::vector<LocalVolSurface>& surfaces,
                                        const Eigen::VectorXd& s);

CFunctions c_functions(const std::vector<VolQuote>& quotes, const Eigen::VectorXd& s, double dt1);
CFunctions c_functions(const std::vector<LocalVolSurface>& surfaces, const Eigen::VectorXd& s,
                       double dt1);

} // namespace pwg
