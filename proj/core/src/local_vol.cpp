#include "pwgreeks/local_vol.hpp"

#include "pwgreeks/errors.hpp"

#include <algorithm>
#include <cmath>

namespace pwg {

LocalVolSurface::LocalVolSurface(std::vector<double> tenors, std::vector<double> atm,
                                 std::vector<double> skew, std::vector<double> kurt,
                                 double s_ref, double floor, double cap)
    : tenors_(std::move(tenors)), atm_(std::move(atm)), skew_(std::move(skew)),
      kurt_(std::move(kurt)), s_ref_(s_ref), floor_(floor), cap_(cap) {
    const std::size_t k = tenors_.size();
    if (k == 0 || atm_.size() != k || skew_.size() != k || kurt_.size() != k) {
        throw InvalidInput("local_vol: tenors/atm/skew/kurt must be nonempty and equal length");
    }
    if (!std::is_sorted(tenors_.begin(), tenors_.end())) {
        throw InvalidInput("local_vol: tenors must be ascending");
    }
    if (!(s_ref_ > 0.0)) {
        throw InvalidInput("local_vol: s_ref must be positive");
    }
    if (!(floor_ > 0.0) || !(cap_ > floor_)) {
        throw InvalidInput("local_vol: need 0 < floor < cap");
    }
}

LocalVolSurface LocalVolSurface::flat(double vol, double s_ref) {
    return LocalVolSurface({1.0}, {vol}, {0.0}, {0.0}, s_ref);
}

std::size_t LocalVolSurface::bucket(double t) const {
    const auto it = std::upper_bound(tenors_.begin(), tenors_.end(), t);
    const auto idx = static_cast<std::size_t>(it - tenors_.begin());
    return std::min(idx, tenors_.size() - 1);
}

VolQuote LocalVolSurface::vol(double t, double s) const {
    if (!(s > 0.0)) {
        throw InvalidInput("local_vol: spot must be positive");
    }
    const std::size_t b = bucket(t);
    const double m = std::log(s / s_ref_);
    const double raw = atm_[b] + skew_[b] * m + kurt_[b] * m * m;
    if (raw <= floor_) return {floor_, 0.0, 0.0};
    if (raw >= cap_) return {cap_, 0.0, 0.0};
    const double dm = skew_[b] + 2.0 * kurt_[b] * m;
    return {raw, dm / s, (2.0 * kurt_[b] - dm) / (s * s)};
}

std::vector<VolQuote> first_step_quotes(const std::vector<LocalVolSurface>& surfaces,
                                        const Eigen::VectorXd& s) {
    if (static_cast<Eigen::Index>(surfaces.size()) != s.size()) {
        throw InvalidInput("local_vol: one surface per asset required");
    }
    std::vector<VolQuote> quotes(surfaces.size());
    for (std::size_t j = 0; j < surfaces.size(); ++j) {
        quotes[j] = surfaces[j].vol(0.0, s[static_cast<Eigen::Index>(j)]);
    }
    return quotes;
}

CFunctions c_functions(const std::vector<VolQuote>& quotes, const Eigen::VectorXd& s, double dt1) {
    const Eigen::Index n = s.size();
    if (static_cast<Eigen::Index>(quotes.size()) != n) {
        throw InvalidInput("c_functions: quotes/spot size mismatch");
    }
    CFunctions c;
    c.c1.resize(n);
    c.c2.resize(n);
    c.ds_c1.resize(n);
    c.ds_c2.resize(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double sj = s[j];
        if (!(sj > 0.0)) {
            throw InvalidInput("c_functions: spots must be positive");
        }
        const auto& q = quotes[static_cast<std::size_t>(j)];
        const double c1 = q.d_sigma / q.sigma;
        c.c1[j] = c1;
        c.c2[j] = 1.0 / (sj * q.sigma) - dt1 * q.d_sigma;
        c.ds_c1[j] = q.d2_sigma / q.sigma - c1 * c1;
        c.ds_c2[j] = -(1.0 + sj * c1) / (sj * sj * q.sigma) - dt1 * q.d2_sigma;
    }
    return c;
}

CFunctions c_functions(const std::vector<LocalVolSurface>& surfaces, const Eigen::VectorXd& s,
                       double dt1) {
    return c_functions(first_step_quotes(surfaces, s), s, dt1);
}

} // namespace pwg
