#include "pwgreeks/dynamics.hpp"

#include "pwgreeks/errors.hpp"

#include <cmath>

namespace pwg {

void ModelSpec::validate() const {
    const Eigen::Index dim = spot.size();
    if (dim == 0) {
        throw InvalidInput("model: empty spot vector");
    }
    if ((spot.array() <= 0.0).any()) {
        throw InvalidInput("model: spots must be positive");
    }
    if (corr.dim() != dim) {
        throw InvalidInput("model: correlation dimension must match asset count");
    }
    if (static_cast<Eigen::Index>(surfaces.size()) != dim) {
        throw InvalidInput("model: one vol surface per asset required");
    }
}

namespace {

inline double exp_step(double s, double sigma, double dt, double sqrt_dt, double w) {
    return s * std::exp(-0.5 * sigma * sigma * dt + sigma * sqrt_dt * w);
}

// Advance one trajectory row through step i with mixed noise w = rho z.
void advance(const ModelSpec& spec, std::size_t i, const Eigen::VectorXd& w,
             const Eigen::VectorXd& prev, Eigen::VectorXd& next) {
    const double t_i = spec.grid.times()[i];
    const double dt = spec.grid.dt()[i];
    const double sqrt_dt = std::sqrt(dt);
    for (Eigen::Index j = 0; j < prev.size(); ++j) {
        const double sigma = spec.surfaces[static_cast<std::size_t>(j)].vol(t_i, prev[j]).sigma;
        next[j] = exp_step(prev[j], sigma, dt, sqrt_dt, w[j]);
    }
}

void advance_frozen(const FirstStepDynamics& fs, double dt, const Eigen::VectorXd& w,
                    const Eigen::VectorXd& prev, Eigen::VectorXd& next) {
    const double sqrt_dt = std::sqrt(dt);
    for (Eigen::Index j = 0; j < prev.size(); ++j) {
        next[j] = exp_step(prev[j], fs.sigma[j], dt, sqrt_dt, w[j]);
    }
}

void check_finite(const Eigen::VectorXd& v, const char* where) {
    if (!v.allFinite()) {
        throw NumericalError(std::string("dynamics: non-finite state in ") + where);
    }
}

} // namespace

FirstStepDynamics inflated_first_step_dynamics(const ModelSpec& spec, const InflationParams& eps) {
    if (eps.eps1 < 0.0) {
        throw InvalidInput("inflation: eps1 must be nonnegative");
    }
    FirstStepDynamics fs;
    fs.sigma.resize(spec.n());
    for (Eigen::Index j = 0; j < spec.n(); ++j) {
        fs.sigma[j] = spec.surfaces[static_cast<std::size_t>(j)].vol(0.0, spec.spot[j]).sigma +
                      eps.eps1;
    }
    fs.corr = CorrelationModel::factor(inflate(spec.corr.sigma(), eps.eps2));
    return fs;
}

Eigen::VectorXd step(const ModelSpec& spec, std::size_t i, const Eigen::VectorXd& s_prev,
                     const Eigen::VectorXd& z) {
    if ((s_prev.array() <= 0.0).any()) {
        throw InvalidInput("step: states must be positive");
    }
    check_finite(s_prev, "step input");
    check_finite(z, "step noise");
    Eigen::VectorXd next(s_prev.size());
    advance(spec, i, spec.corr.rho() * z, s_prev, next);
    check_finite(next, "step output");
    return next;
}

Eigen::VectorXd inflated_first_step(const ModelSpec& spec, const InflationParams& eps,
                                    const Eigen::VectorXd& s, const Eigen::VectorXd& z) {
    if ((s.array() <= 0.0).any()) {
        throw InvalidInput("inflated_first_step: states must be positive");
    }
    FirstStepDynamics fs = inflated_first_step_dynamics(spec, eps);
    // Vol frozen at the given state, not the model spot.
    for (Eigen::Index j = 0; j < s.size(); ++j) {
        fs.sigma[j] = spec.surfaces[static_cast<std::size_t>(j)].vol(0.0, s[j]).sigma + eps.eps1;
    }
    Eigen::VectorXd next(s.size());
    advance_frozen(fs, spec.grid.dt1(), fs.corr.rho() * z, s, next);
    check_finite(next, "inflated first step");
    return next;
}

PathTriple simulate_triple(const ModelSpec& spec, const NoiseBlock& noise, std::size_t path,
                           const FirstStepDynamics* first_step) {
    const Eigen::Index n = spec.n();
    const std::size_t num_steps = spec.grid.num_steps();
    PathTriple out;
    out.s.resize(static_cast<Eigen::Index>(num_steps) + 1, n);
    out.s_hat.resizeLike(out.s);
    out.s_bar.resizeLike(out.s);
    out.s.row(0) = spec.spot.transpose();
    out.s_hat.row(0) = spec.spot.transpose();
    out.s_bar.row(0) = spec.spot.transpose();

    out.z1 = noise.step_vector(path, 0);
    const Eigen::MatrixXd& rho1 = first_step ? first_step->corr.rho() : spec.corr.rho();

    Eigen::VectorXd state(n), state_hat(n), state_bar(n), next(n);

    // First step: the three trajectories see (Z_1, -Z_1, 0).
    const double dt1 = spec.grid.dt1();
    if (first_step) {
        advance_frozen(*first_step, dt1, rho1 * out.z1, spec.spot, state);
        advance_frozen(*first_step, dt1, rho1 * (-out.z1), spec.spot, state_hat);
        advance_frozen(*first_step, dt1, Eigen::VectorXd::Zero(n), spec.spot, state_bar);
    } else {
        advance(spec, 0, rho1 * out.z1, spec.spot, state);
        advance(spec, 0, rho1 * (-out.z1), spec.spot, state_hat);
        advance(spec, 0, Eigen::VectorXd::Zero(n), spec.spot, state_bar);
    }
    out.s.row(1) = state.transpose();
    out.s_hat.row(1) = state_hat.transpose();
    out.s_bar.row(1) = state_bar.transpose();

    // Later steps share the mixed noise w = rho Z_{i+1} exactly.
    for (std::size_t i = 1; i < num_steps; ++i) {
        const Eigen::VectorXd w = spec.corr.rho() * noise.step_vector(path, i);
        advance(spec, i, w, state, next);
        state.swap(next);
        advance(spec, i, w, state_hat, next);
        state_hat.swap(next);
        advance(spec, i, w, state_bar, next);
        state_bar.swap(next);
        const auto row = static_cast<Eigen::Index>(i) + 1;
        out.s.row(row) = state.transpose();
        out.s_hat.row(row) = state_hat.transpose();
        out.s_bar.row(row) = state_bar.transpose();
    }

    check_finite(state, "triple terminal");
    check_finite(state_hat, "triple terminal (hat)");
    check_finite(state_bar, "triple terminal (bar)");
    return out;
}

Eigen::MatrixXd simulate_path(const ModelSpec& spec, const NoiseBlock& noise, std::size_t path,
                              const FirstStepDynamics* first_step) {
    const Eigen::Index n = spec.n();
    const std::size_t num_steps = spec.grid.num_steps();
    Eigen::MatrixXd out(static_cast<Eigen::Index>(num_steps) + 1, n);
    out.row(0) = spec.spot.transpose();

    Eigen::VectorXd state(n), next(n);
    const Eigen::VectorXd z1 = noise.step_vector(path, 0);
    if (first_step) {
        advance_frozen(*first_step, spec.grid.dt1(), first_step->corr.rho() * z1, spec.spot,
                       state);
    } else {
        advance(spec, 0, spec.corr.rho() * z1, spec.spot, state);
    }
    out.row(1) = state.transpose();

    for (std::size_t i = 1; i < num_steps; ++i) {
        const Eigen::VectorXd w = spec.corr.rho() * noise.step_vector(path, i);
        advance(spec, i, w, state, next);
        state.swap(next);
        out.row(static_cast<Eigen::Index>(i) + 1) = state.transpose();
    }
    check_finite(state, "path terminal");
    return out;
}

} // namespace pwg
