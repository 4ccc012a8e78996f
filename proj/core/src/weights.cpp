#include "pwgreeks/weights.hpp"

#include "pwgreeks/errors.hpp"

#include <cmath>

namespace pwg {

RBundle r_bundle(const CFunctions& c, const Eigen::VectorXd& w) {
    RBundle b;
    b.r = c.c2 + w.cwiseProduct(c.c1);
    b.dw_r = c.c1;
    b.ds_r = c.ds_c2 + w.cwiseProduct(c.ds_c1);
    b.dww_r = Eigen::VectorXd::Zero(w.size());
    b.dsw_r = c.ds_c1;
    return b;
}

RBundle r_bundle(const std::vector<LocalVolSurface>& surfaces, const Eigen::VectorXd& s,
                 double dt1, const Eigen::VectorXd& w) {
    return r_bundle(c_functions(surfaces, s, dt1), w);
}

WeightContext make_weight_context(const std::vector<VolQuote>& quotes, const Eigen::VectorXd& s,
                                  double dt1, const CorrelationModel& corr) {
    WeightContext ctx;
    ctx.c = c_functions(quotes, s, dt1);
    ctx.rho = corr.rho();
    ctx.rho_inv = corr.rho_inv();  // throws SingularCorrelation when absent
    ctx.gram = ctx.rho_inv.transpose() * ctx.rho_inv;
    ctx.dt1 = dt1;
    return ctx;
}

WeightContext make_weight_context(const ModelSpec& spec,
                                  const std::optional<InflationParams>& eps) {
    if (!eps) {
        return make_weight_context(first_step_quotes(spec.surfaces, spec.spot), spec.spot,
                                   spec.grid.dt1(), spec.corr);
    }
    // Inflated first step: vol frozen at the spot (constant in s) plus eps1,
    // correlation of Sigma_eps2.
    const FirstStepDynamics fs = inflated_first_step_dynamics(spec, *eps);
    std::vector<VolQuote> quotes(static_cast<std::size_t>(spec.n()));
    for (Eigen::Index j = 0; j < spec.n(); ++j) {
        quotes[static_cast<std::size_t>(j)] = {fs.sigma[j], 0.0, 0.0};
    }
    return make_weight_context(quotes, spec.spot, spec.grid.dt1(), fs.corr);
}

DeltaWeights delta_weights(const WeightContext& ctx, const Eigen::VectorXd& z,
                           const Eigen::VectorXd& x) {
    const RBundle b = r_bundle(ctx.c, ctx.rho * x);
    const Eigen::VectorXd u = ctx.rho_inv.transpose() * z;
    return {-b.dw_r, u.cwiseProduct(b.r)};
}

GammaWeights gamma_weights(const WeightContext& ctx, const Eigen::VectorXd& z,
                           const Eigen::VectorXd& x) {
    const RBundle b = r_bundle(ctx.c, ctx.rho * x);
    const Eigen::VectorXd u = ctx.rho_inv.transpose() * z;

    GammaWeights g;
    g.lambda0 = b.dw_r * b.dw_r.transpose();
    g.lambda0.diagonal() += b.dww_r.cwiseProduct(b.r) - b.dsw_r;

    const Eigen::VectorXd ru = b.r.cwiseProduct(u);
    g.lambda1 = -(ru * b.dw_r.transpose());
    g.lambda1 -= b.dw_r * ru.transpose();
    g.lambda1.diagonal() += u.cwiseProduct(b.ds_r) - u.cwiseProduct(b.dw_r).cwiseProduct(b.r);

    g.lambda2 = b.r.asDiagonal() * (u * u.transpose() - ctx.gram) * b.r.asDiagonal();
    return g;
}

WeightSet diagonal_weights(const WeightContext& ctx, const Eigen::VectorXd& z,
                           const Eigen::VectorXd& x) {
    const DeltaWeights d = delta_weights(ctx, z, x);
    const GammaWeights g = gamma_weights(ctx, z, x);
    return {d.theta0, d.theta1, g.lambda0, g.lambda1, g.lambda2};
}

namespace {

WeightContext context_at(const ModelSpec& spec, const Eigen::VectorXd& s, double dt1) {
    return make_weight_context(first_step_quotes(spec.surfaces, s), s, dt1, spec.corr);
}

} // namespace

DeltaWeights delta_weights(const ModelSpec& spec, const WeightInputs& in) {
    return delta_weights(context_at(spec, in.s, in.dt1), in.z, in.x);
}

GammaWeights gamma_weights(const ModelSpec& spec, const WeightInputs& in) {
    return gamma_weights(context_at(spec, in.s, in.dt1), in.z, in.x);
}

WeightSet generic_weights(const JCallback& j_callback, const WeightInputs& in) {
    const Eigen::Index n = in.s.size();
    const JBundle jb = j_callback(in.s, in.x);
    if (jb.j.rows() != n || jb.j.cols() != n ||
        static_cast<Eigen::Index>(jb.dx.size()) != n ||
        static_cast<Eigen::Index>(jb.ds.size()) != n ||
        jb.div_dx.rows() != n || jb.div_dx.cols() != n ||
        jb.div_ds.rows() != n || jb.div_ds.cols() != n) {
        throw InvalidInput("generic_weights: callback returned inconsistent dimensions");
    }
    for (const auto& m : jb.dx) {
        if (m.rows() != n || m.cols() != n) {
            throw InvalidInput("generic_weights: callback returned inconsistent dimensions");
        }
    }
    for (const auto& m : jb.ds) {
        if (m.rows() != n || m.cols() != n) {
            throw InvalidInput("generic_weights: callback returned inconsistent dimensions");
        }
    }

    // div_l = sum_p dx[p](p, l)
    Eigen::VectorXd div = Eigen::VectorXd::Zero(n);
    for (Eigen::Index p = 0; p < n; ++p) {
        div += jb.dx[static_cast<std::size_t>(p)].row(p).transpose();
    }

    const Eigen::VectorXd tz = jb.j.transpose() * in.z;  // (z^T J)^T

    // dxz(l, r) = sum_p z_p dx[r](p, l);  dsz(l, m) = sum_p z_p ds[m](p, l)
    Eigen::MatrixXd dxz(n, n), dsz(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        dxz.col(r) = jb.dx[static_cast<std::size_t>(r)].transpose() * in.z;
        dsz.col(r) = jb.ds[static_cast<std::size_t>(r)].transpose() * in.z;
    }

    WeightSet w;
    w.theta0 = -div;
    w.theta1 = tz;
    w.lambda0 = div * div.transpose() + jb.div_dx.transpose() * jb.j - jb.div_ds.transpose();
    w.lambda1 = dsz - dxz * jb.j - tz * div.transpose() - div * tz.transpose();
    w.lambda2 = tz * tz.transpose() - jb.j.transpose() * jb.j;
    return w;
}

JBundle correlated_diagonal_jbundle(const CFunctions& c, const Eigen::MatrixXd& rho,
                                    const Eigen::MatrixXd& rho_inv, const Eigen::VectorXd& x) {
    const Eigen::Index n = x.size();
    const RBundle b = r_bundle(c, rho * x);

    JBundle jb;
    jb.j = rho_inv * b.r.asDiagonal();
    jb.dx.resize(static_cast<std::size_t>(n));
    jb.ds.resize(static_cast<std::size_t>(n));
    for (Eigen::Index r = 0; r < n; ++r) {
        // d J_{pl} / d x_r = rho_inv(p,l) dw_r_l rho(l,r)
        jb.dx[static_cast<std::size_t>(r)] =
            rho_inv * b.dw_r.cwiseProduct(rho.col(r)).asDiagonal();
        // d J_{pl} / d s_m = rho_inv(p,l) ds_r_l when l == m, else 0
        Eigen::MatrixXd dsm = Eigen::MatrixXd::Zero(n, n);
        dsm.col(r) = rho_inv.col(r) * b.ds_r[r];
        jb.ds[static_cast<std::size_t>(r)] = dsm;
    }
    // Contracted second derivatives collapse via sum_p rho(l,p) rho_inv(p,l) = 1.
    jb.div_dx = rho.transpose() * b.dww_r.asDiagonal();  // div_dx(r,l) = dww_r_l rho(l,r)
    jb.div_ds = b.dsw_r.asDiagonal();                    // div_ds(m,l) = dsw_r_l delta_{lm}
    return jb;
}

double max_relative_asymmetry(const Eigen::MatrixXd& a) {
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    return (a - a.transpose()).cwiseAbs().maxCoeff() / scale;
}

void symmetrize_checked(Eigen::MatrixXd& a, double tol) {
    if (max_relative_asymmetry(a) > tol) {
        throw NumericalError("weights: Lambda matrix asymmetry beyond tolerance");
    }
    a = 0.5 * (a + a.transpose()).eval();
}

} // namespace pwg
