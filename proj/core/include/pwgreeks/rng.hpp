#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

namespace pwg {

/// Philox4x32-10 counter-based block cipher (Salmon et al., SC 2011).
/// One block of four 32-bit words per (key, counter) pair; no state.
std::array<std::uint32_t, 4> philox4x32(std::uint64_t key,
                                        std::uint64_t counter_hi,
                                        std::uint64_t counter_lo);

/// Inverse standard normal CDF, Wichura's AS 241 (PPND16). p in (0,1).
double inverse_normal_cdf(double p);

/// Standard normal draw as a pure function of (seed, path, step, asset).
/// Identical regardless of thread count, chunking, or evaluation order.
double standard_normal(std::uint64_t seed, std::uint64_t path,
                       std::uint32_t step, std::uint32_t asset);

/// How a view treats the first simulation step's draws.
enum class FirstStep { Plain, Reflected, Zeroed };

/// Lazy M x N x n block of standard normals keyed by a 64-bit seed.
/// Steps are 0-based: step 0 drives t_0 -> t_1.
class NoiseBlock {
public:
    NoiseBlock(std::uint64_t seed, std::size_t paths, std::size_t steps, std::size_t assets)
        : seed_(seed), paths_(paths), steps_(steps), assets_(assets) {}

    double operator()(std::size_t path, std::size_t step, std::size_t asset) const {
        return at(path, step, asset, FirstStep::Plain);
    }

    double at(std::size_t path, std::size_t step, std::size_t asset, FirstStep view) const {
        const double z = standard_normal(seed_, path,
                                         static_cast<std::uint32_t>(step),
                                         static_cast<std::uint32_t>(asset));
        if (step != 0) return z;
        switch (view) {
            case FirstStep::Reflected: return -z;
            case FirstStep::Zeroed: return 0.0;
            default: return z;
        }
    }

    /// Z_{step+1} as a column vector over assets.
    Eigen::VectorXd step_vector(std::size_t path, std::size_t step,
                                FirstStep view = FirstStep::Plain) const;

    std::uint64_t seed() const { return seed_; }
    std::size_t paths() const { return paths_; }
    std::size_t steps() const { return steps_; }
    std::size_t assets() const { return assets_; }

private:
    std::uint64_t seed_;
    std::size_t paths_, steps_, assets_;
};

/// (Z_hat_1, Z_bar_1) = (-Z_1, 0): the reflected and zeroed first-step vectors.
std::pair<Eigen::VectorXd, Eigen::VectorXd> first_step_variants(const Eigen::VectorXd& z1);

} // namespace pwg
