#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace pwg {

/// Mean/variance accumulator over a fixed number of components, using
/// compensated (Kahan) sums so 1e6-path accumulations stay stable to
/// ~1e-12 relative.
class StatAccumulator {
public:
    StatAccumulator() = default;
    explicit StatAccumulator(std::size_t components) { reset(components); }

    void reset(std::size_t components);
    void add(std::span<const double> values);
    void merge(const StatAccumulator& other);

    std::size_t count() const { return count_; }
    std::size_t components() const { return sum_.size(); }

    double mean(std::size_t i) const;
    /// Sample variance (n - 1 denominator), clamped at 0.
    double variance(std::size_t i) const;
    /// sqrt(variance / n).
    double std_error(std::size_t i) const;

private:
    std::size_t count_ = 0;
    std::vector<double> sum_, sum_c_, sumsq_, sumsq_c_;
};

/// Running estimate snapshot after a whole number of chunks.
struct Checkpoint {
    std::size_t paths = 0;
    std::vector<double> mean;
    std::vector<double> se;
};

/// Chunk body: accumulate per-path observations for paths [begin, end) into
/// `acc`, in ascending path order.
using ChunkFn = std::function<void(std::size_t begin, std::size_t end, StatAccumulator& acc)>;

/// Partition [0, paths) into fixed-size chunks and fill one accumulator per
/// chunk. With threads > 1, workers claim chunks from a shared counter; the
/// chunk contents do not depend on the claiming order, so results are
/// byte-identical to a serial run for the same chunk size.
std::vector<StatAccumulator> run_chunked(std::size_t paths, std::size_t chunk_size, int threads,
                                         std::size_t components, const ChunkFn& fn);

/// Merge chunk accumulators in index order. When checkpoint_every > 0 a
/// snapshot is recorded every ceil(checkpoint_every / chunk_size) chunks and
/// at the end (checkpoint counts land on chunk boundaries).
StatAccumulator merge_chunks(const std::vector<StatAccumulator>& chunks, std::size_t chunk_size,
                             std::size_t checkpoint_every,
                             std::vector<Checkpoint>* checkpoints = nullptr);

/// Least-squares slope of y on x.
double regression_slope(std::span<const double> x, std::span<const double> y);

} // namespace pwg
