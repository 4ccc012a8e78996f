#include "pwgreeks/stats.hpp"

#include "pwgreeks/errors.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace pwg {

namespace {

// c tracks the running rounding excess of s; the exact total is s - c.
inline void kahan_add(double& s, double& c, double x) {
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
}

} // namespace

void StatAccumulator::reset(std::size_t components) {
    count_ = 0;
    sum_.assign(components, 0.0);
    sum_c_.assign(components, 0.0);
    sumsq_.assign(components, 0.0);
    sumsq_c_.assign(components, 0.0);
}

void StatAccumulator::add(std::span<const double> values) {
    if (values.size() != sum_.size()) {
        throw InvalidInput("stats: observation size mismatch");
    }
    ++count_;
    for (std::size_t i = 0; i < values.size(); ++i) {
        kahan_add(sum_[i], sum_c_[i], values[i]);
        kahan_add(sumsq_[i], sumsq_c_[i], values[i] * values[i]);
    }
}

void StatAccumulator::merge(const StatAccumulator& other) {
    if (other.sum_.size() != sum_.size()) {
        throw InvalidInput("stats: merging accumulators of different shape");
    }
    count_ += other.count_;
    for (std::size_t i = 0; i < sum_.size(); ++i) {
        kahan_add(sum_[i], sum_c_[i], other.sum_[i]);
        kahan_add(sum_[i], sum_c_[i], -other.sum_c_[i]);
        kahan_add(sumsq_[i], sumsq_c_[i], other.sumsq_[i]);
        kahan_add(sumsq_[i], sumsq_c_[i], -other.sumsq_c_[i]);
    }
}

double StatAccumulator::mean(std::size_t i) const {
    return count_ == 0 ? 0.0 : (sum_[i] - sum_c_[i]) / static_cast<double>(count_);
}

double StatAccumulator::variance(std::size_t i) const {
    if (count_ < 2) return 0.0;
    const auto n = static_cast<double>(count_);
    const double m = mean(i);
    const double m2 = (sumsq_[i] - sumsq_c_[i]) - n * m * m;
    return std::max(m2, 0.0) / (n - 1.0);
}

double StatAccumulator::std_error(std::size_t i) const {
    return count_ == 0 ? 0.0 : std::sqrt(variance(i) / static_cast<double>(count_));
}

std::vector<StatAccumulator> run_chunked(std::size_t paths, std::size_t chunk_size, int threads,
                                         std::size_t components, const ChunkFn& fn) {
    if (paths == 0 || chunk_size == 0) {
        throw InvalidInput("run_chunked: paths and chunk_size must be positive");
    }
    const std::size_t num_chunks = (paths + chunk_size - 1) / chunk_size;
    std::vector<StatAccumulator> chunks(num_chunks);
    for (auto& c : chunks) c.reset(components);

    auto work_chunk = [&](std::size_t idx) {
        const std::size_t begin = idx * chunk_size;
        const std::size_t end = std::min(begin + chunk_size, paths);
        fn(begin, end, chunks[idx]);
    };

    if (threads <= 1 || num_chunks == 1) {
        for (std::size_t idx = 0; idx < num_chunks; ++idx) work_chunk(idx);
        return chunks;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= num_chunks) return;
            try {
                work_chunk(idx);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    const int n_workers = std::min<int>(threads, static_cast<int>(num_chunks));
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return chunks;
}

StatAccumulator merge_chunks(const std::vector<StatAccumulator>& chunks, std::size_t chunk_size,
                             std::size_t checkpoint_every,
                             std::vector<Checkpoint>* checkpoints) {
    StatAccumulator total(chunks.front().components());
    const std::size_t every_chunks =
        checkpoint_every == 0 ? 0 : std::max<std::size_t>(1, (checkpoint_every + chunk_size - 1) / chunk_size);

    for (std::size_t idx = 0; idx < chunks.size(); ++idx) {
        total.merge(chunks[idx]);
        const bool last = idx + 1 == chunks.size();
        if (checkpoints && every_chunks > 0 && ((idx + 1) % every_chunks == 0 || last)) {
            Checkpoint cp;
            cp.paths = total.count();
            cp.mean.resize(total.components());
            cp.se.resize(total.components());
            for (std::size_t i = 0; i < total.components(); ++i) {
                cp.mean[i] = total.mean(i);
                cp.se[i] = total.std_error(i);
            }
            checkpoints->push_back(std::move(cp));
        }
    }
    return total;
}

double regression_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw InvalidInput("regression_slope: need at least two matching points");
    }
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace pwg
