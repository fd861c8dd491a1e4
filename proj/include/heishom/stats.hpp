#pragma once

#include <cstdint>
#include <vector>

namespace heishom {

struct InvariantEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    double effective_samples = 1.0;
    double clip_fraction = 0.0;
    std::int64_t n_used = 0;

    /// Two estimates are statistically compatible at z standard errors.
    bool agrees_with(const InvariantEstimate& other, double z) const;
};

/// Fixed-layout batch-means accumulator: the sample count is known up front,
/// samples beyond n_batches * batch_len are ignored so the layout is
/// independent of how the stream is chunked.
class BatchAccumulator {
public:
    BatchAccumulator(int n_batches, std::int64_t n_samples);

    void add(double x);

    int n_batches() const { return static_cast<int>(batch_sums_.size()); }
    std::int64_t batch_len() const { return batch_len_; }
    std::int64_t count() const { return count_; }
    const std::vector<double>& batch_sums() const { return batch_sums_; }
    double sum() const { return sum_; }
    double sum_sq() const { return sum_sq_; }
    std::int64_t clipped() const { return clipped_; }
    void note_clipped() { ++clipped_; }

private:
    std::int64_t batch_len_;
    std::int64_t capacity_;
    std::int64_t count_ = 0;
    std::vector<double> batch_sums_;
    double cur_batch_ = 0.0;
    double sum_ = 0.0;
    double sum_sq_ = 0.0;
    std::int64_t clipped_ = 0;
};

/// Combine per-chain accumulators (equal layouts) into one estimate.
InvariantEstimate combine_batches(const std::vector<const BatchAccumulator*>& chains);

} // namespace heishom
