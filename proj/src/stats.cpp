#include "heishom/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heishom {

bool InvariantEstimate::agrees_with(const InvariantEstimate& other, double z) const {
    const double band = z * std::sqrt(std_error * std_error + other.std_error * other.std_error);
    return std::abs(mean - other.mean) <= band;
}

BatchAccumulator::BatchAccumulator(int n_batches, std::int64_t n_samples) {
    if (n_batches < 1 || n_samples < n_batches)
        throw std::invalid_argument("batch accumulator needs at least one sample per batch");
    batch_len_ = n_samples / n_batches;
    capacity_ = batch_len_ * n_batches;
    batch_sums_.reserve(static_cast<std::size_t>(n_batches));
}

void BatchAccumulator::add(double x) {
    if (count_ >= capacity_) return;
    cur_batch_ += x;
    sum_ += x;
    sum_sq_ += x * x;
    ++count_;
    if (count_ % batch_len_ == 0) {
        batch_sums_.push_back(cur_batch_);
        cur_batch_ = 0.0;
    }
}

InvariantEstimate combine_batches(const std::vector<const BatchAccumulator*>& chains) {
    InvariantEstimate e;
    std::int64_t used = 0, clipped = 0;
    double total = 0.0, total_sq = 0.0;
    std::vector<double> means;
    std::int64_t batch_len = 0;
    for (const auto* c : chains) {
        batch_len = c->batch_len();
        for (double s : c->batch_sums()) means.push_back(s / static_cast<double>(batch_len));
        used += c->count();
        clipped += c->clipped();
        total += c->sum();
        total_sq += c->sum_sq();
    }
    const std::size_t nb = means.size();
    if (nb == 0 || used == 0) throw std::invalid_argument("no complete batches to combine");
    e.n_used = used;
    e.mean = total / static_cast<double>(used);
    double var_bm = 0.0;
    for (double m : means) var_bm += (m - e.mean) * (m - e.mean);
    var_bm /= (nb > 1 ? static_cast<double>(nb - 1) : 1.0);
    e.std_error = std::sqrt(var_bm / static_cast<double>(nb));
    const double marginal_var =
        std::max(0.0, total_sq / static_cast<double>(used) - e.mean * e.mean);
    if (e.std_error > 0.0)
        e.effective_samples = std::clamp(marginal_var / (e.std_error * e.std_error), 1.0,
                                         static_cast<double>(used));
    else
        e.effective_samples = static_cast<double>(used);
    e.clip_fraction = static_cast<double>(clipped) / static_cast<double>(used);
    return e;
}

} // namespace heishom
