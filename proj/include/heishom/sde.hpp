#pragma once

#include <functional>
#include <string>
#include <vector>

#include "heishom/model.hpp"
#include "heishom/stats.hpp"

namespace heishom {

struct TrajectoryConfig {
    double dt = 1e-3;
    std::int64_t total_steps = 10'000'000;
    std::int64_t burn_in_steps = 100'000;
    std::uint64_t seed = 0;
    int n_chains = 8;
    int n_workers = 0; // 0 = hardware concurrency

    void validate() const; // throws ConfigError on a bad configuration
};

/// One Euler-Maruyama step of dY = b(Y) dt + sqrt(2) sigma(Y) dW:
/// y' = y + b(y) dt + sqrt(2 dt) * (xi1, xi2, 2 y2 xi1 - 2 y1 xi2).
FastState em_step(const FastState& y, double dt, const std::array<double, 2>& xi,
                  const ModelParams& p);

/// Integrand for a mu-average. clip caps |F| at 1e6 (rate reported).
struct Functional {
    std::string name;
    std::function<double(const FastState&)> f;
    bool clip = false;
};

constexpr double kClipBound = 1e6;

/// Registry of named integrands used by the CLI and the cross-checks:
/// one, y1, y2, y1^4, y2^4, y3^2, cos_y3, cos_sum, u1_clipped.
Functional named_functional(const std::string& name);

/// Time averages over post-burn-in samples of n_chains independent chains
/// started at the origin, all functionals in a single pass. Standard errors
/// by batch means (20 batches per chain). Deterministic given (seed, cfg, p)
/// and independent of worker count.
std::vector<InvariantEstimate> estimate_invariant_integrals(const std::vector<Functional>& fs,
                                                            const TrajectoryConfig& cfg,
                                                            const ModelParams& p);

InvariantEstimate estimate_invariant_integral(const Functional& f, const TrajectoryConfig& cfg,
                                              const ModelParams& p);

struct MomentRow {
    std::string name;
    InvariantEstimate full;
    InvariantEstimate first_half;
    bool window_stable = false; // halves agree within 4 combined std errors
};

struct WindowedEstimates {
    std::vector<MomentRow> rows;
    double outlier_fraction = 0.0; // post-burn-in samples with |y| > 25
    bool all_stable() const;
};

/// Same single-pass estimator, with a first-half-window estimate per
/// functional for the window-doubling convergence flag.
WindowedEstimates estimate_with_windows(const std::vector<Functional>& fs,
                                        const TrajectoryConfig& cfg, const ModelParams& p);

using MomentReport = WindowedEstimates; // rows y1, y2, y1^4, y2^4, y3^2

MomentReport moment_diagnostics(const TrajectoryConfig& cfg, const ModelParams& p);

/// Average of g(x, Y_t) at a fixed time t over independent replicas started
/// at y0 (the long-time stabilization oracle for the effective datum).
InvariantEstimate long_time_datum_average(const std::function<double(const FastState&)>& g_at_x,
                                          const FastState& y0, double t_final, double dt,
                                          int n_replicas, std::uint64_t seed,
                                          const ModelParams& p, int n_workers = 0);

} // namespace heishom
