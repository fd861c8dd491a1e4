#pragma once

#include <cstdint>
#include <vector>

#include "heishom/effective.hpp"
#include "heishom/model.hpp"

namespace heishom {

struct CoupledState {
    double t = 0.0;
    SlowPoint x;
    FastState y;
};

/// Either a fixed control or the feedback table read off the effective
/// solver's argmin.
struct Policy {
    int fixed_control = 0;
    const EffectiveSolution* table = nullptr;

    static Policy fixed(int u) { return {u, nullptr}; }
    static Policy feedback(const EffectiveSolution* sol) { return {0, sol}; }

    int control_at(double t, const SlowPoint& x) const {
        return table ? table->control_at(t, x) : fixed_control;
    }
};

/// One discounted payoff sample of the coupled slow-fast system under the
/// given policy: Euler-Maruyama on (X, Y), a single 2-vector of normals per
/// step drives Y, an independent one drives X (disjoint noise dimensions),
/// payoff = sum exp(-a(s-t)) f dt + exp(-a(T-t)) g(X_T, Y_T).
/// Requires dt <= eps / 100.
double simulate_coupled(const ControlModel& m, const ModelParams& p, const CoupledState& start,
                        double eps, const Policy& pol, double dt, std::uint64_t seed,
                        std::uint64_t replica);

struct McValue {
    double estimate = 0.0;
    double std_error = 0.0;
    std::int64_t n_samples = 0;
};

McValue mc_value(const ControlModel& m, const ModelParams& p, const CoupledState& start,
                 double eps, const Policy& pol, double dt, std::int64_t n_samples,
                 std::uint64_t seed, int n_workers = 0);

struct EpsLadderRow {
    double eps = 0.0;
    double estimate = 0.0;
    double std_error = 0.0;
    double gap = 0.0; // |estimate - V| (single control) or V - estimate (policy bound)
    std::int64_t n_samples = 0;
    double dt = 0.0;
};

/// dt rule for the ladder: dt = min(1e-3, eps/100).
double ladder_dt(double eps);

/// Runs mc_value along params.epsilon_ladder with common random numbers and
/// reports the gap against the effective solution at the start point.
/// Single-control models use a fixed policy; controlled models are evaluated
/// under the feedback policy (a lower bound on the value).
std::vector<EpsLadderRow> epsilon_ladder_experiment(const ControlModel& m, const ModelParams& p,
                                                    const CoupledState& start,
                                                    const EffectiveSolution& effective,
                                                    std::int64_t n_samples, std::uint64_t seed,
                                                    int n_workers = 0);

} // namespace heishom
