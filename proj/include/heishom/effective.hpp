#pragma once

#include <cstdint>
#include <vector>

#include "heishom/model.hpp"
#include "heishom/sde.hpp"

namespace heishom {

struct ValueWithError {
    double value = 0.0;
    double std_error = 0.0;
};

/// H(x,y,p,X,0) = min over the control set of
///   -tr(sigma_tilde sigma_tilde^T X) - phi_tilde . p - f(x,y,u).
double hamiltonian_pointwise(const ControlModel& m, const SlowPoint& x, const FastState& y,
                             const SlowVec& p, const SymMat& X);

/// The mu-moments the registry models depend on.
struct MuStats {
    InvariantEstimate cos_y3;
};

MuStats compute_mu_stats(const TrajectoryConfig& cfg, const ModelParams& p);

/// Effective Hamiltonian/datum evaluator with the mu-moment cached once.
/// For every registry model H's y-dependence factors through cos(y3), so
/// Hbar(x,p,X) = min_u { -tr(st st^T X) - phi.p - f0(x,u) - f1(x,u) E_mu[cos y3] }.
class EffectiveField {
public:
    EffectiveField(ControlModel m, MuStats mu) : model_(std::move(m)), mu_(mu) {}

    ValueWithError hbar(const SlowPoint& x, const SlowVec& p, const SymMat& X) const;
    ValueWithError gbar(const SlowPoint& x) const;
    int hbar_argmin(const SlowPoint& x, const SlowVec& p, const SymMat& X) const;

    const ControlModel& model() const { return model_; }
    const MuStats& mu() const { return mu_; }

private:
    ControlModel model_;
    MuStats mu_;
};

ValueWithError effective_hamiltonian(const ControlModel& m, const SlowPoint& x, const SlowVec& p,
                                     const SymMat& X, const TrajectoryConfig& cfg,
                                     const ModelParams& params);
ValueWithError effective_datum(const ControlModel& m, const SlowPoint& x,
                               const TrajectoryConfig& cfg, const ModelParams& params);

/// Uniform slow grid [-L, L]^n, n in {1,2}.
struct SlowGrid {
    int n_slow = 1;
    double dx = 0.02;
    int half = 200;

    static SlowGrid make(int n_slow, double radius, double dx);
    int n() const { return 2 * half + 1; }
    std::int64_t nodes() const { return n_slow == 1 ? n() : static_cast<std::int64_t>(n()) * n(); }
    double coord(int idx) const { return (idx - half) * dx; }
    double radius() const { return half * dx; }
    std::int64_t node_index(int i, int j = 0) const {
        return n_slow == 1 ? i : j + static_cast<std::int64_t>(n()) * i;
    }
};

/// Backward-in-time explicit monotone scheme for
///   -dV/dt + Hbar(x, DV, D2V) + aV = 0, V(T,.) = gbar,
/// one step: V(t-dt) = exp(-a dt) [ V(t) - dt Hbar(...) ], central diffusion,
/// per-control upwind drift, linear extrapolation ghosts at the box edge.
struct EffectiveSolution {
    SlowGrid xgrid;
    int n_slow = 1;
    double T = 1.0;
    double dt = 0.0;
    std::vector<double> times;               // stored time levels, ascending
    std::vector<std::vector<double>> V;      // V[level][node]
    std::vector<std::vector<std::uint8_t>> argmin; // control achieving Hbar

    double value_at(double t, const SlowPoint& x) const;
    int control_at(double t, const SlowPoint& x) const;
};

EffectiveSolution solve_effective_pde(const EffectiveField& field, const SlowGrid& grid,
                                      int n_timesteps, const ModelParams& params,
                                      int max_stored_levels = 600);

} // namespace heishom
