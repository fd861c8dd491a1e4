#include "heishom/effective.hpp"

#include <algorithm>
#include <cmath>

#include "heishom/errors.hpp"

namespace heishom {

double hamiltonian_pointwise(const ControlModel& m, const SlowPoint& x, const FastState& y,
                             const SlowVec& p, const SymMat& X) {
    const double diff = m.sigma_scale * m.sigma_scale * X.trace();
    double best = std::numeric_limits<double>::infinity();
    for (int u = 0; u < m.n_controls(); ++u) {
        const SlowVec phi = m.phi_tilde(x, y, u);
        double adv = 0.0;
        for (int d = 0; d < x.n; ++d) adv += phi.v[d] * p.v[d];
        best = std::min(best, -diff - adv - m.f(x, y, u));
    }
    return best;
}

MuStats compute_mu_stats(const TrajectoryConfig& cfg, const ModelParams& p) {
    MuStats s;
    s.cos_y3 = estimate_invariant_integral(named_functional("cos_y3"), cfg, p);
    return s;
}

namespace {
const FastState kOriginY{};
}

int EffectiveField::hbar_argmin(const SlowPoint& x, const SlowVec& p, const SymMat& X) const {
    const double diff = model_.sigma_scale * model_.sigma_scale * X.trace();
    const double mbar = mu_.cos_y3.mean;
    double best = std::numeric_limits<double>::infinity();
    int best_u = 0;
    for (int u = 0; u < model_.n_controls(); ++u) {
        const SlowVec phi = model_.phi_tilde(x, kOriginY, u);
        double adv = 0.0;
        for (int d = 0; d < x.n; ++d) adv += phi.v[d] * p.v[d];
        const double val = -diff - adv - model_.f0(x, u) - model_.f1(x, u) * mbar;
        if (val < best) {
            best = val;
            best_u = u;
        }
    }
    return best_u;
}

ValueWithError EffectiveField::hbar(const SlowPoint& x, const SlowVec& p, const SymMat& X) const {
    const int u = hbar_argmin(x, p, X);
    const double diff = model_.sigma_scale * model_.sigma_scale * X.trace();
    const SlowVec phi = model_.phi_tilde(x, kOriginY, u);
    double adv = 0.0;
    for (int d = 0; d < x.n; ++d) adv += phi.v[d] * p.v[d];
    const double f1 = model_.f1(x, u);
    return {-diff - adv - model_.f0(x, u) - f1 * mu_.cos_y3.mean,
            std::abs(f1) * mu_.cos_y3.std_error};
}

ValueWithError EffectiveField::gbar(const SlowPoint& x) const {
    return {model_.g0(x) + model_.g1 * mu_.cos_y3.mean,
            std::abs(model_.g1) * mu_.cos_y3.std_error};
}

ValueWithError effective_hamiltonian(const ControlModel& m, const SlowPoint& x, const SlowVec& p,
                                     const SymMat& X, const TrajectoryConfig& cfg,
                                     const ModelParams& params) {
    return EffectiveField(m, compute_mu_stats(cfg, params)).hbar(x, p, X);
}

ValueWithError effective_datum(const ControlModel& m, const SlowPoint& x,
                               const TrajectoryConfig& cfg, const ModelParams& params) {
    return EffectiveField(m, compute_mu_stats(cfg, params)).gbar(x);
}

SlowGrid SlowGrid::make(int n_slow, double radius, double dx) {
    if (n_slow != 1 && n_slow != 2) throw ConfigError("slow grid: n_slow must be 1 or 2");
    if (!(radius > 0.0) || !(dx > 0.0)) throw ConfigError("slow grid: radius and dx must be positive");
    SlowGrid g;
    g.n_slow = n_slow;
    g.dx = dx;
    g.half = static_cast<int>(std::llround(radius / dx));
    if (g.half < 2) throw ConfigError("slow grid: fewer than 5 nodes per axis");
    return g;
}

EffectiveSolution solve_effective_pde(const EffectiveField& field, const SlowGrid& grid,
                                      int n_timesteps, const ModelParams& params,
                                      int max_stored_levels) {
    const ControlModel& m = field.model();
    if (n_timesteps < 1) throw InvalidTimestepError("effective pde: n_timesteps >= 1 required");
    const double dt = params.T / n_timesteps;
    const double dx = grid.dx;
    const double c2 = m.sigma_scale * m.sigma_scale;
    if (c2 > 0.0 && !(dt <= dx * dx / (2.0 * c2) + 1e-15))
        throw InvalidTimestepError("effective pde: dt exceeds dx^2 / (2 max|sigma sigma^T|)");
    if (m.C_phi > 0.0 && !(dt <= dx / m.C_phi + 1e-15))
        throw InvalidTimestepError("effective pde: dt exceeds dx / max|phi|");
    // monotonicity of the full update
    if (dt * (2.0 * grid.n_slow * c2 / (dx * dx) + 2.0 * m.C_phi / dx) > 1.0 + 1e-12)
        throw InvalidTimestepError("effective pde: explicit step not monotone at this dt/dx");

    const int n = grid.n();
    const std::int64_t nodes = grid.nodes();
    const bool multi = m.n_controls() > 1;
    const int stride = std::max(1, (n_timesteps + max_stored_levels) / max_stored_levels);

    EffectiveSolution sol;
    sol.xgrid = grid;
    sol.n_slow = grid.n_slow;
    sol.T = params.T;
    sol.dt = dt;

    std::vector<double> cur(static_cast<std::size_t>(nodes));
    std::vector<double> next(static_cast<std::size_t>(nodes));
    std::vector<std::uint8_t> cur_arg(multi ? static_cast<std::size_t>(nodes) : 0u);

    auto x_of = [&](std::int64_t node) {
        SlowPoint x;
        x.n = grid.n_slow;
        if (grid.n_slow == 1) {
            x.x[0] = grid.coord(static_cast<int>(node));
        } else {
            x.x[0] = grid.coord(static_cast<int>(node / n));
            x.x[1] = grid.coord(static_cast<int>(node % n));
        }
        return x;
    };

    for (std::int64_t nd = 0; nd < nodes; ++nd) cur[static_cast<std::size_t>(nd)] = field.gbar(x_of(nd)).value;

    // stored levels, collected backward from t = T then reversed
    std::vector<double> rev_times;
    std::vector<std::vector<double>> rev_V;
    std::vector<std::vector<std::uint8_t>> rev_arg;
    auto store_level = [&](int step_idx) {
        rev_times.push_back(step_idx * dt);
        rev_V.push_back(cur);
        if (multi) rev_arg.push_back(cur_arg);
    };
    if (multi) std::fill(cur_arg.begin(), cur_arg.end(), 0);
    store_level(n_timesteps);

    const double decay = std::exp(-params.a * dt);
    const double mbar = field.mu().cos_y3.mean;
    for (int s = n_timesteps - 1; s >= 0; --s) {
        if (grid.n_slow == 1) {
            for (int i = 0; i < n; ++i) {
                const double v0 = cur[static_cast<std::size_t>(i)];
                const double vm = i > 0 ? cur[static_cast<std::size_t>(i - 1)] : 2.0 * cur[0] - cur[1];
                const double vp = i < n - 1 ? cur[static_cast<std::size_t>(i + 1)]
                                            : 2.0 * cur[static_cast<std::size_t>(n - 1)] -
                                                  cur[static_cast<std::size_t>(n - 2)];
                const SlowPoint x = x_of(i);
                const double diff = c2 * (vp - 2.0 * v0 + vm) / (dx * dx);
                double best = -std::numeric_limits<double>::infinity();
                int best_u = 0;
                for (int u = 0; u < m.n_controls(); ++u) {
                    const SlowVec phi = m.phi_tilde(x, kOriginY, u);
                    const double a0 = phi.v[0];
                    const double adv = a0 > 0.0 ? a0 * (vp - v0) / dx : a0 * (v0 - vm) / dx;
                    const double val = diff + adv + m.f0(x, u) + m.f1(x, u) * mbar;
                    if (val > best) {
                        best = val;
                        best_u = u;
                    }
                }
                next[static_cast<std::size_t>(i)] = decay * (v0 + dt * best);
                if (multi) cur_arg[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(best_u);
            }
        } else {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const std::int64_t nd = grid.node_index(i, j);
                    const double v0 = cur[static_cast<std::size_t>(nd)];
                    auto at = [&](int ii, int jj) {
                        return cur[static_cast<std::size_t>(grid.node_index(ii, jj))];
                    };
                    const double vxm = i > 0 ? at(i - 1, j) : 2.0 * at(0, j) - at(1, j);
                    const double vxp = i < n - 1 ? at(i + 1, j) : 2.0 * at(n - 1, j) - at(n - 2, j);
                    const double vym = j > 0 ? at(i, j - 1) : 2.0 * at(i, 0) - at(i, 1);
                    const double vyp = j < n - 1 ? at(i, j + 1) : 2.0 * at(i, n - 1) - at(i, n - 2);
                    const SlowPoint x = x_of(nd);
                    const double diff =
                        c2 * (vxp - 2.0 * v0 + vxm + vyp - 2.0 * v0 + vym) / (dx * dx);
                    double best = -std::numeric_limits<double>::infinity();
                    int best_u = 0;
                    for (int u = 0; u < m.n_controls(); ++u) {
                        const SlowVec phi = m.phi_tilde(x, kOriginY, u);
                        double adv = 0.0;
                        adv += phi.v[0] > 0.0 ? phi.v[0] * (vxp - v0) / dx
                                              : phi.v[0] * (v0 - vxm) / dx;
                        adv += phi.v[1] > 0.0 ? phi.v[1] * (vyp - v0) / dx
                                              : phi.v[1] * (v0 - vym) / dx;
                        const double val = diff + adv + m.f0(x, u) + m.f1(x, u) * mbar;
                        if (val > best) {
                            best = val;
                            best_u = u;
                        }
                    }
                    next[static_cast<std::size_t>(nd)] = decay * (v0 + dt * best);
                    if (multi) cur_arg[static_cast<std::size_t>(nd)] = static_cast<std::uint8_t>(best_u);
                }
        }
        cur.swap(next);
        if (s % stride == 0 || s == 0) store_level(s);
    }

    sol.times.assign(rev_times.rbegin(), rev_times.rend());
    sol.V.assign(rev_V.rbegin(), rev_V.rend());
    sol.argmin.assign(rev_arg.rbegin(), rev_arg.rend());
    return sol;
}

namespace {

double interp_nodes(const SlowGrid& g, const std::vector<double>& level, const SlowPoint& x) {
    const int n = g.n();
    auto clampi = [&](int v) { return std::clamp(v, 0, n - 1); };
    const double fi = x.x[0] / g.dx + g.half;
    if (g.n_slow == 1) {
        const int i0 = clampi(static_cast<int>(std::floor(fi)));
        const int i1 = clampi(i0 + 1);
        const double w = std::clamp(fi - i0, 0.0, 1.0);
        return (1.0 - w) * level[static_cast<std::size_t>(i0)] +
               w * level[static_cast<std::size_t>(i1)];
    }
    const double fj = x.x[1] / g.dx + g.half;
    const int i0 = clampi(static_cast<int>(std::floor(fi)));
    const int i1 = clampi(i0 + 1);
    const int j0 = clampi(static_cast<int>(std::floor(fj)));
    const int j1 = clampi(j0 + 1);
    const double wi = std::clamp(fi - i0, 0.0, 1.0);
    const double wj = std::clamp(fj - j0, 0.0, 1.0);
    auto at = [&](int i, int j) { return level[static_cast<std::size_t>(g.node_index(i, j))]; };
    return (1.0 - wi) * ((1.0 - wj) * at(i0, j0) + wj * at(i0, j1)) +
           wi * ((1.0 - wj) * at(i1, j0) + wj * at(i1, j1));
}

} // namespace

double EffectiveSolution::value_at(double t, const SlowPoint& x) const {
    if (times.empty()) throw ConfigError("effective solution is empty");
    t = std::clamp(t, times.front(), times.back());
    const auto it = std::lower_bound(times.begin(), times.end(), t);
    std::size_t hi = static_cast<std::size_t>(it - times.begin());
    if (hi == 0) return interp_nodes(xgrid, V[0], x);
    if (hi >= times.size()) return interp_nodes(xgrid, V.back(), x);
    const std::size_t lo = hi - 1;
    const double w = (t - times[lo]) / (times[hi] - times[lo]);
    return (1.0 - w) * interp_nodes(xgrid, V[lo], x) + w * interp_nodes(xgrid, V[hi], x);
}

int EffectiveSolution::control_at(double t, const SlowPoint& x) const {
    if (argmin.empty()) return 0;
    t = std::clamp(t, times.front(), times.back());
    std::size_t best = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < times.size(); ++l) {
        const double d = std::abs(times[l] - t);
        if (d < dist) {
            dist = d;
            best = l;
        }
    }
    const int n = xgrid.n();
    const int i = std::clamp(static_cast<int>(std::llround(x.x[0] / xgrid.dx)) + xgrid.half, 0, n - 1);
    if (xgrid.n_slow == 1) return argmin[best][static_cast<std::size_t>(i)];
    const int j = std::clamp(static_cast<int>(std::llround(x.x[1] / xgrid.dx)) + xgrid.half, 0, n - 1);
    return argmin[best][static_cast<std::size_t>(xgrid.node_index(i, j))];
}

} // namespace heishom
