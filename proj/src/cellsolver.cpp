#include "heishom/cellsolver.hpp"

#include <algorithm>
#include <cmath>

#include "heishom/errors.hpp"

namespace heishom {

namespace {

inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

} // namespace

DiscreteGenerator::DiscreteGenerator(const Grid3& g, const ModelParams& p)
    : grid_(g), params_(p), inv_h2_(1.0 / (g.h * g.h)) {
    const int n = g.n();
    auto make_interp = [&](double offset_nodes) {
        Interp ip;
        ip.dk = static_cast<int>(std::llround(offset_nodes));
        const double s = offset_nodes - ip.dk;
        ip.w[0] = 0.5 * s * (s - 1.0);
        ip.w[1] = 1.0 - s * s;
        ip.w[2] = 0.5 * s * (s + 1.0);
        return ip;
    };
    v1_plus_.resize(n);
    v1_minus_.resize(n);
    v2_plus_.resize(n);
    v2_minus_.resize(n);
    for (int j = 0; j < n; ++j) {
        const double t = 2.0 * g.coord(j); // y3 offset of +h v1, in node units
        v1_plus_[j] = make_interp(t);
        v1_minus_[j] = make_interp(-t);
    }
    for (int i = 0; i < n; ++i) {
        const double t = -2.0 * g.coord(i); // y3 offset of +h v2, in node units
        v2_plus_[i] = make_interp(t);
        v2_minus_[i] = make_interp(-t);
    }
    const double ks[3] = {p.k1, p.k2, p.k3};
    for (int axis = 0; axis < 3; ++axis) {
        drift_coef_[axis].resize(n);
        drift_dir_[axis].resize(n);
        for (int idx = 0; idx < n; ++idx) {
            const double b = -ks[axis] * g.coord(idx);
            drift_coef_[axis][idx] = std::abs(b) / g.h;
            drift_dir_[axis][idx] = b > 0.0 ? 1 : (b < 0.0 ? -1 : 0);
        }
    }
}

void DiscreteGenerator::enforce_closure(GridFunction& u) const {
    const int n = grid_.n();
    const int lo = 1, hi = n - 2;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i >= lo && i <= hi && j >= lo && j <= hi && k >= lo && k <= hi) continue;
                u.at(i, j, k) = u.at(clampi(i, lo, hi), clampi(j, lo, hi), clampi(k, lo, hi));
            }
}

// The stencil pieces are assembled inline in the passes below; the helper
// computes clamped interpolation for the boundary segments. Interp weights
// are k-independent, so the fast inner loops touch contiguous memory only.
namespace {

inline double interp_clamped(const double* row, int k, int dk, const double* w, int lo, int hi) {
    const int kc = k + dk;
    return w[0] * row[clampi(kc - 1, lo, hi)] + w[1] * row[clampi(kc, lo, hi)] +
           w[2] * row[clampi(kc + 1, lo, hi)];
}

inline double interp_fast(const double* row, int k, int dk, const double* w) {
    const int kc = k + dk;
    return w[0] * row[kc - 1] + w[1] * row[kc] + w[2] * row[kc + 1];
}

} // namespace

template <bool Forward>
void DiscreteGenerator::sweep(double delta, const GridFunction& F, GridFunction& u,
                              double omega) const {
    const int n = grid_.n();
    const int lo = 1, hi = n - 2;
    const std::int64_t si = static_cast<std::int64_t>(n) * n, sj = n;
    double* U = u.values.data();
    const double* Fv = F.values.data();
    const double ih2 = inv_h2_;
    const double* dc2 = drift_coef_[2].data();
    const int* dd2 = drift_dir_[2].data();

    for (int step_i = 0; step_i <= hi - lo; ++step_i) {
        const int i = Forward ? lo + step_i : hi - step_i;
        const Interp& a2p = v2_plus_[i];
        const Interp& a2m = v2_minus_[i];
        const double c_di = drift_coef_[0][i];
        const int ddi = drift_dir_[0][i];
        for (int step_j = 0; step_j <= hi - lo; ++step_j) {
            const int j = Forward ? lo + step_j : hi - step_j;
            const Interp& a1p = v1_plus_[j];
            const Interp& a1m = v1_minus_[j];
            const double c_dj = drift_coef_[1][j];
            const int ddj = drift_dir_[1][j];

            const double* r_v1p = U + (std::min(i + 1, hi)) * si + j * sj;
            const double* r_v1m = U + (std::max(i - 1, lo)) * si + j * sj;
            const double* r_v2p = U + i * si + (std::min(j + 1, hi)) * sj;
            const double* r_v2m = U + i * si + (std::max(j - 1, lo)) * sj;
            const double* r_di = U + (i + ddi) * si + j * sj;
            const double* r_dj = U + i * si + (j + ddj) * sj;
            double* r_c = U + i * si + j * sj;
            const double* r_F = Fv + i * si + j * sj;

            const double base_diag = 4.0 * ih2 + c_di + c_dj;

            int klo_fast = lo + 1, khi_fast = hi - 1;
            for (const Interp* a : {&a1p, &a1m, &a2p, &a2m}) {
                klo_fast = std::max(klo_fast, lo + 1 - a->dk);
                khi_fast = std::min(khi_fast, hi - 1 - a->dk);
            }
            klo_fast = clampi(klo_fast, lo, hi + 1);
            khi_fast = clampi(khi_fast, lo - 1, hi);

            auto update_slow = [&](int k) {
                double S = ih2 * (interp_clamped(r_v1p, k, a1p.dk, a1p.w, lo, hi) +
                                  interp_clamped(r_v1m, k, a1m.dk, a1m.w, lo, hi) +
                                  interp_clamped(r_v2p, k, a2p.dk, a2p.w, lo, hi) +
                                  interp_clamped(r_v2m, k, a2m.dk, a2m.w, lo, hi));
                S += c_di * r_di[k] + c_dj * r_dj[k];
                const int kn = clampi(k + dd2[k], lo, hi);
                S += dc2[k] * r_c[kn];
                const double diag = delta + base_diag + dc2[k];
                const double gs = (r_F[k] + S) / diag;
                r_c[k] += omega * (gs - r_c[k]);
            };

            if (Forward) {
                for (int k = lo; k < std::min(klo_fast, hi + 1); ++k) update_slow(k);
                for (int k = klo_fast; k <= khi_fast; ++k) {
                    double S = ih2 * (interp_fast(r_v1p, k, a1p.dk, a1p.w) +
                                      interp_fast(r_v1m, k, a1m.dk, a1m.w) +
                                      interp_fast(r_v2p, k, a2p.dk, a2p.w) +
                                      interp_fast(r_v2m, k, a2m.dk, a2m.w));
                    S += c_di * r_di[k] + c_dj * r_dj[k] + dc2[k] * r_c[k + dd2[k]];
                    const double diag = delta + base_diag + dc2[k];
                    const double gs = (r_F[k] + S) / diag;
                    r_c[k] += omega * (gs - r_c[k]);
                }
                for (int k = std::max(khi_fast + 1, lo); k <= hi; ++k) update_slow(k);
            } else {
                for (int k = hi; k > std::max(khi_fast, lo - 1); --k) update_slow(k);
                for (int k = khi_fast; k >= klo_fast; --k) {
                    double S = ih2 * (interp_fast(r_v1p, k, a1p.dk, a1p.w) +
                                      interp_fast(r_v1m, k, a1m.dk, a1m.w) +
                                      interp_fast(r_v2p, k, a2p.dk, a2p.w) +
                                      interp_fast(r_v2m, k, a2m.dk, a2m.w));
                    S += c_di * r_di[k] + c_dj * r_dj[k] + dc2[k] * r_c[k + dd2[k]];
                    const double diag = delta + base_diag + dc2[k];
                    const double gs = (r_F[k] + S) / diag;
                    r_c[k] += omega * (gs - r_c[k]);
                }
                for (int k = std::min(klo_fast - 1, hi); k >= lo; --k) update_slow(k);
            }
        }
    }
}

GridFunction DiscreteGenerator::apply(const GridFunction& u) const {
    const int n = grid_.n();
    const int lo = 1, hi = n - 2;
    GridFunction out(grid_, 0.0);
    const std::int64_t si = static_cast<std::int64_t>(n) * n, sj = n;
    const double* U = u.values.data();
    const double ih2 = inv_h2_;
    const double* dc2 = drift_coef_[2].data();
    const int* dd2 = drift_dir_[2].data();
    for (int i = lo; i <= hi; ++i) {
        const Interp& a2p = v2_plus_[i];
        const Interp& a2m = v2_minus_[i];
        const double c_di = drift_coef_[0][i];
        const int ddi = drift_dir_[0][i];
        for (int j = lo; j <= hi; ++j) {
            const Interp& a1p = v1_plus_[j];
            const Interp& a1m = v1_minus_[j];
            const double c_dj = drift_coef_[1][j];
            const int ddj = drift_dir_[1][j];
            const double* r_v1p = U + (std::min(i + 1, hi)) * si + j * sj;
            const double* r_v1m = U + (std::max(i - 1, lo)) * si + j * sj;
            const double* r_v2p = U + i * si + (std::min(j + 1, hi)) * sj;
            const double* r_v2m = U + i * si + (std::max(j - 1, lo)) * sj;
            const double* r_di = U + (i + ddi) * si + j * sj;
            const double* r_dj = U + i * si + (j + ddj) * sj;
            const double* r_c = U + i * si + j * sj;
            double* r_out = out.values.data() + i * si + j * sj;
            const double base_diag = 4.0 * ih2 + c_di + c_dj;
            for (int k = lo; k <= hi; ++k) {
                double S = ih2 * (interp_clamped(r_v1p, k, a1p.dk, a1p.w, lo, hi) +
                                  interp_clamped(r_v1m, k, a1m.dk, a1m.w, lo, hi) +
                                  interp_clamped(r_v2p, k, a2p.dk, a2p.w, lo, hi) +
                                  interp_clamped(r_v2m, k, a2m.dk, a2m.w, lo, hi));
                S += c_di * r_di[k] + c_dj * r_dj[k];
                S += dc2[k] * r_c[clampi(k + dd2[k], lo, hi)];
                r_out[k] = S - (base_diag + dc2[k]) * r_c[k];
            }
        }
    }
    enforce_closure(out);
    return out;
}

double DiscreteGenerator::residual_max(double delta, const GridFunction& u,
                                       const GridFunction& F) const {
    const int n = grid_.n();
    const int lo = 1, hi = n - 2;
    const std::int64_t si = static_cast<std::int64_t>(n) * n, sj = n;
    const double* U = u.values.data();
    const double* Fv = F.values.data();
    const double ih2 = inv_h2_;
    const double* dc2 = drift_coef_[2].data();
    const int* dd2 = drift_dir_[2].data();
    double worst = 0.0;
    for (int i = lo; i <= hi; ++i) {
        const Interp& a2p = v2_plus_[i];
        const Interp& a2m = v2_minus_[i];
        const double c_di = drift_coef_[0][i];
        const int ddi = drift_dir_[0][i];
        for (int j = lo; j <= hi; ++j) {
            const Interp& a1p = v1_plus_[j];
            const Interp& a1m = v1_minus_[j];
            const double c_dj = drift_coef_[1][j];
            const int ddj = drift_dir_[1][j];
            const double* r_v1p = U + (std::min(i + 1, hi)) * si + j * sj;
            const double* r_v1m = U + (std::max(i - 1, lo)) * si + j * sj;
            const double* r_v2p = U + i * si + (std::min(j + 1, hi)) * sj;
            const double* r_v2m = U + i * si + (std::max(j - 1, lo)) * sj;
            const double* r_di = U + (i + ddi) * si + j * sj;
            const double* r_dj = U + i * si + (j + ddj) * sj;
            const double* r_c = U + i * si + j * sj;
            const double* r_F = Fv + i * si + j * sj;
            const double base_diag = 4.0 * ih2 + c_di + c_dj;
            for (int k = lo; k <= hi; ++k) {
                double S = ih2 * (interp_clamped(r_v1p, k, a1p.dk, a1p.w, lo, hi) +
                                  interp_clamped(r_v1m, k, a1m.dk, a1m.w, lo, hi) +
                                  interp_clamped(r_v2p, k, a2p.dk, a2p.w, lo, hi) +
                                  interp_clamped(r_v2m, k, a2m.dk, a2m.w, lo, hi));
                S += c_di * r_di[k] + c_dj * r_dj[k];
                S += dc2[k] * r_c[clampi(k + dd2[k], lo, hi)];
                const double r = (delta + base_diag + dc2[k]) * r_c[k] - S - r_F[k];
                worst = std::max(worst, std::abs(r));
            }
        }
    }
    return worst;
}

GridFunction DiscreteGenerator::solve(double delta, const GridFunction& F,
                                      const SolveOptions& opt, SolveStats* stats) const {
    if (!(delta > 0.0 && delta <= 1.0)) throw ConfigError("solve_cell: delta must lie in (0,1]");
    if (!(opt.tol > 0.0)) throw ConfigError("solve_cell: tol must be positive");
    if (!(F.grid == grid_)) throw ConfigError("solve_cell: F lives on a different grid");

    GridFunction u = opt.warm_start ? *opt.warm_start : GridFunction(grid_, 0.0);
    if (opt.warm_start && !(u.grid == grid_))
        throw ConfigError("solve_cell: warm start grid mismatch");

    const double target = opt.tol * (1.0 + F.max_abs());
    std::int64_t sweeps = 0;
    double res = residual_max(delta, u, F);
    const int check_every = 8; // sweeps between residual evaluations
    while (res > target) {
        if (sweeps >= opt.max_sweeps)
            throw NoConvergenceError("cell solve hit the sweep cap", res);
        for (int s = 0; s < check_every && sweeps < opt.max_sweeps; ++s) {
            if (sweeps % 2 == 0)
                sweep<true>(delta, F, u, opt.damping);
            else
                sweep<false>(delta, F, u, opt.damping);
            ++sweeps;
        }
        res = residual_max(delta, u, F);
    }
    enforce_closure(u);
    if (stats) {
        stats->sweeps = sweeps;
        stats->residual = res;
    }
    return u;
}

GridFunction solve_cell(double delta, const GridFunction& F, const ModelParams& p,
                        const SolveOptions& opt, SolveStats* stats) {
    DiscreteGenerator gen(F.grid, p);
    return gen.solve(delta, F, opt, stats);
}

LadderResult ergodic_constant_ladder(const GridFunction& F, const ModelParams& p,
                                     const std::vector<double>& deltas,
                                     const SolveOptions& opt) {
    if (deltas.empty()) throw ConfigError("ladder: no delta values");
    double prev = 2.0;
    for (double d : deltas) {
        if (!(d > 0.0 && d <= 1.0 && d < prev))
            throw ConfigError("ladder: deltas must be strictly decreasing in (0,1]");
        prev = d;
    }

    DiscreteGenerator gen(F.grid, p);
    const double half_box = F.grid.radius() / 2.0;
    LadderResult result;
    GridFunction u;
    double prev_delta = 0.0, prev_lambda = 0.0;
    bool have_prev = false;
    for (double delta : deltas) {
        SolveOptions o = opt;
        GridFunction init;
        if (have_prev) {
            // u_delta ~ lambda/delta + w, so shift the previous solution
            init = u;
            const double shift = prev_lambda * (1.0 / delta - 1.0 / prev_delta);
            for (double& v : init.values) v += shift;
            o.warm_start = &init;
        }
        SolveStats st;
        u = gen.solve(delta, F, o, &st);

        LadderEntry e;
        e.delta = delta;
        e.lambda = delta * u.at_origin();
        const int c = F.grid.center();
        const int d = static_cast<int>(std::floor(half_box / F.grid.h));
        double spread = 0.0;
        for (int i = c - d; i <= c + d; ++i)
            for (int j = c - d; j <= c + d; ++j)
                for (int k = c - d; k <= c + d; ++k)
                    spread = std::max(spread, std::abs(delta * u.at(i, j, k) - e.lambda));
        e.spread = spread;
        e.lipschitz = lipschitz_diagnostic(u);
        e.growth_C = growth_diagnostic(u);
        e.sup_u = u.max_abs();
        e.sweeps = st.sweeps;
        result.entries.push_back(e);

        prev_delta = delta;
        prev_lambda = e.lambda;
        have_prev = true;
    }
    result.u_last = std::move(u);
    return result;
}

GridFunction corrector(const GridFunction& F, const ModelParams& p, double delta_min,
                       const SolveOptions& opt) {
    if (!(delta_min > 0.0 && delta_min <= 0.1))
        throw ConfigError("corrector: delta_min must lie in (0, 0.1]");
    GridFunction u = solve_cell(delta_min, F, p, opt);
    const double u0 = u.at_origin();
    for (double& v : u.values) v -= u0;
    return u;
}

double lipschitz_diagnostic(const GridFunction& u) {
    static constexpr int dirs[13][3] = {{1, 0, 0},  {0, 1, 0},  {0, 0, 1},  {1, 1, 0},
                                        {1, -1, 0}, {1, 0, 1},  {1, 0, -1}, {0, 1, 1},
                                        {0, 1, -1}, {1, 1, 1},  {1, 1, -1}, {1, -1, 1},
                                        {1, -1, -1}};
    const Grid3& g = u.grid;
    const int c = g.center();
    const int d = static_cast<int>(std::floor(g.radius() / 2.0 / g.h));
    double worst = 0.0;
    for (const auto& dir : dirs) {
        const double step = g.h * std::sqrt(static_cast<double>(dir[0] * dir[0] + dir[1] * dir[1] +
                                                                dir[2] * dir[2]));
        for (int i = c - d; i <= c + d; ++i)
            for (int j = c - d; j <= c + d; ++j)
                for (int k = c - d; k <= c + d; ++k) {
                    const int i2 = i + dir[0], j2 = j + dir[1], k2 = k + dir[2];
                    if (i2 > c + d || j2 < c - d || j2 > c + d || k2 < c - d || k2 > c + d)
                        continue;
                    const double q = std::abs(u.at(i2, j2, k2) - u.at(i, j, k)) / step;
                    worst = std::max(worst, q);
                }
    }
    return worst;
}

double growth_diagnostic(const GridFunction& u) {
    const Grid3& g = u.grid;
    const int c = g.center();
    const int d = static_cast<int>(std::floor(g.radius() / 2.0 / g.h));
    const double u0 = u.at_origin();
    double worst = 0.0;
    for (int i = c - d; i <= c + d; ++i)
        for (int j = c - d; j <= c + d; ++j)
            for (int k = c - d; k <= c + d; ++k) {
                const double y1 = g.coord(i), y2 = g.coord(j), y3 = g.coord(k);
                const double s = y1 * y1 + y2 * y2;
                const double env = 1.0 + std::log(s * s + y3 * y3 + 1.0);
                worst = std::max(worst, std::abs(u.at(i, j, k) - u0) / env);
            }
    return worst;
}

} // namespace heishom
