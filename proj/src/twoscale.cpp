#include "heishom/twoscale.hpp"

#include <cmath>
#include <exception>
#include <thread>

#include "heishom/errors.hpp"
#include "heishom/rng.hpp"
#include "heishom/sde.hpp"

namespace heishom {

double simulate_coupled(const ControlModel& m, const ModelParams& p, const CoupledState& start,
                        double eps, const Policy& pol, double dt, std::uint64_t seed,
                        std::uint64_t replica) {
    if (!(eps > 0.0)) throw ConfigError("simulate_coupled: eps must be positive");
    if (!(dt > 0.0) || dt > eps * 1e-2 + 1e-15)
        throw InvalidTimestepError("simulate_coupled: need dt <= eps/100");
    const double horizon = p.T - start.t;
    if (horizon <= 0.0) return m.g(start.x, start.y);

    const std::int64_t steps = std::max<std::int64_t>(1, static_cast<std::int64_t>(
                                                             std::ceil(horizon / dt - 1e-9)));
    const double dte = horizon / static_cast<double>(steps);
    const double decay = std::exp(-p.a * dte);
    const double w_slow = std::sqrt(2.0 * dte) * m.sigma_scale;

    SlowPoint x = start.x;
    FastState y = start.y;
    double t = start.t;
    double disc = 1.0;
    double payoff = 0.0;
    for (std::int64_t s = 0; s < steps; ++s) {
        const auto q = normal_quad(seed, replica, static_cast<std::uint64_t>(s));
        const int u = pol.control_at(t, x);
        payoff += disc * m.f(x, y, u) * dte;

        const SlowVec phi = m.phi_tilde(x, y, u);
        for (int d = 0; d < x.n; ++d) x.x[d] += phi.v[d] * dte + w_slow * q[2 + d];
        y = em_step(y, dte / eps, {q[0], q[1]}, p);

        double probe = y.y1 + y.y2 + y.y3;
        for (int d = 0; d < x.n; ++d) probe += x.x[d];
        if (!std::isfinite(probe))
            throw NumericalBlowupError("coupled simulation diverged; reduce dt");

        t += dte;
        disc *= decay;
    }
    return payoff + disc * m.g(x, y);
}

McValue mc_value(const ControlModel& m, const ModelParams& p, const CoupledState& start,
                 double eps, const Policy& pol, double dt, std::int64_t n_samples,
                 std::uint64_t seed, int n_workers) {
    if (n_samples < 100) throw ConfigError("mc_value: n_samples >= 100 required");
    std::vector<double> samples(static_cast<std::size_t>(n_samples));
    int workers = n_workers > 0 ? n_workers : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers, static_cast<int>(n_samples)));
    std::vector<std::exception_ptr> errs(static_cast<std::size_t>(workers));
    auto body = [&](int w) {
        try {
            for (std::int64_t r = w; r < n_samples; r += workers)
                samples[static_cast<std::size_t>(r)] =
                    simulate_coupled(m, p, start, eps, pol, dt, seed, static_cast<std::uint64_t>(r));
        } catch (...) {
            errs[static_cast<std::size_t>(w)] = std::current_exception();
        }
    };
    if (workers == 1) {
        body(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(body, w);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errs)
        if (e) std::rethrow_exception(e);

    McValue out;
    out.n_samples = n_samples;
    double sum = 0.0;
    for (double v : samples) sum += v;
    out.estimate = sum / static_cast<double>(n_samples);
    double ss = 0.0;
    for (double v : samples) ss += (v - out.estimate) * (v - out.estimate);
    out.std_error = std::sqrt(ss / (static_cast<double>(n_samples) - 1.0) /
                              static_cast<double>(n_samples));
    return out;
}

double ladder_dt(double eps) { return std::min(1e-3, eps / 100.0); }

std::vector<EpsLadderRow> epsilon_ladder_experiment(const ControlModel& m, const ModelParams& p,
                                                    const CoupledState& start,
                                                    const EffectiveSolution& effective,
                                                    std::int64_t n_samples, std::uint64_t seed,
                                                    int n_workers) {
    const bool single = m.n_controls() == 1;
    const Policy pol = single ? Policy::fixed(0) : Policy::feedback(&effective);
    const double v_eff = effective.value_at(start.t, start.x);
    std::vector<EpsLadderRow> rows;
    rows.reserve(p.epsilon_ladder.size());
    for (double eps : p.epsilon_ladder) {
        EpsLadderRow row;
        row.eps = eps;
        row.dt = ladder_dt(eps);
        row.n_samples = n_samples;
        const McValue v = mc_value(m, p, start, eps, pol, row.dt, n_samples, seed, n_workers);
        row.estimate = v.estimate;
        row.std_error = v.std_error;
        row.gap = single ? std::abs(v.estimate - v_eff) : v_eff - v.estimate;
        rows.push_back(row);
    }
    return rows;
}

} // namespace heishom
