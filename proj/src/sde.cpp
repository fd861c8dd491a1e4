#include "heishom/sde.hpp"

#include <cmath>
#include <exception>
#include <thread>

#include "heishom/errors.hpp"
#include "heishom/rng.hpp"

namespace heishom {

void TrajectoryConfig::validate() const {
    if (!(dt > 0.0)) throw ConfigError("trajectory: dt must be positive");
    if (burn_in_steps < 0 || burn_in_steps >= total_steps)
        throw ConfigError("trajectory: need 0 <= burn_in_steps < total_steps");
    if (n_chains < 1) throw ConfigError("trajectory: n_chains >= 1 required");
    if (total_steps - burn_in_steps < 20 * n_chains)
        throw ConfigError("trajectory: too few samples for 20 batches per chain");
}

FastState em_step(const FastState& y, double dt, const std::array<double, 2>& xi,
                  const ModelParams& p) {
    const double w = std::sqrt(2.0 * dt);
    FastState out;
    out.y1 = y.y1 - p.k1 * y.y1 * dt + w * xi[0];
    out.y2 = y.y2 - p.k2 * y.y2 * dt + w * xi[1];
    out.y3 = y.y3 - p.k3 * y.y3 * dt + w * (2.0 * y.y2 * xi[0] - 2.0 * y.y1 * xi[1]);
    return out;
}

Functional named_functional(const std::string& name) {
    if (name == "one") return {name, [](const FastState&) { return 1.0; }, false};
    if (name == "y1") return {name, [](const FastState& y) { return y.y1; }, false};
    if (name == "y2") return {name, [](const FastState& y) { return y.y2; }, false};
    if (name == "y1^4")
        return {name, [](const FastState& y) { return std::pow(y.y1, 4); }, true};
    if (name == "y2^4")
        return {name, [](const FastState& y) { return std::pow(y.y2, 4); }, true};
    if (name == "y3^2") return {name, [](const FastState& y) { return y.y3 * y.y3; }, true};
    if (name == "cos_y3") return {name, [](const FastState& y) { return std::cos(y.y3); }, false};
    if (name == "cos_sum")
        return {name,
                [](const FastState& y) {
                    return std::cos(y.y1) + std::cos(y.y2) + std::cos(y.y3);
                },
                false};
    if (name == "u1_clipped")
        return {name,
                [](const FastState& y) {
                    return std::pow(y.y1, 4) + std::pow(y.y2, 4) + y.y3 * y.y3;
                },
                true};
    throw ConfigError("unknown functional: " + name);
}

namespace {

constexpr int kBatchesPerChain = 20;
constexpr double kOutlierRadius = 25.0;

struct ChainAccumulators {
    std::vector<BatchAccumulator> full;
    std::vector<BatchAccumulator> half;
    std::int64_t outliers = 0;
};

int resolve_workers(int requested, int n_units) {
    int w = requested > 0 ? requested
                          : static_cast<int>(std::thread::hardware_concurrency());
    if (w < 1) w = 1;
    return std::min(w, n_units);
}

void run_chain(int chain, const std::vector<Functional>& fs, const TrajectoryConfig& cfg,
               const ModelParams& p, bool with_half, ChainAccumulators& out) {
    const std::int64_t used = cfg.total_steps - cfg.burn_in_steps;
    out.full.clear();
    out.half.clear();
    for (std::size_t i = 0; i < fs.size(); ++i) {
        out.full.emplace_back(kBatchesPerChain, used);
        if (with_half) out.half.emplace_back(kBatchesPerChain, used / 2);
    }

    const std::uint64_t seed = cfg.seed ? cfg.seed : p.master_seed;
    FastState y{};
    for (std::int64_t s = 0; s < cfg.total_steps; ++s) {
        const auto q = normal_quad(seed, static_cast<std::uint64_t>(chain),
                                   static_cast<std::uint64_t>(s >> 1));
        const int off = static_cast<int>(s & 1) * 2;
        y = em_step(y, cfg.dt, {q[off], q[off + 1]}, p);
        if (!std::isfinite(y.y1 + y.y2 + y.y3))
            throw NumericalBlowupError("fast chain diverged; reduce dt");
        if (s < cfg.burn_in_steps) continue;

        if (y.y1 * y.y1 + y.y2 * y.y2 + y.y3 * y.y3 > kOutlierRadius * kOutlierRadius)
            ++out.outliers;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            double v = fs[i].f(y);
            if (!std::isfinite(v))
                throw NumericalBlowupError("integrand non-finite along chain; reduce dt");
            if (fs[i].clip) {
                if (v > kClipBound) {
                    v = kClipBound;
                    out.full[i].note_clipped();
                } else if (v < -kClipBound) {
                    v = -kClipBound;
                    out.full[i].note_clipped();
                }
            }
            out.full[i].add(v);
            if (with_half) out.half[i].add(v);
        }
    }
}

std::vector<ChainAccumulators> run_all_chains(const std::vector<Functional>& fs,
                                              const TrajectoryConfig& cfg, const ModelParams& p,
                                              bool with_half) {
    cfg.validate();
    std::vector<ChainAccumulators> per_chain(static_cast<std::size_t>(cfg.n_chains));
    const int workers = resolve_workers(cfg.n_workers, cfg.n_chains);
    if (workers == 1) {
        for (int c = 0; c < cfg.n_chains; ++c) run_chain(c, fs, cfg, p, with_half, per_chain[c]);
        return per_chain;
    }
    std::vector<std::exception_ptr> errs(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (int c = w; c < cfg.n_chains; c += workers)
                    run_chain(c, fs, cfg, p, with_half, per_chain[c]);
            } catch (...) {
                errs[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errs)
        if (e) std::rethrow_exception(e);
    return per_chain;
}

InvariantEstimate combine_functional(const std::vector<ChainAccumulators>& chains,
                                     std::size_t idx, bool half) {
    std::vector<const BatchAccumulator*> ptrs;
    ptrs.reserve(chains.size());
    for (const auto& c : chains) ptrs.push_back(half ? &c.half[idx] : &c.full[idx]);
    return combine_batches(ptrs);
}

} // namespace

std::vector<InvariantEstimate> estimate_invariant_integrals(const std::vector<Functional>& fs,
                                                            const TrajectoryConfig& cfg,
                                                            const ModelParams& p) {
    const auto chains = run_all_chains(fs, cfg, p, false);
    std::vector<InvariantEstimate> out;
    out.reserve(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) out.push_back(combine_functional(chains, i, false));
    return out;
}

InvariantEstimate estimate_invariant_integral(const Functional& f, const TrajectoryConfig& cfg,
                                              const ModelParams& p) {
    return estimate_invariant_integrals({f}, cfg, p).front();
}

bool MomentReport::all_stable() const {
    for (const auto& r : rows)
        if (!r.window_stable) return false;
    return true;
}

MomentReport moment_diagnostics(const TrajectoryConfig& cfg, const ModelParams& p) {
    const std::vector<std::string> names = {"y1", "y2", "y1^4", "y2^4", "y3^2"};
    std::vector<Functional> fs;
    fs.reserve(names.size());
    for (const auto& n : names) fs.push_back(named_functional(n));

    const auto chains = run_all_chains(fs, cfg, p, true);
    MomentReport report;
    std::int64_t outliers = 0, used = 0;
    for (const auto& c : chains) {
        outliers += c.outliers;
        used += c.full.front().count();
    }
    report.outlier_fraction = static_cast<double>(outliers) / static_cast<double>(used);
    for (std::size_t i = 0; i < fs.size(); ++i) {
        MomentRow row;
        row.name = names[i];
        row.full = combine_functional(chains, i, false);
        row.first_half = combine_functional(chains, i, true);
        row.window_stable = row.full.agrees_with(row.first_half, 4.0);
        report.rows.push_back(std::move(row));
    }
    return report;
}

InvariantEstimate long_time_datum_average(const std::function<double(const FastState&)>& g_at_x,
                                          const FastState& y0, double t_final, double dt,
                                          int n_replicas, std::uint64_t seed,
                                          const ModelParams& p, int n_workers) {
    if (!(dt > 0.0) || !(t_final > 0.0) || n_replicas < 2)
        throw ConfigError("long-time average: bad configuration");
    const std::int64_t steps = static_cast<std::int64_t>(std::ceil(t_final / dt));
    std::vector<double> samples(static_cast<std::size_t>(n_replicas));
    const int workers = resolve_workers(n_workers, n_replicas);
    std::vector<std::exception_ptr> errs(static_cast<std::size_t>(workers));
    auto body = [&](int w) {
        try {
            for (int r = w; r < n_replicas; r += workers) {
                FastState y = y0;
                for (std::int64_t s = 0; s < steps; ++s) {
                    const auto q = normal_quad(seed, static_cast<std::uint64_t>(r),
                                               static_cast<std::uint64_t>(s >> 1));
                    const int off = static_cast<int>(s & 1) * 2;
                    y = em_step(y, dt, {q[off], q[off + 1]}, p);
                    if (!std::isfinite(y.y1 + y.y2 + y.y3))
                        throw NumericalBlowupError("fast chain diverged; reduce dt");
                }
                samples[static_cast<std::size_t>(r)] = g_at_x(y);
            }
        } catch (...) {
            errs[static_cast<std::size_t>(w)] = std::current_exception();
        }
    };
    if (workers == 1) {
        body(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(body, w);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errs)
        if (e) std::rethrow_exception(e);

    InvariantEstimate est;
    est.n_used = n_replicas;
    double sum = 0.0;
    for (double v : samples) sum += v;
    est.mean = sum / n_replicas;
    double ss = 0.0;
    for (double v : samples) ss += (v - est.mean) * (v - est.mean);
    est.std_error = std::sqrt(ss / (n_replicas - 1.0) / n_replicas);
    est.effective_samples = n_replicas;
    return est;
}

} // namespace heishom
