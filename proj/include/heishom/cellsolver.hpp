#pragma once

#include <cstdint>
#include <vector>

#include "heishom/grid.hpp"
#include "heishom/model.hpp"

namespace heishom {

struct SolveOptions {
    double tol = 1e-8;           // residual target: |r|_inf <= tol * (1 + |F|_inf)
    double damping = 1.0;        // 0.5 fallback for stubborn cases
    std::int64_t max_sweeps = 1'000'000;
    const GridFunction* warm_start = nullptr;
};

struct SolveStats {
    std::int64_t sweeps = 0;
    double residual = 0.0;
};

/// Finite-difference realization of L on a truncated grid:
/// second differences along the sigma columns v1(y) = (1,0,2y2),
/// v2(y) = (0,1,-2y1) with quadratic interpolation in y3 for the off-lattice
/// endpoints, first-order upwind drift, and a copy-from-inward-neighbor
/// closure on the box faces (references outside the interior clamp to it).
class DiscreteGenerator {
public:
    DiscreteGenerator(const Grid3& g, const ModelParams& p);

    const Grid3& grid() const { return grid_; }

    /// L_h u at interior nodes; boundary nodes are filled by the closure.
    GridFunction apply(const GridFunction& u) const;

    /// max over interior nodes of |delta u - L_h u - F|.
    double residual_max(double delta, const GridFunction& u, const GridFunction& F) const;

    /// Damped Gauss-Seidel (alternating forward/backward lexicographic
    /// sweeps) for delta u - L_h u = F. Throws NoConvergenceError at the
    /// sweep cap.
    GridFunction solve(double delta, const GridFunction& F, const SolveOptions& opt,
                       SolveStats* stats = nullptr) const;

private:
    struct Interp {
        int dk;          // integer part of the y3 offset in nodes
        double w[3];     // quadratic weights at dk-1, dk, dk+1
    };

    Grid3 grid_;
    ModelParams params_;
    double inv_h2_;
    std::vector<Interp> v1_plus_, v1_minus_; // per j
    std::vector<Interp> v2_plus_, v2_minus_; // per i
    std::vector<double> drift_coef_[3];      // |b_axis| / h per axis index
    std::vector<int> drift_dir_[3];          // +1 / -1 / 0 upwind neighbor offset

    template <bool Forward>
    void sweep(double delta, const GridFunction& F, GridFunction& u, double omega) const;
    void enforce_closure(GridFunction& u) const;
};

GridFunction solve_cell(double delta, const GridFunction& F, const ModelParams& p,
                        const SolveOptions& opt = {}, SolveStats* stats = nullptr);

struct LadderEntry {
    double delta = 0.0;
    double lambda = 0.0;     // delta * u_delta(0)
    double spread = 0.0;     // max over |y|_inf <= R/2 of |delta u_delta - delta u_delta(0)|
    double lipschitz = 0.0;
    double growth_C = 0.0;
    double sup_u = 0.0;
    std::int64_t sweeps = 0;
};

struct LadderResult {
    std::vector<LadderEntry> entries;
    GridFunction u_last; // solution at the smallest delta
};

/// Solves the approximated cell problem along a strictly decreasing delta
/// ladder, warm-starting each solve from the previous one.
LadderResult ergodic_constant_ladder(const GridFunction& F, const ModelParams& p,
                                     const std::vector<double>& deltas,
                                     const SolveOptions& opt = {});

/// w = u_delta - u_delta(0) at the smallest ladder delta.
GridFunction corrector(const GridFunction& F, const ModelParams& p, double delta_min,
                       const SolveOptions& opt = {});

/// Max difference quotient |u(y') - u(y)| / |y' - y| over axis and diagonal
/// neighbor pairs with both endpoints in |y|_inf <= R/2.
double lipschitz_diagnostic(const GridFunction& u);

/// Smallest C with |u(y) - u(0)| <= C [1 + log((y1^2+y2^2)^2 + y3^2 + 1)]
/// over |y|_inf <= R/2.
double growth_diagnostic(const GridFunction& u);

} // namespace heishom
