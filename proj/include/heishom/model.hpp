#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace heishom {

/// Point in the slow variable. Only the first `n` components are meaningful
/// (n is 1 or 2 throughout).
struct SlowPoint {
    int n = 1;
    std::array<double, 2> x{0.0, 0.0};

    double norm() const;
};

/// Vector in the slow space (drift values, gradients).
struct SlowVec {
    int n = 1;
    std::array<double, 2> v{0.0, 0.0};
};

/// Symmetric n x n matrix, n in {1,2}. Stored as (xx, xy, yy).
struct SymMat {
    int n = 1;
    double xx = 0.0, xy = 0.0, yy = 0.0;

    double trace() const { return n == 1 ? xx : xx + yy; }
    double norm() const; // Frobenius
};

struct FastState {
    double y1 = 0.0, y2 = 0.0, y3 = 0.0;
};

/// Drift rates, discount, horizon and the experiment ladders.
struct ModelParams {
    double k1 = 5.0, k2 = 5.0, k3 = 1.0;
    double a = 1.0;
    double T = 1.0;
    int n_slow = 1;
    std::vector<double> epsilon_ladder{1.0, 0.3, 0.1, 0.03};
    std::vector<double> delta_ladder{0.4, 0.2, 0.1, 0.05};
    std::uint64_t master_seed = 20240915ull;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks every parameter invariant. Never throws; callers reject on a
/// non-empty report.
ValidationReport validate_params(const ModelParams& p);

/// A control model from the built-in registry. The callables are the ground
/// truth; the cos(y3) decomposition fields restate f and g exactly as
///   f(x,y,u) = f0(x,u) + f1(x,u) * cos(y3)
///   g(x,y)   = g0(x)   + g1     * cos(y3)
/// which is what lets the effective Hamiltonian reuse a single mu-moment.
struct ControlModel {
    std::string id;
    std::vector<std::string> controls;

    std::function<double(const SlowPoint&, const FastState&, int)> f;
    std::function<double(const SlowPoint&, const FastState&)> g;
    std::function<SlowVec(const SlowPoint&, const FastState&, int)> phi_tilde;
    double sigma_scale = 0.5; // sigma_tilde = sigma_scale * identity

    std::function<double(const SlowPoint&, int)> f0;
    std::function<double(const SlowPoint&, int)> f1;
    std::function<double(const SlowPoint&)> g0;
    double g1 = 0.0;

    // declared assumption constants
    double C_f = 0.0;       // |f| <= C_f (1+|x|)
    double C_g = 0.0;       // |g| <= C_g (1+|x|)
    double C_phi = 0.0;     // |phi_tilde| <= C_phi
    double C_sigma = 0.0;   // |sigma_tilde| <= C_sigma
    double lip_constant_L = 0.0; // Lipschitz constant of F(y) = -H(x,y,p,X,0) in y
    double f_y3_d1_bound = 0.0;  // sup |dF/dy3|
    double f_y3_d2_bound = 0.0;  // sup |d2F/dy3^2|
    double x_lip = 0.0;          // Lipschitz constant of H in x per unit (1+|p|+|X|)

    int n_controls() const { return static_cast<int>(controls.size()); }
};

/// Registry lookup; throws UnknownModelError for ids outside the registry.
ControlModel builtin_model(const std::string& id);

std::vector<std::string> builtin_model_ids();

} // namespace heishom
