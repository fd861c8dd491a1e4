#include "heishom/model.hpp"

#include <cmath>

#include "heishom/errors.hpp"

namespace heishom {

double SlowPoint::norm() const {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += x[i] * x[i];
    return std::sqrt(s);
}

double SymMat::norm() const {
    if (n == 1) return std::abs(xx);
    return std::sqrt(xx * xx + 2.0 * xy * xy + yy * yy);
}

ValidationReport validate_params(const ModelParams& p) {
    ValidationReport r;
    auto require = [&](bool ok, const char* msg) {
        if (!ok) r.violations.emplace_back(msg);
    };
    require(p.k1 > 4.0, "k1 > 4 required");
    require(p.k2 > 4.0, "k2 > 4 required");
    require(p.k3 > 0.0, "k3 > 0 required");
    require(p.a > 0.0, "a > 0 required");
    require(p.T > 0.0, "T > 0 required");
    require(p.n_slow == 1 || p.n_slow == 2, "n_slow must be 1 or 2");

    auto check_ladder = [&](const std::vector<double>& ladder, const char* name) {
        double prev = 2.0;
        for (double v : ladder) {
            if (!(v > 0.0 && v <= 1.0)) {
                r.violations.push_back(std::string(name) + " entries must lie in (0,1]");
                return;
            }
            if (!(v < prev)) {
                r.violations.push_back(std::string(name) + " must be strictly decreasing");
                return;
            }
            prev = v;
        }
    };
    check_ladder(p.epsilon_ladder, "epsilon_ladder");
    check_ladder(p.delta_ladder, "delta_ladder");
    return r;
}

namespace {

constexpr double kSigmaScale = 0.5;

// eta(x) = cos(x1): bounded, smooth, |eta| <= 1.
double eta(const SlowPoint& x) { return std::cos(x.x[0]); }

ControlModel uncontrolled_linear() {
    ControlModel m;
    m.id = "uncontrolled-linear";
    m.controls = {"idle"};
    m.sigma_scale = kSigmaScale;
    m.f = [](const SlowPoint&, const FastState&, int) { return 0.0; };
    m.g = [](const SlowPoint& x, const FastState&) { return x.x[0]; };
    m.phi_tilde = [](const SlowPoint& x, const FastState&, int) {
        return SlowVec{x.n, {0.0, 0.0}};
    };
    m.f0 = [](const SlowPoint&, int) { return 0.0; };
    m.f1 = [](const SlowPoint&, int) { return 0.0; };
    m.g0 = [](const SlowPoint& x) { return x.x[0]; };
    m.g1 = 0.0;
    m.C_f = 1.0;
    m.C_g = 1.0;
    m.C_phi = 0.0;
    m.C_sigma = kSigmaScale;
    m.lip_constant_L = 0.0;
    m.f_y3_d1_bound = 0.0;
    m.f_y3_d2_bound = 0.0;
    m.x_lip = 0.0;
    return m;
}

ControlModel cos_running_cost() {
    ControlModel m;
    m.id = "cos-running-cost";
    m.controls = {"idle"};
    m.sigma_scale = kSigmaScale;
    m.f = [](const SlowPoint& x, const FastState& y, int) { return std::cos(y.y3) * eta(x); };
    m.g = [](const SlowPoint& x, const FastState& y) { return std::cos(x.x[0]) + std::cos(y.y3); };
    m.phi_tilde = [](const SlowPoint& x, const FastState&, int) {
        return SlowVec{x.n, {0.0, 0.0}};
    };
    m.f0 = [](const SlowPoint&, int) { return 0.0; };
    m.f1 = [](const SlowPoint& x, int) { return eta(x); };
    m.g0 = [](const SlowPoint& x) { return std::cos(x.x[0]); };
    m.g1 = 1.0;
    m.C_f = 1.0;
    m.C_g = 2.0;
    m.C_phi = 0.0;
    m.C_sigma = kSigmaScale;
    m.lip_constant_L = 1.0;
    m.f_y3_d1_bound = 1.0;
    m.f_y3_d2_bound = 1.0;
    m.x_lip = 1.0;
    return m;
}

ControlModel bang_bang() {
    ControlModel m;
    m.id = "bang-bang";
    m.controls = {"minus", "plus"};
    m.sigma_scale = kSigmaScale;
    m.f = [](const SlowPoint&, const FastState& y, int) { return std::cos(y.y3); };
    m.g = [](const SlowPoint& x, const FastState&) { return std::cos(x.x[0]); };
    m.phi_tilde = [](const SlowPoint& x, const FastState&, int u) {
        return SlowVec{x.n, {u == 0 ? -1.0 : 1.0, 0.0}};
    };
    m.f0 = [](const SlowPoint&, int) { return 0.0; };
    m.f1 = [](const SlowPoint&, int) { return 1.0; };
    m.g0 = [](const SlowPoint& x) { return std::cos(x.x[0]); };
    m.g1 = 0.0;
    m.C_f = 1.0;
    m.C_g = 1.0;
    m.C_phi = 1.0;
    m.C_sigma = kSigmaScale;
    m.lip_constant_L = 1.0;
    m.f_y3_d1_bound = 1.0;
    m.f_y3_d2_bound = 1.0;
    m.x_lip = 1.0;
    return m;
}

} // namespace

ControlModel builtin_model(const std::string& id) {
    if (id == "uncontrolled-linear") return uncontrolled_linear();
    if (id == "cos-running-cost") return cos_running_cost();
    if (id == "bang-bang") return bang_bang();
    throw UnknownModelError(id);
}

std::vector<std::string> builtin_model_ids() {
    return {"uncontrolled-linear", "cos-running-cost", "bang-bang"};
}

} // namespace heishom
