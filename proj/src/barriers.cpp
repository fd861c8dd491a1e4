#include "heishom/barriers.hpp"

#include <algorithm>
#include <cmath>

#include "heishom/errors.hpp"

namespace heishom {

double lyapunov_u1_certificate(double gamma, const ModelParams& p) {
    const double cap = std::min({2.0 * p.k3, 4.0 * p.k1, 4.0 * p.k2});
    if (!(gamma > 0.0 && gamma < cap))
        throw InvalidGammaError("gamma must lie in (0, min(2k3, 4k1, 4k2))");
    return 100.0 / (4.0 * p.k1 - gamma) + 100.0 / (4.0 * p.k2 - gamma);
}

std::pair<double, double> log_barrier_terms(const FastState& y, double c1,
                                            const ModelParams& p) {
    const double s = y.y1 * y.y1 + y.y2 * y.y2;
    const double rho = s * s + y.y3 * y.y3;
    if (rho <= 0.0) throw SingularPointError();
    const double trace_term = 8.0 * c1 * s / rho;
    const double drift_term =
        -c1 * (4.0 * s * (p.k1 * y.y1 * y.y1 + p.k2 * y.y2 * y.y2) + 2.0 * p.k3 * y.y3 * y.y3) /
        rho;
    return {trace_term, drift_term};
}

LogBarrierCertificate log_barrier_certificate(double F_sup, const ModelParams& p) {
    // -L g >= C1 [c0 - 8 s / rho] with c0 = min(4 min(k1,k2), 2 k3);
    // 8 s <= c0 rho / 2 holds once |y|^2 >= 16/c0 + 256/c0^2, so outside that
    // radius -L g >= C1 c0 / 2 and g >= 0 (rho >= 1 there).
    const double c0 = std::min(4.0 * std::min(p.k1, p.k2), 2.0 * p.k3);
    const double r2 = 16.0 / c0 + 256.0 / (c0 * c0);
    const double radius = std::max(1.5, std::sqrt(r2));
    const double c1 = 2.0 * std::max(F_sup, 1e-12) / c0;
    return {c1, radius};
}

LinearGrowthConstants linear_growth_supersolution(double /*delta*/, double C_F,
                                                  double /*lip_L*/, const ModelParams& p) {
    LinearGrowthConstants c;
    c.l = std::min({p.k1 - 4.0, p.k2 - 4.0, p.k3});
    c.C_l = std::max(1.0, 2.0 * C_F / c.l);
    c.r0 = 1.0 + 2.0 * c.C_l / C_F;
    return c;
}

double linear_growth_defect(const FastState& y, double delta, double C_F,
                            const LinearGrowthConstants& c, const ModelParams& p) {
    SecondOrderData d = abs_data(y);
    const double r = d.value;
    const double lu = apply_generator(d, y, p); // L |y|
    return delta * c.C_l * (r + 1.0) - c.C_l * lu - C_F * (r + 1.0);
}

double compute_m0(const std::function<double(const FastState&)>& F, double delta,
                  const LinearGrowthConstants& c, const ModelParams& p, double h_sample) {
    const RadialSplice u0(c.r0);
    const int n = static_cast<int>(std::ceil(c.r0 / h_sample));
    double worst = 0.0;
    double f_sup = 0.0;
    for (int i = -n; i <= n; ++i)
        for (int j = -n; j <= n; ++j)
            for (int k = -n; k <= n; ++k) {
                const FastState y{i * h_sample, j * h_sample, k * h_sample};
                if (y.y1 * y.y1 + y.y2 * y.y2 + y.y3 * y.y3 > c.r0 * c.r0) continue;
                const double fv = F(y);
                f_sup = std::max(f_sup, std::abs(fv));
                const SecondOrderData d = u0.eval(y);
                const double defect = fv + apply_generator(d, y, p) - delta * d.value;
                worst = std::max(worst, defect);
            }
    return std::max(worst, f_sup) + 1.0;
}

} // namespace heishom
