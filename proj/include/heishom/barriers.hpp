#pragma once

#include <functional>
#include <utility>

#include "heishom/analytic_functions.hpp"
#include "heishom/model.hpp"

namespace heishom {

/// beta = 100/(4k1 - gamma) + 100/(4k2 - gamma); the pair (gamma, beta)
/// satisfies -L U1 >= gamma U1 - beta on all of R^3.
/// Requires 0 < gamma < min(2 k3, 4 k1, 4 k2); otherwise throws InvalidGammaError.
double lyapunov_u1_certificate(double gamma, const ModelParams& p);

/// The two pieces of L g for g = C1 log((y1^2+y2^2)^2 + y3^2):
///   trace_term = 8 C1 (y1^2+y2^2) / rho
///   drift_term = -C1 [4 (y1^2+y2^2)(k1 y1^2 + k2 y2^2) + 2 k3 y3^2] / rho
/// with rho = (y1^2+y2^2)^2 + y3^2. Throws SingularPointError at y = 0.
std::pair<double, double> log_barrier_terms(const FastState& y, double c1, const ModelParams& p);

/// (C1, R) such that delta*g - L g >= F_sup outside B_R for
/// g = C1 log((y1^2+y2^2)^2 + y3^2), any bounded |F| <= F_sup and any
/// delta >= 0. Mirrors the supersolution construction behind the log-growth
/// bound.
struct LogBarrierCertificate {
    double c1;
    double radius;
};
LogBarrierCertificate log_barrier_certificate(double F_sup, const ModelParams& p);

/// Constants for the sublinear supersolution:
///   l = min{k1-4, k2-4, k3}, C_l = max{1, 2 C_F / l}, r0 = 1 + 2 C_l / C_F.
struct LinearGrowthConstants {
    double l;
    double C_l;
    double r0;
};
LinearGrowthConstants linear_growth_supersolution(double delta, double C_F, double lip_L,
                                                  const ModelParams& p);

/// Pointwise defect delta*C_l(|y|+1) - L[C_l |y|] - C_F(|y|+1) of the
/// supersolution chain; nonnegative outside B_{r0}.
double linear_growth_defect(const FastState& y, double delta, double C_F,
                            const LinearGrowthConstants& c, const ModelParams& p);

/// M0 >= sup_{B_{r0}} (F + L U0 - delta U0)^+ and M0 >= sup_{B_{r0}} |F|,
/// computed as a sampled maximum over a lattice of spacing `h_sample`
/// plus margin 1.
double compute_m0(const std::function<double(const FastState&)>& F, double delta,
                  const LinearGrowthConstants& c, const ModelParams& p,
                  double h_sample = 0.05);

} // namespace heishom
