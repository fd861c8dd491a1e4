#pragma once

#include "heishom/generator.hpp"

namespace heishom {

// Closed-form test functions with exact gradients and Hessians. These back
// every oracle comparison against the grid discretization, so each one is a
// direct hand differentiation, no numerics involved.

/// chi(y) = y1^2 + y2^2 + y3^2
SecondOrderData chi_data(const FastState& y);

/// U1(y) = y1^4 + y2^4 + y3^2
SecondOrderData u1_data(const FastState& y);

/// cos y1 + cos y2 + cos y3
SecondOrderData cos_sum_data(const FastState& y);

/// C1 * log((y1^2+y2^2)^2 + y3^2 + shift); shift = 0 is singular at y = 0.
SecondOrderData log_barrier_data(const FastState& y, double c1, double shift);

/// |y| (valid away from the origin).
SecondOrderData abs_data(const FastState& y);

/// Smooth radial splice U0: C0 + C2 r^2 + C4 r^4 inside B_{r0}, |y|+1 outside,
/// C^2 across the sphere r = r0.
struct RadialSplice {
    double r0;
    double c0, c2, c4;

    explicit RadialSplice(double r0_);
    SecondOrderData eval(const FastState& y) const;
};

/// Affine function a . y + b.
SecondOrderData linear_data(const FastState& y, const Vec3& a, double b);

/// Closed forms used by the oracles (hand-derived, asserted in tests):
///   L chi = 2(2 - (k1-4) y1^2 - (k2-4) y2^2 - k3 y3^2)
///   L U1  = 20 (y1^2+y2^2) - 4 k1 y1^4 - 4 k2 y2^4 - 2 k3 y3^2
double generator_on_chi(const FastState& y, const ModelParams& p);
double generator_on_u1(const FastState& y, const ModelParams& p);

} // namespace heishom
