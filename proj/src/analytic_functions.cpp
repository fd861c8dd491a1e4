#include "heishom/analytic_functions.hpp"

#include <cmath>

namespace heishom {

SecondOrderData chi_data(const FastState& y) {
    SecondOrderData d;
    d.value = y.y1 * y.y1 + y.y2 * y.y2 + y.y3 * y.y3;
    d.gradient = {2.0 * y.y1, 2.0 * y.y2, 2.0 * y.y3};
    d.hessian = Sym3::diagonal(2.0, 2.0, 2.0);
    return d;
}

SecondOrderData u1_data(const FastState& y) {
    SecondOrderData d;
    d.value = std::pow(y.y1, 4) + std::pow(y.y2, 4) + y.y3 * y.y3;
    d.gradient = {4.0 * std::pow(y.y1, 3), 4.0 * std::pow(y.y2, 3), 2.0 * y.y3};
    d.hessian = Sym3::diagonal(12.0 * y.y1 * y.y1, 12.0 * y.y2 * y.y2, 2.0);
    return d;
}

SecondOrderData cos_sum_data(const FastState& y) {
    SecondOrderData d;
    d.value = std::cos(y.y1) + std::cos(y.y2) + std::cos(y.y3);
    d.gradient = {-std::sin(y.y1), -std::sin(y.y2), -std::sin(y.y3)};
    d.hessian = Sym3::diagonal(-std::cos(y.y1), -std::cos(y.y2), -std::cos(y.y3));
    return d;
}

SecondOrderData log_barrier_data(const FastState& y, double c1, double shift) {
    const double s = y.y1 * y.y1 + y.y2 * y.y2;
    const double rho = s * s + y.y3 * y.y3 + shift;
    const Vec3 drho = {4.0 * s * y.y1, 4.0 * s * y.y2, 2.0 * y.y3};
    Sym3 d2rho;
    d2rho(0, 0) = 4.0 * s + 8.0 * y.y1 * y.y1;
    d2rho(1, 1) = 4.0 * s + 8.0 * y.y2 * y.y2;
    d2rho(2, 2) = 2.0;
    d2rho(0, 1) = d2rho(1, 0) = 8.0 * y.y1 * y.y2;

    SecondOrderData d;
    d.value = c1 * std::log(rho);
    for (int i = 0; i < 3; ++i) d.gradient[i] = c1 * drho[i] / rho;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            d.hessian(i, j) = c1 * (d2rho(i, j) / rho - drho[i] * drho[j] / (rho * rho));
    return d;
}

SecondOrderData abs_data(const FastState& y) {
    const double r = std::sqrt(y.y1 * y.y1 + y.y2 * y.y2 + y.y3 * y.y3);
    const Vec3 u = {y.y1 / r, y.y2 / r, y.y3 / r};
    SecondOrderData d;
    d.value = r;
    d.gradient = u;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            d.hessian(i, j) = ((i == j ? 1.0 : 0.0) - u[i] * u[j]) / r;
    return d;
}

RadialSplice::RadialSplice(double r0_) : r0(r0_) {
    c4 = -1.0 / (8.0 * r0 * r0 * r0);
    c2 = 3.0 / (4.0 * r0);
    c0 = 1.0 + 0.375 * r0;
}

SecondOrderData RadialSplice::eval(const FastState& y) const {
    const double r2 = y.y1 * y.y1 + y.y2 * y.y2 + y.y3 * y.y3;
    if (r2 >= r0 * r0) {
        SecondOrderData d = abs_data(y);
        d.value += 1.0;
        return d;
    }
    // phi(r) = c0 + c2 r^2 + c4 r^4 as a function of y
    const double w = 2.0 * c2 + 4.0 * c4 * r2;
    SecondOrderData d;
    d.value = c0 + c2 * r2 + c4 * r2 * r2;
    const Vec3 yv = {y.y1, y.y2, y.y3};
    for (int i = 0; i < 3; ++i) d.gradient[i] = w * yv[i];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            d.hessian(i, j) = (i == j ? w : 0.0) + 8.0 * c4 * yv[i] * yv[j];
    return d;
}

SecondOrderData linear_data(const FastState& y, const Vec3& a, double b) {
    SecondOrderData d;
    d.value = a[0] * y.y1 + a[1] * y.y2 + a[2] * y.y3 + b;
    d.gradient = a;
    return d;
}

double generator_on_chi(const FastState& y, const ModelParams& p) {
    return 2.0 * (2.0 - (p.k1 - 4.0) * y.y1 * y.y1 - (p.k2 - 4.0) * y.y2 * y.y2 -
                  p.k3 * y.y3 * y.y3);
}

double generator_on_u1(const FastState& y, const ModelParams& p) {
    return 20.0 * (y.y1 * y.y1 + y.y2 * y.y2) - 4.0 * p.k1 * std::pow(y.y1, 4) -
           4.0 * p.k2 * std::pow(y.y2, 4) - 2.0 * p.k3 * y.y3 * y.y3;
}

} // namespace heishom
