#include "heishom/generator.hpp"

#include <cmath>

namespace heishom {

Sym3 Sym3::diagonal(double d11, double d22, double d33) {
    Sym3 s;
    s(0, 0) = d11;
    s(1, 1) = d22;
    s(2, 2) = d33;
    return s;
}

double Sym3::max_asymmetry() const {
    double a = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            a = std::max(a, std::abs((*this)(i, j) - (*this)(j, i)));
    return a;
}

std::array<std::array<double, 2>, 3> sigma(const FastState& y) {
    return {{{1.0, 0.0}, {0.0, 1.0}, {2.0 * y.y2, -2.0 * y.y1}}};
}

Vec3 sigma_column(const FastState& y, int col) {
    if (col == 0) return {1.0, 0.0, 2.0 * y.y2};
    return {0.0, 1.0, -2.0 * y.y1};
}

Vec3 drift(const FastState& y, const ModelParams& p) {
    return {-p.k1 * y.y1, -p.k2 * y.y2, -p.k3 * y.y3};
}

double apply_diffusion(const SecondOrderData& d, const FastState& y) {
    const auto& H = d.hessian;
    const double s = y.y1 * y.y1 + y.y2 * y.y2;
    return H(0, 0) + H(1, 1) + 4.0 * s * H(2, 2) + 4.0 * y.y2 * H(0, 2) - 4.0 * y.y1 * H(1, 2);
}

double apply_generator(const SecondOrderData& d, const FastState& y, const ModelParams& p) {
    const Vec3 b = drift(y, p);
    return apply_diffusion(d, y) + b[0] * d.gradient[0] + b[1] * d.gradient[1] +
           b[2] * d.gradient[2];
}

} // namespace heishom
