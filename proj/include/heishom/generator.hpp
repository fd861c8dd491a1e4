#pragma once

#include <array>

#include "heishom/model.hpp"

namespace heishom {

/// Symmetric 3x3 matrix for Hessians in the fast variable.
struct Sym3 {
    // row-major upper triangle mirrored; access via operator()
    std::array<double, 9> m{};

    double& operator()(int i, int j) { return m[3 * i + j]; }
    double operator()(int i, int j) const { return m[3 * i + j]; }

    static Sym3 zero() { return Sym3{}; }
    static Sym3 diagonal(double d11, double d22, double d33);
    double max_asymmetry() const;
};

/// Value, gradient and Hessian of a scalar function at one fast point.
struct SecondOrderData {
    double value = 0.0;
    std::array<double, 3> gradient{0.0, 0.0, 0.0};
    Sym3 hessian;
};

using Vec3 = std::array<double, 3>;

/// Diffusion matrix of the fast process: rows (1,0), (0,1), (2y2,-2y1).
std::array<std::array<double, 2>, 3> sigma(const FastState& y);

/// Columns of sigma as vectors in R^3: v1 = (1,0,2y2), v2 = (0,1,-2y1).
Vec3 sigma_column(const FastState& y, int col);

/// Ornstein-Uhlenbeck drift b(y) = -(k1 y1, k2 y2, k3 y3).
Vec3 drift(const FastState& y, const ModelParams& p);

/// Lu = u11 + u22 + 4(y1^2+y2^2) u33 + 4 y2 u13 - 4 y1 u23 + b . Du
double apply_generator(const SecondOrderData& d, const FastState& y, const ModelParams& p);

/// Second-order part alone: tr(sigma sigma^T D^2 u).
double apply_diffusion(const SecondOrderData& d, const FastState& y);

} // namespace heishom
