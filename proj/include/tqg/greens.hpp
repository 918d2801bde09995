#pragma once

#include <vector>

#include "tqg/field.hpp"

namespace tqg {

/// Tabulated values of the free-space kernel K0 on increasing radii.
struct KernelTable {
    std::vector<double> radii;   // strictly increasing, positive
    std::vector<double> values;  // K0(r), strictly positive and decreasing
    double tolerance = 0;        // quadrature error target used to fill it
};

/// Modified Bessel function of the second kind, order zero, via adaptive
/// Gauss-Kronrod quadrature of K0(z) = integral_0^inf exp(-z cosh t) dt
/// (the r = z sinh t substitution of the half-line representation).
/// Absolute error <= 1e-10 on z in [1e-3, 30]; for z > 30 the large-z
/// asymptotic series sqrt(pi/2z) e^{-z} (1 - 1/8z + ...) takes over.
/// Throws std::domain_error for z <= 0 (logarithmic singularity at 0).
double bessel_k0(double z);

/// Evenly spaced kernel table over [r_min, r_max].
KernelTable make_kernel_table(double r_min, double r_max, int points);

/// Free-space solution psi(x) = -(1/2pi) integral K0(|x-y|) w(y) dy by
/// direct product-integration quadrature: per-offset weights equal to the
/// cell integral of K0, with the log singularity of the self cell handled
/// analytically in polar coordinates and near cells refined by subdivision.
///
/// Requires w to be supported (tail below 1e-12 of the peak) inside a disc
/// of support_radius around its peak, with support_radius < L/2; throws
/// std::invalid_argument naming the measured tail mass otherwise.
ScalarField greens_convolve(const ScalarField& w, double support_radius);

}  // namespace tqg
