#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "tqg/grid.hpp"

namespace tqg {

/// Real-space samples of a scalar on the grid, row-major: value(i,j) is the
/// sample at (x_i, y_j) = (i*L/n, j*L/n).
struct ScalarField {
    Grid grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const Grid& g) : grid(g), values(g.size(), 0.0) {}

    double& at(int i, int j) { return values[static_cast<size_t>(i) * grid.n + j]; }
    double at(int i, int j) const { return values[static_cast<size_t>(i) * grid.n + j]; }

    bool is_finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

/// Complex Fourier coefficients indexed by the wavenumber lattice, FFT
/// order on both axes. Normalization: coeff(0,0) is the field mean, i.e.
/// f(x) = sum_k coeff(k) exp(i k.x).
struct SpectralField {
    Grid grid;
    std::vector<std::complex<double>> coeffs;

    SpectralField() = default;
    explicit SpectralField(const Grid& g) : grid(g), coeffs(g.size(), {0.0, 0.0}) {}

    std::complex<double>& at(int i, int j) {
        return coeffs[static_cast<size_t>(i) * grid.n + j];
    }
    std::complex<double> at(int i, int j) const {
        return coeffs[static_cast<size_t>(i) * grid.n + j];
    }
};

/// Two scalar components on a shared grid (velocity-like quantities).
struct VectorField {
    ScalarField x_comp;
    ScalarField y_comp;

    VectorField() = default;
    explicit VectorField(const Grid& g) : x_comp(g), y_comp(g) {}
    VectorField(ScalarField x, ScalarField y)
        : x_comp(std::move(x)), y_comp(std::move(y)) {
        if (!(x_comp.grid == y_comp.grid))
            throw std::invalid_argument("VectorField: components on different grids");
    }

    const Grid& grid() const { return x_comp.grid; }

    bool is_finite() const { return x_comp.is_finite() && y_comp.is_finite(); }
};

inline void require_same_grid(const Grid& a, const Grid& b, const char* where) {
    if (!(a == b))
        throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

// Pointwise field arithmetic (value semantics, used by the RK4 stages).

inline ScalarField& operator+=(ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid, b.grid, "operator+=");
    for (size_t i = 0; i < a.values.size(); ++i) a.values[i] += b.values[i];
    return a;
}

inline ScalarField& operator-=(ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid, b.grid, "operator-=");
    for (size_t i = 0; i < a.values.size(); ++i) a.values[i] -= b.values[i];
    return a;
}

inline ScalarField& operator*=(ScalarField& a, double s) {
    for (double& v : a.values) v *= s;
    return a;
}

inline ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
inline ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
inline ScalarField operator*(double s, ScalarField a) { return a *= s; }

/// a += s*b
inline void axpy(ScalarField& a, double s, const ScalarField& b) {
    require_same_grid(a.grid, b.grid, "axpy");
    for (size_t i = 0; i < a.values.size(); ++i) a.values[i] += s * b.values[i];
}

}  // namespace tqg
