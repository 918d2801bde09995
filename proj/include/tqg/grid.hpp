#pragma once

#include <cmath>
#include <stdexcept>

namespace tqg {

/// Periodic square domain [0,L)^2 sampled on an n-by-n lattice.
///
/// Sample points are x_i = i*L/n, y_j = j*L/n. The associated wavenumber
/// lattice is k = (2*pi/L)*m with integer m in [-n/2, n/2) per axis, stored
/// in FFT order: index j maps to m = j for j < n/2 and m = j - n otherwise.
struct Grid {
    int n = 0;          // points per side, even, >= 16
    double length = 0;  // domain period L > 0

    Grid() = default;
    Grid(int n_, double length_) : n(n_), length(length_) {
        if (n < 16 || n % 2 != 0)
            throw std::invalid_argument("Grid: n must be even and >= 16");
        if (!(length > 0))
            throw std::invalid_argument("Grid: length must be positive");
    }

    double dx() const { return length / n; }
    int size() const { return n * n; }

    /// Integer mode number for FFT-ordered index i, in [-n/2, n/2).
    int mode(int i) const { return i < n / 2 ? i : i - n; }

    /// Physical wavenumber (2*pi/L)*m for FFT-ordered index i.
    double wavenumber(int i) const { return 2.0 * M_PI / length * mode(i); }

    bool operator==(const Grid& o) const {
        return n == o.n && length == o.length;
    }
};

}  // namespace tqg
