#include "tqg/random_field.hpp"

#include <cmath>
#include <stdexcept>

#include "tqg/rng.hpp"
#include "tqg/spectral.hpp"

namespace tqg {

ScalarField random_bandlimited(const Grid& grid, uint64_t seed, double slope,
                               int max_mode, double l2_norm) {
    if (max_mode < 1 || max_mode >= grid.n / 2)
        throw std::invalid_argument("random_bandlimited: max_mode out of range");
    Xoshiro256ss rng(seed);
    SpectralField fh(grid);
    const int n = grid.n;
    // Canonical half lattice: (mi > 0) or (mi == 0 and mj > 0); the mirror
    // mode gets the conjugate. Iteration order is fixed by the FFT indices.
    for (int i = 0; i < n; ++i) {
        const int mi = grid.mode(i);
        if (std::abs(mi) > max_mode) continue;
        for (int j = 0; j < n; ++j) {
            const int mj = grid.mode(j);
            if (std::abs(mj) > max_mode) continue;
            if (mi == 0 && mj == 0) continue;
            if (mi < 0 || (mi == 0 && mj < 0)) continue;
            const double kx = grid.wavenumber(i);
            const double ky = grid.wavenumber(j);
            const double amp = std::pow(1.0 + kx * kx + ky * ky, slope / 4.0);
            const double phase = 2.0 * M_PI * rng.uniform();
            const std::complex<double> c = amp * std::polar(0.5, phase);
            const int ic = (n - i) % n;  // index of -mi
            const int jc = (n - j) % n;
            fh.at(i, j) = c;
            fh.at(ic, jc) = std::conj(c);
        }
    }
    ScalarField f = inverse_transform(fh);
    const double norm = sobolev_norm(fh, 0.0);
    if (norm > 0.0) f *= l2_norm / norm;
    return f;
}

}  // namespace tqg
