#include "tqg/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace tqg {

namespace {

// FFTW planning is not thread-safe; executing a cached plan on fresh arrays
// is. Plans are created once per (n, direction) with FFTW_UNALIGNED so they
// can run on any std::vector storage.
class PlanCache {
  public:
    fftw_plan get(int n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<std::complex<double>> buf(static_cast<size_t>(n) * n);
        fftw_plan p = fftw_plan_dft_2d(
            n, n, reinterpret_cast<fftw_complex*>(buf.data()),
            reinterpret_cast<fftw_complex*>(buf.data()), sign,
            FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

  private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

void execute(int n, int sign, std::vector<std::complex<double>>& in,
             std::vector<std::complex<double>>& out) {
    fftw_plan p = plan_cache().get(n, sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

SpectralField forward_transform(const ScalarField& f) {
    if (!f.is_finite())
        throw std::invalid_argument("forward_transform: non-finite input field");
    const int n = f.grid.n;
    std::vector<std::complex<double>> buf(f.values.size());
    for (size_t i = 0; i < f.values.size(); ++i) buf[i] = f.values[i];
    SpectralField out(f.grid);
    execute(n, FFTW_FORWARD, buf, out.coeffs);
    const double scale = 1.0 / (static_cast<double>(n) * n);
    for (auto& c : out.coeffs) c *= scale;
    return out;
}

ScalarField inverse_transform(const SpectralField& f) {
    const int n = f.grid.n;
    std::vector<std::complex<double>> in(f.coeffs);
    std::vector<std::complex<double>> buf(f.coeffs.size());
    execute(n, FFTW_BACKWARD, in, buf);
    ScalarField out(f.grid);
    for (size_t i = 0; i < buf.size(); ++i) out.values[i] = buf[i].real();
    return out;
}

SpectralField spectral_derivative(const SpectralField& f, int axis, int order) {
    if (axis != 0 && axis != 1)
        throw std::invalid_argument("spectral_derivative: axis must be 0 or 1");
    if (order < 1)
        throw std::invalid_argument("spectral_derivative: order must be >= 1");
    const int n = f.grid.n;
    const bool odd = order % 2 != 0;
    // (i k)^order = i^order * k^order; i^order cycles through 1, i, -1, -i.
    static const std::complex<double> i_pow[4] = {
        {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const std::complex<double> rot = i_pow[order % 4];
    std::vector<std::complex<double>> factor(n);
    for (int idx = 0; idx < n; ++idx) {
        if (odd && f.grid.mode(idx) == -n / 2) continue;  // Nyquist has no sign
        factor[idx] = rot * std::pow(f.grid.wavenumber(idx), order);
    }
    SpectralField out(f.grid);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.at(i, j) = f.at(i, j) * factor[axis == 0 ? i : j];
    return out;
}

VectorField gradient(const ScalarField& f) {
    SpectralField fh = forward_transform(f);
    return VectorField(inverse_transform(spectral_derivative(fh, 0, 1)),
                       inverse_transform(spectral_derivative(fh, 1, 1)));
}

VectorField perp_gradient(const ScalarField& f) {
    SpectralField fh = forward_transform(f);
    ScalarField dy = inverse_transform(spectral_derivative(fh, 1, 1));
    ScalarField dx = inverse_transform(spectral_derivative(fh, 0, 1));
    dy *= -1.0;
    return VectorField(std::move(dy), std::move(dx));
}

SpectralField dealias(const SpectralField& f) {
    const int n = f.grid.n;
    SpectralField out = f;
    for (int i = 0; i < n; ++i) {
        const bool cut_i = 3 * std::abs(f.grid.mode(i)) > n;
        for (int j = 0; j < n; ++j) {
            if (cut_i || 3 * std::abs(f.grid.mode(j)) > n) out.at(i, j) = 0.0;
        }
    }
    return out;
}

ScalarField dealias(const ScalarField& f) {
    return inverse_transform(dealias(forward_transform(f)));
}

double sobolev_norm(const SpectralField& f, double s) {
    if (s < -4.0 || s > 4.0)
        throw std::invalid_argument("sobolev_norm: s outside supported range [-4, 4]");
    const int n = f.grid.n;
    const double L = f.grid.length;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double kx = f.grid.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const double ky = f.grid.wavenumber(j);
            const double w = std::pow(1.0 + kx * kx + ky * ky, s);
            sum += w * std::norm(f.at(i, j));
        }
    }
    return std::sqrt(L * L * sum);
}

double sobolev_norm(const ScalarField& f, double s) {
    return sobolev_norm(forward_transform(f), s);
}

double sobolev_norm(const VectorField& u, double s) {
    const double nx = sobolev_norm(u.x_comp, s);
    const double ny = sobolev_norm(u.y_comp, s);
    return std::sqrt(nx * nx + ny * ny);
}

double sup_norm(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

double sup_norm(const VectorField& u) {
    double m = 0.0;
    for (size_t i = 0; i < u.x_comp.values.size(); ++i) {
        const double x = u.x_comp.values[i];
        const double y = u.y_comp.values[i];
        m = std::max(m, x * x + y * y);
    }
    return std::sqrt(m);
}

double grad_sup_norm(const ScalarField& f) {
    return sup_norm(gradient(f));
}

double mean(const ScalarField& f) {
    double sum = 0.0;
    for (double v : f.values) sum += v;
    return sum / f.values.size();
}

double spectral_divergence_max(const VectorField& u) {
    SpectralField ux = forward_transform(u.x_comp);
    SpectralField uy = forward_transform(u.y_comp);
    const int n = ux.grid.n;
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
        const double kx = ux.grid.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const double ky = ux.grid.wavenumber(j);
            m = std::max(m, std::abs(kx * ux.at(i, j) + ky * uy.at(i, j)));
        }
    }
    return m;
}

ScalarField divergence(const VectorField& u) {
    SpectralField dx = spectral_derivative(forward_transform(u.x_comp), 0, 1);
    SpectralField dy = spectral_derivative(forward_transform(u.y_comp), 1, 1);
    for (size_t i = 0; i < dx.coeffs.size(); ++i) dx.coeffs[i] += dy.coeffs[i];
    return inverse_transform(dx);
}

double spectral_tail_fraction(const ScalarField& f, bool dealias_on) {
    SpectralField fh = forward_transform(f);
    const int n = f.grid.n;
    // Active band: |m| <= n/3 under dealiasing, else the full lattice.
    const double band = dealias_on ? n / 3.0 : n / 2.0;
    const double cutoff = 2.0 * band / 3.0;
    double tail = 0.0, total = 0.0;
    for (int i = 0; i < n; ++i) {
        const int mi = std::abs(fh.grid.mode(i));
        for (int j = 0; j < n; ++j) {
            const int mj = std::abs(fh.grid.mode(j));
            if (mi == 0 && mj == 0) continue;
            const double e = std::norm(fh.at(i, j));
            total += e;
            if (std::max(mi, mj) > cutoff) tail += e;
        }
    }
    return total > 0.0 ? tail / total : 0.0;
}

}  // namespace tqg
