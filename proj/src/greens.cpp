#include "tqg/greens.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tqg {

namespace {

constexpr double kEulerGamma = 0.57721566490153286;

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].
constexpr double kKronrodNodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,                0.207784955007898,
    0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
constexpr double kKronrodWeights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr double kGaussWeights[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

struct GkResult {
    double value;
    double error;
};

template <typename F>
GkResult gk15(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double kron = 0.0, gauss = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double v = f(mid + half * kKronrodNodes[i]);
        kron += kKronrodWeights[i] * v;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * v;
    }
    return {kron * half, std::abs(kron - gauss) * half};
}

template <typename F>
double adaptive_gk(F&& f, double a, double b, double tol, int depth = 0) {
    GkResult r = gk15(f, a, b);
    if (r.error <= tol || depth >= 40) return r.value;
    const double mid = 0.5 * (a + b);
    return adaptive_gk(f, a, mid, 0.5 * tol, depth + 1) +
           adaptive_gk(f, mid, b, 0.5 * tol, depth + 1);
}

double k0_asymptotic(double z) {
    // K0(z) ~ sqrt(pi/2z) e^{-z} sum_k (-1)^k prod(2j-1)^2 / (k! 8^k z^k)
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 8; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= -(odd * odd) / (8.0 * k * z);
        sum += term;
    }
    return std::sqrt(M_PI / (2.0 * z)) * std::exp(-z) * sum;
}

double k0_quadrature(double z) {
    // integrand exp(-z cosh t); truncate where it drops ~e^-60 below e^-z
    const double t_max = std::acosh(1.0 + 60.0 / z);
    auto f = [z](double t) { return std::exp(-z * std::cosh(t)); };
    return adaptive_gk(f, 0.0, t_max, 1e-13);
}

}  // namespace

double bessel_k0(double z) {
    if (!(z > 0.0))
        throw std::domain_error("bessel_k0: z must be positive");
    if (z > 30.0) return k0_asymptotic(z);
    return k0_quadrature(z);
}

KernelTable make_kernel_table(double r_min, double r_max, int points) {
    if (!(r_min > 0.0) || !(r_max > r_min) || points < 2)
        throw std::invalid_argument("make_kernel_table: need 0 < r_min < r_max, points >= 2");
    KernelTable table;
    table.tolerance = 1e-12;
    table.radii.reserve(points);
    table.values.reserve(points);
    for (int i = 0; i < points; ++i) {
        const double r = r_min + (r_max - r_min) * i / (points - 1);
        table.radii.push_back(r);
        table.values.push_back(bessel_k0(r));
    }
    return table;
}

namespace {

// Cell integral of K0 over the singular self cell, equal-area disc of
// radius R = h/sqrt(pi), using K0 = -(ln(r/2)+gamma) I0(r) + r^2/4 + O(r^4):
//   int_0^R -(ln(r/2)+g) 2 pi r dr          = pi R^2 (1/2 - g - ln(R/2))
//   int_0^R -(ln(r/2)+g) (r^2/4) 2 pi r dr  = -pi R^4/8 (ln(R/2)+g) + pi R^4/32
//   int_0^R (r^2/4) 2 pi r dr               = pi R^4/8
double self_cell_weight(double h) {
    const double R = h / std::sqrt(M_PI);
    const double lr = std::log(0.5 * R);
    const double r2 = R * R, r4 = r2 * r2;
    return M_PI * r2 * (0.5 - kEulerGamma - lr) +
           M_PI * r4 / 8.0 * (-(lr + kEulerGamma) + 0.25 + 1.0);
}

// Offset weight = integral of K0 over the h-by-h cell centered at distance
// (di*h, dj*h): curvature-corrected midpoint rule for far cells, 16x16
// subdivision near the singularity where the expansion degrades. Away from
// the origin Lap K0 = K0, so the midpoint correction h^2/24 * Lap K0 turns
// into the exact scalar factor (1 + h^2/24) on K0 itself.
double offset_weight(int di, int dj, double h) {
    const double r = h * std::hypot(di, dj);
    if (di == 0 && dj == 0) return self_cell_weight(h);
    if (r > 50.0) return 0.0;  // K0 < 1e-21, below accumulation noise
    if (std::max(std::abs(di), std::abs(dj)) <= 4) {
        const int sub = 16;
        const double hs = h / sub;
        double sum = 0.0;
        for (int a = 0; a < sub; ++a) {
            for (int b = 0; b < sub; ++b) {
                const double x = (di - 0.5 + (a + 0.5) / sub) * h;
                const double y = (dj - 0.5 + (b + 0.5) / sub) * h;
                sum += bessel_k0(std::hypot(x, y));
            }
        }
        return sum * hs * hs * (1.0 + hs * hs / 24.0);
    }
    return h * h * bessel_k0(r) * (1.0 + h * h / 24.0);
}

}  // namespace

ScalarField greens_convolve(const ScalarField& w, double support_radius) {
    const Grid& g = w.grid;
    const int n = g.n;
    const double h = g.dx();
    if (!(support_radius > 0.0) || support_radius >= 0.5 * g.length)
        throw std::invalid_argument(
            "greens_convolve: support_radius must lie in (0, L/2)");

    // Locate the peak and measure the tail outside the support disc.
    int pi = 0, pj = 0;
    double peak = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (std::abs(w.at(i, j)) > peak) {
                peak = std::abs(w.at(i, j));
                pi = i;
                pj = j;
            }
    if (peak == 0.0) return ScalarField(g);  // w = 0 -> psi = 0

    double tail = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double r = h * std::hypot(i - pi, j - pj);
            if (r > support_radius)
                tail = std::max(tail, std::abs(w.at(i, j)));
        }
    if (tail > 1e-12 * peak) {
        std::ostringstream msg;
        msg << "greens_convolve: field not supported in the given disc; "
            << "tail mass " << tail / peak << " of peak outside r = "
            << support_radius;
        throw std::invalid_argument(msg.str());
    }

    // Per-offset cell weights for all displacements that can occur.
    std::vector<double> weights(static_cast<size_t>(n) * n);
    for (int di = 0; di < n; ++di)
        for (int dj = 0; dj < n; ++dj)
            weights[static_cast<size_t>(di) * n + dj] = offset_weight(di, dj, h);

    // Source bounding box: the support disc, clamped to the grid.
    const int rad = static_cast<int>(std::ceil(support_radius / h)) + 1;
    const int a0 = std::max(0, pi - rad), a1 = std::min(n - 1, pi + rad);
    const int b0 = std::max(0, pj - rad), b1 = std::min(n - 1, pj + rad);

    ScalarField psi(g);
    const double scale = -1.0 / (2.0 * M_PI);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int a = a0; a <= a1; ++a) {
                const double* wt = &weights[static_cast<size_t>(std::abs(i - a)) * n];
                const double* src = &w.values[static_cast<size_t>(a) * n];
                int b = b0;
                for (; b <= std::min(j, b1); ++b) acc += wt[j - b] * src[b];
                for (; b <= b1; ++b) acc += wt[b - j] * src[b];
            }
            psi.at(i, j) = scale * acc;
        }
    }
    // Residual midpoint bias from the gradient coupling 2 grad K0 . grad w:
    // summed over cells it equals (h^2/24)(psi + w), since Lap K0 = K0 away
    // from the origin and the singularity contributes the 2 pi w(x) term.
    const double corr = h * h / 24.0;
    for (size_t i = 0; i < psi.values.size(); ++i)
        psi.values[i] -= corr * (psi.values[i] + w.values[i]);
    return psi;
}

}  // namespace tqg
