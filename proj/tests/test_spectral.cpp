#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <thread>

#include "test_util.hpp"
#include "tqg/random_field.hpp"
#include "tqg/spectral.hpp"

using namespace tqg;
using namespace tqg::test;

namespace {

// Independent O(n^4) DFT oracle with the same 1/n^2 normalization.
SpectralField naive_dft(const ScalarField& f) {
    const int n = f.grid.n;
    SpectralField out(f.grid);
    for (int ki = 0; ki < n; ++ki) {
        for (int kj = 0; kj < n; ++kj) {
            std::complex<double> sum = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const double angle =
                        -2.0 * M_PI * (double(f.grid.mode(ki)) * i + double(f.grid.mode(kj)) * j) / n;
                    sum += f.at(i, j) * std::polar(1.0, angle);
                }
            out.at(ki, kj) = sum / double(n * n);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("grid invariants are enforced") {
    CHECK_THROWS_AS(Grid(15, 1.0), std::invalid_argument);   // odd
    CHECK_THROWS_AS(Grid(14, 1.0), std::invalid_argument);   // too small
    CHECK_THROWS_AS(Grid(16, 0.0), std::invalid_argument);   // length
    Grid g(16, 2.0);
    CHECK(g.mode(0) == 0);
    CHECK(g.mode(7) == 7);
    CHECK(g.mode(8) == -8);
    CHECK(g.mode(15) == -1);
    CHECK(g.wavenumber(1) == doctest::Approx(M_PI));

    Grid g2(32, 2.0);
    CHECK_THROWS_AS(VectorField(ScalarField(g), ScalarField(g2)),
                    std::invalid_argument);
}

TEST_CASE("real fields transform to conjugate-symmetric coefficients") {
    Grid g(32, 2.0 * M_PI);
    ScalarField f = random_bandlimited(g, 41, -1.5, 10, 1.0);
    SpectralField fh = forward_transform(f);
    const int n = g.n;
    double worst = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            worst = std::max(worst, std::abs(fh.at(i, j) -
                                             std::conj(fh.at((n - i) % n, (n - j) % n))));
    CHECK(worst < 1e-15);
}

TEST_CASE("forward transform matches a naive DFT oracle") {
    Grid g(16, 2.0 * M_PI);
    ScalarField f = make_field(g, [](double x, double y) {
        return std::sin(x) + 0.3 * std::cos(2 * x + y) + 0.1 * std::sin(3 * y);
    });
    SpectralField fast = forward_transform(f);
    SpectralField slow = naive_dft(f);
    double m = 0;
    for (size_t i = 0; i < fast.coeffs.size(); ++i)
        m = std::max(m, std::abs(fast.coeffs[i] - slow.coeffs[i]));
    CHECK(m < 1e-13);
}

TEST_CASE("zero field transforms to all-zero coefficients") {
    Grid g(32, 2.0 * M_PI);
    SpectralField fh = forward_transform(ScalarField(g));
    for (const auto& c : fh.coeffs) CHECK(std::abs(c) == 0.0);
}

TEST_CASE("single sine mode has exactly two nonzero coefficients") {
    Grid g(64, 5.0);
    ScalarField f = make_field(g, [&](double x, double) {
        return std::sin(2.0 * M_PI * x / 5.0);
    });
    SpectralField fh = forward_transform(f);
    // expected: -i/2 at m=(1,0), +i/2 at m=(-1,0)
    CHECK(std::abs(fh.at(1, 0) - std::complex<double>(0, -0.5)) < 1e-14);
    CHECK(std::abs(fh.at(63, 0) - std::complex<double>(0, 0.5)) < 1e-14);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            if ((i == 1 || i == 63) && j == 0) continue;
            CHECK(std::abs(fh.at(i, j)) < 1e-14);
        }
}

TEST_CASE("transform round-trip is the identity to 1e-12 relative") {
    Grid g(48, 3.0);
    ScalarField f = random_bandlimited(g, 7, -2.0, 12, 2.5);
    ScalarField back = inverse_transform(forward_transform(f));
    CHECK(max_abs_diff(f, back) <= 1e-12 * max_abs(f));
}

TEST_CASE("non-finite input is rejected") {
    Grid g(16, 1.0);
    ScalarField f(g);
    f.at(3, 4) = std::nan("");
    CHECK_THROWS_AS(forward_transform(f), std::invalid_argument);
}

TEST_CASE("Parseval: spectral L2 equals grid quadrature") {
    Grid g(64, 2.0 * M_PI);
    ScalarField f = random_bandlimited(g, 11, -1.5, 20, 1.7);
    // independent route: trapezoid quadrature of f^2 (exact for periodic data)
    double quad = 0;
    for (double v : f.values) quad += v * v;
    quad *= g.dx() * g.dx();
    const double spectral = sobolev_norm(f, 0.0);
    CHECK(std::abs(spectral * spectral - quad) <= 1e-10 * quad);
}

TEST_CASE("spectral derivatives of a single mode are analytic") {
    Grid g(64, 2.0 * M_PI);
    ScalarField f = make_field(g, [](double x, double) { return std::sin(x); });
    SpectralField fh = forward_transform(f);

    ScalarField dx = inverse_transform(spectral_derivative(fh, 0, 1));
    ScalarField expected = make_field(g, [](double x, double) { return std::cos(x); });
    CHECK(max_abs_diff(dx, expected) < 1e-10);

    ScalarField dxx = inverse_transform(spectral_derivative(fh, 0, 2));
    ScalarField expected2 = make_field(g, [](double x, double) { return -std::sin(x); });
    CHECK(max_abs_diff(dxx, expected2) < 1e-10);
}

TEST_CASE("derivative of a constant field vanishes") {
    Grid g(32, 4.0);
    ScalarField f = make_field(g, [](double, double) { return 3.25; });
    SpectralField fh = forward_transform(f);
    CHECK(max_abs(inverse_transform(spectral_derivative(fh, 0, 1))) < 1e-13);
    CHECK(max_abs(inverse_transform(spectral_derivative(fh, 1, 1))) < 1e-13);
}

TEST_CASE("Nyquist mode is zeroed for odd derivative orders only") {
    Grid g(16, 2.0 * M_PI);
    SpectralField f(g);
    f.at(g.n / 2, 0) = {1.0, 0.0};  // the m = -n/2 line
    SpectralField d1 = spectral_derivative(f, 0, 1);
    CHECK(std::abs(d1.at(g.n / 2, 0)) == 0.0);
    SpectralField d2 = spectral_derivative(f, 0, 2);
    CHECK(std::abs(d2.at(g.n / 2, 0)) ==
          doctest::Approx(64.0));  // (-n/2 * 2pi/L)^2 = 8^2
    SpectralField dy = spectral_derivative(f, 1, 1);  // other axis unaffected
    CHECK(std::abs(dy.at(g.n / 2, 0)) == 0.0);        // k_y = 0 anyway
}

TEST_CASE("mixed partials commute") {
    Grid g(48, 2.0 * M_PI);
    ScalarField f = random_bandlimited(g, 3, -2.0, 14, 1.0);
    SpectralField fh = forward_transform(f);
    ScalarField dxy =
        inverse_transform(spectral_derivative(spectral_derivative(fh, 0, 1), 1, 1));
    ScalarField dyx =
        inverse_transform(spectral_derivative(spectral_derivative(fh, 1, 1), 0, 1));
    CHECK(max_abs_diff(dxy, dyx) <= 1e-12 * std::max(max_abs(dxy), 1e-30));
}

TEST_CASE("perp gradient and divergence identities") {
    Grid g(64, 2.0 * M_PI);
    ScalarField f = make_field(g, [](double x, double) { return std::sin(x); });
    VectorField pg = perp_gradient(f);
    CHECK(max_abs(pg.x_comp) < 1e-12);
    ScalarField expected = make_field(g, [](double x, double) { return std::cos(x); });
    CHECK(max_abs_diff(pg.y_comp, expected) < 1e-10);

    ScalarField c = make_field(g, [](double, double) { return -1.5; });
    VectorField gc = gradient(c);
    CHECK(max_abs(gc.x_comp) < 1e-13);
    CHECK(max_abs(gc.y_comp) < 1e-13);

    // div(perp_grad f) = 0 to machine precision for random band-limited f
    ScalarField r = random_bandlimited(g, 5, -2.0, 20, 1.0);
    ScalarField div = divergence(perp_gradient(r));
    CHECK(max_abs(div) < 1e-12 * std::max(1.0, grad_sup_norm(r)));
}

TEST_CASE("dealias removes exactly the top third of modes") {
    Grid g(64, 2.0 * M_PI);
    SpectralField low(g);
    low.at(1, 0) = {0, -0.5};
    low.at(63, 0) = {0, 0.5};
    SpectralField cut = dealias(low);
    CHECK(std::abs(cut.at(1, 0) - low.at(1, 0)) == 0.0);

    SpectralField high(g);
    high.at(31, 0) = {0, -0.5};  // 3*31 > 64
    high.at(33, 0) = {0, 0.5};
    SpectralField gone = dealias(high);
    for (const auto& c : gone.coeffs) CHECK(std::abs(c) == 0.0);
}

TEST_CASE("dealias is an orthogonal projection") {
    Grid g(48, 1.0);
    ScalarField f = random_bandlimited(g, 13, -1.0, 23, 1.0);
    SpectralField fh = forward_transform(f);
    SpectralField once = dealias(fh);
    SpectralField twice = dealias(once);
    double m = 0;
    for (size_t i = 0; i < once.coeffs.size(); ++i)
        m = std::max(m, std::abs(once.coeffs[i] - twice.coeffs[i]));
    CHECK(m == 0.0);
    CHECK(sobolev_norm(once, 0.0) <= sobolev_norm(fh, 0.0) * (1 + 1e-15));
}

TEST_CASE("sobolev norm of sin(x) on the 2pi torus") {
    Grid g(64, 2.0 * M_PI);
    ScalarField f = make_field(g, [](double x, double) { return std::sin(x); });
    const double l2 = std::sqrt(2.0 * M_PI * M_PI);
    CHECK(sobolev_norm(f, 0.0) == doctest::Approx(l2).epsilon(1e-12));
    CHECK(sobolev_norm(f, 1.0) == doctest::Approx(std::sqrt(2.0) * l2).epsilon(1e-12));
    CHECK(sobolev_norm(ScalarField(g), 2.0) == 0.0);
}

TEST_CASE("sobolev norm is monotone in s") {
    Grid g(32, 2.0);
    ScalarField f = random_bandlimited(g, 29, -2.0, 9, 1.0);
    double prev = sobolev_norm(f, -4.0);
    for (double s : {-2.0, -1.0, 0.0, 0.5, 1.0, 2.0, 3.0, 4.0}) {
        const double cur = sobolev_norm(f, s);
        CHECK(cur >= prev * (1 - 1e-13));
        prev = cur;
    }
    CHECK_THROWS_AS(sobolev_norm(f, 4.5), std::invalid_argument);
}

TEST_CASE("operations are safe to call from concurrent threads") {
    Grid g(64, 2.0 * M_PI);
    std::vector<ScalarField> inputs;
    for (uint64_t seed = 1; seed <= 4; ++seed)
        inputs.push_back(random_bandlimited(g, seed, -2.0, 15, 1.0));
    std::vector<double> expected;
    for (const auto& f : inputs)
        expected.push_back(sobolev_norm(inverse_transform(forward_transform(f)), 2.0));

    std::vector<double> got(inputs.size());
    std::vector<std::thread> threads;
    for (size_t i = 0; i < inputs.size(); ++i)
        threads.emplace_back([&, i] {
            for (int rep = 0; rep < 20; ++rep)
                got[i] = sobolev_norm(
                    inverse_transform(forward_transform(inputs[i])), 2.0);
        });
    for (auto& t : threads) t.join();
    for (size_t i = 0; i < inputs.size(); ++i) CHECK(got[i] == expected[i]);
}

TEST_CASE("sup norms") {
    Grid g(64, 2.0 * M_PI);  // n divisible by 4: the grid contains x = pi/2
    ScalarField f = make_field(g, [](double x, double) { return std::sin(x); });
    CHECK(sup_norm(f) == 1.0);
    ScalarField c = make_field(g, [](double, double) { return -2.5; });
    CHECK(sup_norm(c) == 2.5);
    CHECK(grad_sup_norm(f) == doctest::Approx(1.0).epsilon(1e-10));
}
