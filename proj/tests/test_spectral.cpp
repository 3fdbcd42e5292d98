#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "remd/data.hpp"
#include "remd/field.hpp"
#include "remd/rng.hpp"
#include "remd/spectral.hpp"
#include "remd/stencils.hpp"

using namespace remd;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

ScalarField random_field(int nx, int ny, std::uint64_t seed) {
    ScalarField f(nx, ny);
    Rng rng(seed);
    for (double& v : f.raw()) v = rng.normal();
    return f;
}

// Quadratic-cost reference DFT, written independently of the library route.
Spectrum2D naive_dft2(const ScalarField& x) {
    const int nx = x.nx(), ny = x.ny();
    Spectrum2D s;
    s.nx = nx;
    s.ny = ny;
    s.dx = x.grid().dx;
    s.dy = x.grid().dy;
    s.c.assign(static_cast<std::size_t>(nx) * ny, {0.0, 0.0});
    for (int ky = 0; ky < ny; ++ky)
        for (int kx = 0; kx < nx; ++kx) {
            std::complex<double> acc{0.0, 0.0};
            for (int j = 0; j < ny; ++j)
                for (int i = 0; i < nx; ++i) {
                    const double ph =
                        -kTwoPi * (static_cast<double>(kx) * i / nx +
                                   static_cast<double>(ky) * j / ny);
                    acc += x(i, j) * std::complex<double>(std::cos(ph), std::sin(ph));
                }
            s.c[static_cast<std::size_t>(ky) * nx + kx] = acc;
        }
    return s;
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("constant field transforms to a pure DC coefficient") {
    const ScalarField x = field_fill(Grid2D{8, 8}, 3.0);
    const Spectrum2D s = dft2(x);
    CHECK(s.c[0].real() == doctest::Approx(3.0 * 64).epsilon(1e-12));
    CHECK(std::abs(s.c[0].imag()) <= 1e-10);
    for (std::size_t k = 1; k < s.c.size(); ++k) CHECK(std::abs(s.c[k]) <= 1e-10);
}

TEST_CASE("single cosine mode concentrates in two conjugate coefficients") {
    const int n = 16, k = 3;
    ScalarField x(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) x(i, j) = std::cos(kTwoPi * k * i / n);
    const Spectrum2D s = dft2(x);
    for (int ky = 0; ky < n; ++ky)
        for (int kx = 0; kx < n; ++kx) {
            const std::complex<double> c = s.c[static_cast<std::size_t>(ky) * n + kx];
            if (ky == 0 && (kx == k || kx == n - k)) {
                CHECK(c.real() == doctest::Approx(n * n / 2.0).epsilon(1e-10));
                CHECK(std::abs(c.imag()) <= 1e-8);
            } else {
                CHECK(std::abs(c) <= 1e-8);
            }
        }
}

TEST_CASE("library DFT matches the quadratic-cost reference on random data") {
    const ScalarField x = random_field(8, 8, 11);
    const Spectrum2D fast = dft2(x);
    const Spectrum2D slow = naive_dft2(x);
    REQUIRE(fast.c.size() == slow.c.size());
    for (std::size_t k = 0; k < fast.c.size(); ++k)
        CHECK(std::abs(fast.c[k] - slow.c[k]) <= 1e-10);
}

TEST_CASE("round trip dft2 -> idft2 is the identity") {
    const ScalarField x = random_field(16, 12, 12);
    const ScalarField back = idft2(dft2(x));
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(back.raw()[i] == doctest::Approx(x.raw()[i]).epsilon(1e-12));
}

TEST_CASE("full_bin_count covers the corner mode") {
    CHECK(full_bin_count(8, 8) == static_cast<int>(std::floor(std::sqrt(32.0))) + 1);
    CHECK(full_bin_count(32, 32) == 23);
    CHECK(full_bin_count(16, 8) == static_cast<int>(std::floor(std::sqrt(64 + 16.0))) + 1);
}

TEST_CASE("radial binning drops a single mode into its annulus") {
    const int n = 16, k = 3;
    ScalarField x(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) x(i, j) = std::cos(kTwoPi * k * i / n);
    const RadialSpectrum s = radial_power_spectrum(x, full_bin_count(n, n));
    for (std::size_t m = 0; m < s.power.size(); ++m) {
        if (m == static_cast<std::size_t>(k)) {
            // Two conjugate modes, each |F|^2/(n^2)^2 = 1/4, among count[m] modes.
            CHECK(s.power[m] * s.count[m] == doctest::Approx(0.5).epsilon(1e-10));
        } else {
            CHECK(s.power[m] * s.count[m] <= 1e-12);
        }
    }
}

TEST_CASE("radial binning matches a direct per-mode loop") {
    const ScalarField x = random_field(12, 12, 13);
    const int nbins = full_bin_count(12, 12);
    const RadialSpectrum s = radial_power_spectrum(x, nbins);
    const Spectrum2D f = dft2(x);
    std::vector<double> sum(nbins, 0.0), cnt(nbins, 0.0);
    for (int ky = 0; ky < 12; ++ky)
        for (int kx = 0; kx < 12; ++kx) {
            const int sx = kx > 6 ? kx - 12 : kx;
            const int sy = ky > 6 ? ky - 12 : ky;
            int m = static_cast<int>(std::floor(std::sqrt(double(sx) * sx + double(sy) * sy)));
            if (m >= nbins) m = nbins - 1;
            const double p =
                std::norm(f.c[static_cast<std::size_t>(ky) * 12 + kx]) / (144.0 * 144.0);
            sum[m] += p;
            cnt[m] += 1.0;
        }
    for (int m = 0; m < nbins; ++m) {
        CHECK(s.count[m] == doctest::Approx(cnt[m]));
        CHECK(s.power[m] == doctest::Approx(cnt[m] > 0 ? sum[m] / cnt[m] : 0.0).epsilon(1e-11));
        CHECK(s.bin_edges[m] == doctest::Approx(double(m)));
    }
}

TEST_CASE("Parseval: total binned power equals the mean square") {
    const ScalarField x = random_field(32, 32, 14);
    const RadialSpectrum s = radial_power_spectrum(x, full_bin_count(32, 32));
    double total = 0.0;
    for (std::size_t m = 0; m < s.power.size(); ++m) total += s.power[m] * s.count[m];
    double ms = 0.0;
    for (double v : x.raw()) ms += v * v;
    ms /= x.size();
    CHECK(total == doctest::Approx(ms).epsilon(1e-10));
}

TEST_CASE("white noise has a flat radial spectrum") {
    const int n = 64;
    const int nbins = full_bin_count(n, n);
    std::vector<double> mean_power(nbins, 0.0);
    const int nseeds = 32;
    for (int s = 0; s < nseeds; ++s) {
        const RadialSpectrum r =
            radial_power_spectrum(random_field(n, n, 100 + s), nbins);
        for (int m = 0; m < nbins; ++m) mean_power[m] += r.power[m] / nseeds;
    }
    // Expected per-mode power of unit white noise is 1/n^2.
    const double expect = 1.0 / (n * n);
    for (int m = 1; m + 1 < nbins; ++m)
        CHECK(std::abs(mean_power[m] / expect - 1.0) <= 0.20);
}

TEST_CASE("error spectrum is the power spectrum of the difference") {
    const ScalarField a = random_field(16, 16, 15);
    const ScalarField b = random_field(16, 16, 16);
    const int nbins = full_bin_count(16, 16);
    const RadialSpectrum e = radial_error_spectrum(a, b, nbins);
    const RadialSpectrum d = radial_power_spectrum(sub(a, b), nbins);
    for (int m = 0; m < nbins; ++m) {
        CHECK(e.power[m] == doctest::Approx(d.power[m]).epsilon(1e-12));
        CHECK(e.count[m] == doctest::Approx(d.count[m]));
    }
    const RadialSpectrum z = radial_error_spectrum(a, a, nbins);
    for (int m = 0; m < nbins; ++m) CHECK(z.power[m] <= 1e-24);
}

TEST_CASE("spectral_filter with unit weights is the identity") {
    const ScalarField x = random_field(16, 16, 17);
    const std::vector<double> w(full_bin_count(16, 16), 1.0);
    const ScalarField y = spectral_filter(x, w);
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(y.raw()[i] == doctest::Approx(x.raw()[i]).epsilon(1e-12));
}

TEST_CASE("spectral_filter with zero weights returns zero") {
    const ScalarField x = random_field(16, 16, 18);
    const std::vector<double> w(full_bin_count(16, 16), 0.0);
    CHECK(field_norms(spectral_filter(x, w)).linf <= 1e-13);
}

TEST_CASE("spectral_filter isolates a single annulus") {
    const int n = 16;
    ScalarField x(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            x(i, j) = std::cos(kTwoPi * 2 * i / n) + std::cos(kTwoPi * 5 * j / n);
    std::vector<double> w(full_bin_count(n, n), 0.0);
    w[5] = 1.0;
    const ScalarField y = spectral_filter(x, w);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            CHECK(y(i, j) == doctest::Approx(std::cos(kTwoPi * 5 * j / n)).epsilon(1e-10));
}

TEST_CASE("spectral_filter rejects a weight table that misses bins") {
    const ScalarField x = random_field(16, 16, 19);
    const std::vector<double> w(3, 1.0);
    CHECK_THROWS(spectral_filter(x, w));
}

TEST_CASE("helmholtz projection removes gradient fields") {
    const ScalarField phi = random_field(16, 16, 20);
    const VectorField2 g = gradient(phi);
    // The discrete-gradient field is curl-free; its projection is the mean flow.
    const VectorField2 p = helmholtz_project(g);
    CHECK(field_norms(p.u).linf <= 1e-10);
    CHECK(field_norms(p.v).linf <= 1e-10);
}

TEST_CASE("helmholtz projection is idempotent and kills spectral divergence") {
    VectorField2 w{random_field(16, 16, 21), random_field(16, 16, 22)};
    const VectorField2 p = helmholtz_project(w);
    CHECK(spectral_divergence_norm(p) <= 1e-10 * (field_norms(p.u).l2 + 1.0));
    const VectorField2 pp = helmholtz_project(p);
    for (std::size_t i = 0; i < p.u.size(); ++i) {
        CHECK(pp.u.raw()[i] == doctest::Approx(p.u.raw()[i]).epsilon(1e-11));
        CHECK(pp.v.raw()[i] == doctest::Approx(p.v.raw()[i]).epsilon(1e-11));
    }
}

TEST_CASE("helmholtz projection leaves a divergence-free flow unchanged") {
    const VectorField2 tg = gen_taylor_green(Grid2D{32, 32, 1.0 / 32, 1.0 / 32}, 1.0);
    const VectorField2 p = helmholtz_project(tg);
    for (std::size_t i = 0; i < tg.u.size(); ++i) {
        CHECK(p.u.raw()[i] == doctest::Approx(tg.u.raw()[i]).epsilon(1e-10));
        CHECK(p.v.raw()[i] == doctest::Approx(tg.v.raw()[i]).epsilon(1e-10));
    }
}

TEST_CASE("loglog slope fit recovers an exact power law") {
    RadialSpectrum s;
    for (int m = 0; m < 16; ++m) {
        s.bin_edges.push_back(m);
        s.power.push_back(m >= 1 ? 2.0 * std::pow(double(m), -3.0) : 0.0);
        s.count.push_back(1.0);
    }
    CHECK(fit_loglog_slope(s, 1.0, 14.0) == doctest::Approx(-3.0).epsilon(1e-10));
}

}  // TEST_SUITE
