#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "remd/data.hpp"
#include "remd/field.hpp"
#include "remd/metrics.hpp"
#include "remd/spectral.hpp"
#include "remd/stencils.hpp"

using namespace remd;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

Grid2D unit_grid(int n) { return {n, n, 1.0 / n, 1.0 / n, Boundary::periodic}; }

std::string what_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_SUITE("data") {

TEST_CASE("random fields recover their target spectral slopes") {
    const int n = 128;
    for (double target : {-1.0, -5.0 / 3.0, -3.0}) {
        double acc = 0.0;
        const int trials = 16;
        for (int s = 0; s < trials; ++s) {
            const ScalarField f = gen_grf(Grid2D{n, n}, target, 500 + s);
            const RadialSpectrum sp =
                radial_power_spectrum(f, full_bin_count(n, n));
            acc += fit_loglog_slope(sp, 2.0, n / 4.0);
        }
        const double got = acc / trials;
        CHECK(std::abs(got - target) <= 0.15);
    }
}

TEST_CASE("random fields are exactly normalized") {
    const ScalarField f = gen_grf(Grid2D{128, 128}, -5.0 / 3.0, 77);
    CHECK(std::abs(field_mean(f)) <= 1e-10);
    CHECK(std::abs(field_variance(f) - 1.0) <= 1e-10);
}

TEST_CASE("random field generation is deterministic in the seed") {
    const Grid2D g{32, 32};
    const ScalarField a = gen_grf(g, -3.0, 5);
    const ScalarField b = gen_grf(g, -3.0, 5);
    const ScalarField c = gen_grf(g, -3.0, 6);
    CHECK(a.raw() == b.raw());
    CHECK(a.raw() != c.raw());
    CHECK_THROWS(gen_grf(Grid2D{8, 8, 1, 1, Boundary::reflect}, -3.0, 5));
}

TEST_CASE("the vortex pair is discretely divergence-free") {
    const double amp = 3.7;
    const VectorField2 w = gen_taylor_green(unit_grid(64), amp);
    const ScalarField div = divergence(w);
    for (double v : div.raw()) CHECK(std::abs(v) <= 1e-10 * amp);

    const VectorField2 still = gen_taylor_green(unit_grid(16), 0.0);
    for (double v : still.u.raw()) CHECK(v == 0.0);
    for (double v : still.v.raw()) CHECK(v == 0.0);
}

TEST_CASE("vortex vorticity matches the analytic mode with its symbol") {
    // Both components are single Fourier modes, so the centered difference
    // equals the analytic derivative scaled by sinc(2*pi*h) exactly.
    const int n = 64;
    const double h = 1.0 / n;
    const double amp = 1.0;
    const VectorField2 w = gen_taylor_green(unit_grid(n), amp);
    const ScalarField om = vorticity(w);
    const double symbol = std::sin(kTwoPi * h) / (kTwoPi * h);
    CHECK(std::abs(symbol - 1.0) <= kTwoPi * kTwoPi * h * h / 6.0);
    for (int j = 0; j < n; ++j) {
        const double y = (j + 0.5) * h;
        for (int i = 0; i < n; ++i) {
            const double x = (i + 0.5) * h;
            const double analytic =
                -2.0 * kTwoPi * amp * std::cos(kTwoPi * x) * std::cos(kTwoPi * y);
            CHECK(om(i, j) ==
                  doctest::Approx(analytic * symbol).epsilon(1e-11).scale(1.0));
        }
    }
}

TEST_CASE("dataset generation") {
    const Grid2D g{16, 16};
    const std::vector<ScalarField> d = make_dataset(4, g, -3.0, 9);
    REQUIRE(d.size() == 4);
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j)
            CHECK(d[i].raw() != d[j].raw());

    const std::vector<ScalarField> again = make_dataset(4, g, -3.0, 9);
    for (std::size_t i = 0; i < d.size(); ++i)
        CHECK(d[i].raw() == again[i].raw());

    CHECK(make_dataset(0, g, -3.0, 9).empty());
    CHECK_THROWS(make_dataset(-1, g, -3.0, 9));
}

TEST_CASE("field files round trip bit-exactly") {
    const std::string path = "test_fields_roundtrip.bin";
    Grid2D g{12, 8, 0.25, 0.5, Boundary::reflect};
    std::vector<ScalarField> fields;
    for (int c = 0; c < 3; ++c) {
        ScalarField f(g);
        for (int y = 0; y < g.ny; ++y)
            for (int x = 0; x < g.nx; ++x)
                f(x, y) = std::sin(0.1 * (x + 13 * y + 101 * c)) * 1e-3 + c;
        fields.push_back(std::move(f));
    }
    write_fields(path, fields);
    const std::vector<ScalarField> back = read_fields(path);
    REQUIRE(back.size() == 3);
    for (int c = 0; c < 3; ++c) {
        CHECK(back[c].nx() == 12);
        CHECK(back[c].ny() == 8);
        CHECK(back[c].dx() == 0.25);
        CHECK(back[c].dy() == 0.5);
        CHECK(back[c].boundary() == Boundary::reflect);
        CHECK(back[c].raw() == fields[c].raw());
    }

    SUBCASE("single-field helpers") {
        write_field(path, fields[0]);
        const ScalarField one = read_field(path);
        CHECK(one.raw() == fields[0].raw());
    }

    SUBCASE("multi-channel files are rejected by the single-field reader") {
        const std::string msg =
            what_of([&] { (void)read_field(path); });
        CHECK(msg.find("expected 1 channel") != std::string::npos);
        CHECK(msg.find("found 3") != std::string::npos);
    }

    std::remove(path.c_str());
}

TEST_CASE("field file error handling") {
    const std::string path = "test_fields_bad.bin";

    SUBCASE("writing requires at least one field on a single grid") {
        CHECK_THROWS(write_fields(path, {}));
        CHECK_THROWS(write_fields(
            path, {ScalarField(4, 4), ScalarField(8, 4)}));
    }

    SUBCASE("missing files are reported") {
        CHECK_THROWS(read_fields("no_such_file_anywhere.bin"));
    }

    SUBCASE("foreign magic is rejected") {
        std::ofstream os(path, std::ios::binary);
        os << "JUNKJUNKJUNKJUNKJUNKJUNK";
        os.close();
        const std::string msg = what_of([&] { (void)read_fields(path); });
        CHECK(msg.find("bad magic") != std::string::npos);
    }

    SUBCASE("unknown versions are rejected by number") {
        std::ofstream os(path, std::ios::binary);
        os.write("RMD1", 4);
        const std::uint32_t v = 9;
        os.write(reinterpret_cast<const char*>(&v), 4);
        os.close();
        const std::string msg = what_of([&] { (void)read_fields(path); });
        CHECK(msg.find("unsupported version 9") != std::string::npos);
    }

    SUBCASE("payload truncation is reported with counts") {
        ScalarField f(8, 8);
        for (std::size_t i = 0; i < f.size(); ++i)
            f.raw()[i] = static_cast<double>(i);
        write_fields(path, {f});

        std::ifstream is(path, std::ios::binary);
        std::vector<char> bytes((std::istreambuf_iterator<char>(is)),
                                std::istreambuf_iterator<char>());
        is.close();
        bytes.resize(bytes.size() - 32 * sizeof(double));
        std::ofstream os(path, std::ios::binary | std::ios::trunc);
        os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        os.close();

        const std::string msg = what_of([&] { (void)read_fields(path); });
        CHECK(msg.find("truncated payload") != std::string::npos);
        CHECK(msg.find("expected 64") != std::string::npos);
        CHECK(msg.find("got 32") != std::string::npos);
    }

    SUBCASE("a header cut short is reported") {
        std::ofstream os(path, std::ios::binary);
        os.write("RMD1", 4);
        os.close();
        const std::string msg = what_of([&] { (void)read_fields(path); });
        CHECK(msg.find("truncated") != std::string::npos);
    }

    std::remove(path.c_str());
}

}  // TEST_SUITE
