#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "remd/field.hpp"
#include "remd/mgcorr.hpp"
#include "remd/physics.hpp"
#include "remd/rng.hpp"
#include "remd/transfer.hpp"

using namespace remd;

namespace {

ScalarField random_field(int nx, int ny, std::uint64_t seed) {
    ScalarField f(nx, ny);
    Rng rng(seed);
    for (double& v : f.raw()) v = rng.normal();
    return f;
}

std::array<double, 9> identity_kernel() {
    std::array<double, 9> k{};
    k[4] = 1.0;
    return k;
}

// Smoothers that pass their input through unchanged.
SmootherParams identity_smoothers(int levels) {
    SmootherParams sp;
    for (int l = 0; l <= levels; ++l) {
        sp.kernels.push_back(identity_kernel());
        sp.biases.push_back(0.0);
    }
    return sp;
}

// Gate MLP with zero first layer and a large constant output bias, so every
// gate saturates to the same value regardless of the timestep.
GateParams saturated_gates(int levels, double b2) {
    GateParams gp;
    gp.d_emb = 4;
    gp.hidden = 2;
    gp.n_gates = levels;
    gp.w1.assign(static_cast<std::size_t>(gp.hidden) * gp.d_emb, 0.0);
    gp.b1.assign(gp.hidden, 0.0);
    gp.w2.assign(static_cast<std::size_t>(levels) * gp.hidden, 0.0);
    gp.b2.assign(levels, b2);
    return gp;
}

}  // namespace

TEST_SUITE("mgcorr") {

TEST_CASE("timestep embedding pinned values") {
    const std::vector<double> e0 = timestep_embedding(0.0, 1000.0, 4);
    REQUIRE(e0.size() == 4);
    CHECK(e0[0] == doctest::Approx(0.0));
    CHECK(e0[1] == doctest::Approx(0.0));
    CHECK(e0[2] == doctest::Approx(1.0));
    CHECK(e0[3] == doctest::Approx(1.0));

    // Geometric frequency ladder from 1000 down to 0.1 across d/2 channels.
    const std::vector<double> e = timestep_embedding(500.0, 1000.0, 6);
    const double f0 = 1000.0, f2 = 0.1;
    const double f1 = 1000.0 * std::pow(1e-4, 0.5);
    CHECK(e[0] == doctest::Approx(std::sin(0.5 * f0)).epsilon(1e-12));
    CHECK(e[1] == doctest::Approx(std::sin(0.5 * f1)).epsilon(1e-12));
    CHECK(e[2] == doctest::Approx(std::sin(0.5 * f2)).epsilon(1e-12));
    CHECK(e[3] == doctest::Approx(std::cos(0.5 * f0)).epsilon(1e-12));
    CHECK(e[4] == doctest::Approx(std::cos(0.5 * f1)).epsilon(1e-12));
    CHECK(e[5] == doctest::Approx(std::cos(0.5 * f2)).epsilon(1e-12));

    CHECK_THROWS(timestep_embedding(0.0, 1000.0, 3));
    CHECK_THROWS(timestep_embedding(0.0, 1000.0, 0));
}

TEST_CASE("zero gate MLP outputs 0.5 per level") {
    const GateParams gp = saturated_gates(3, 0.0);
    const std::vector<double> w = gate_weights(500.0, 1000.0, gp);
    REQUIRE(w.size() == 3);
    for (double v : w) CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("gates stay in (0,1) across timesteps and random parameters") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const GateParams gp = init_gates(4, seed);
        for (int t = 0; t <= 1000; t += 10) {
            const std::vector<double> w = gate_weights(t, 1000.0, gp);
            REQUIRE(w.size() == 4);
            for (double v : w) {
                CHECK(v > 0.0);
                CHECK(v < 1.0);
            }
        }
    }
}

TEST_CASE("smoother pinned applications") {
    const ScalarField x = random_field(5, 5, 91);

    SUBCASE("identity kernel passes through; bias shifts") {
        const ScalarField y = smoother_apply(x, identity_kernel(), 0.0);
        for (std::size_t i = 0; i < x.size(); ++i) CHECK(y.raw()[i] == x.raw()[i]);
        const ScalarField yb = smoother_apply(x, identity_kernel(), 2.5);
        for (std::size_t i = 0; i < x.size(); ++i)
            CHECK(yb.raw()[i] == doctest::Approx(x.raw()[i] + 2.5));
    }

    SUBCASE("averaging kernel spreads an impulse over the periodic 3x3 block") {
        ScalarField imp(4, 4);
        imp(0, 0) = 9.0;
        std::array<double, 9> k;
        k.fill(1.0 / 9.0);
        const ScalarField y = smoother_apply(imp, k);
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i) {
                const bool near = (i <= 1 || i == 3) && (j <= 1 || j == 3);
                CHECK(y(i, j) == doctest::Approx(near ? 1.0 : 0.0).epsilon(1e-13));
            }
    }

    SUBCASE("asymmetric kernel matches a hand-rolled cross-correlation") {
        std::array<double, 9> k{0.1, -0.2, 0.3, 0.4, 0.5, -0.6, 0.7, 0.8, -0.9};
        const ScalarField y = smoother_apply(x, k, 0.25);
        for (int yy = 0; yy < 5; ++yy)
            for (int xx = 0; xx < 5; ++xx) {
                double acc = 0.25;
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx)
                        acc += k[(dy + 1) * 3 + (dx + 1)] *
                               x((xx + dx + 5) % 5, (yy + dy + 5) % 5);
                CHECK(y(xx, yy) == doctest::Approx(acc).epsilon(1e-13));
            }
    }
}

TEST_CASE("corrector with closed gates and identity smoother is the identity") {
    const WaveletFilterBank fb = make_filterbank("haar");
    const LevelHierarchy hier = build_hierarchy(16, 16, 2, fb);
    const SmootherParams sp = identity_smoothers(2);
    const GateParams gp = saturated_gates(2, -40.0);  // gates ~ 0
    const ScalarField r = random_field(16, 16, 92);
    const ScalarField s = corrector_apply(r, 300.0, 1000.0, sp, gp, hier);
    for (std::size_t i = 0; i < r.size(); ++i)
        CHECK(s.raw()[i] == doctest::Approx(r.raw()[i]).epsilon(1e-12));
}

TEST_CASE("corrector with open gates matches the explicit composition") {
    const WaveletFilterBank fb = make_filterbank("haar");
    const LevelHierarchy hier = build_hierarchy(16, 16, 1, fb);
    const SmootherParams sp = identity_smoothers(1);
    const GateParams gp = saturated_gates(1, 40.0);  // gates ~ 1
    const ScalarField r = random_field(16, 16, 93);
    const ScalarField s = corrector_apply(r, 300.0, 1000.0, sp, gp, hier);
    const ScalarField expect = add(r, wavelet_prolong(wavelet_restrict(r, fb), fb));
    for (std::size_t i = 0; i < r.size(); ++i)
        CHECK(s.raw()[i] == doctest::Approx(expect.raw()[i]).epsilon(1e-11));
}

TEST_CASE("open-gate corrector on special inputs") {
    const WaveletFilterBank fb = make_filterbank("haar");
    const LevelHierarchy hier = build_hierarchy(16, 16, 2, fb);
    const SmootherParams sp = identity_smoothers(2);
    const GateParams gp = saturated_gates(2, 40.0);

    SUBCASE("constants accumulate one copy per active level") {
        const ScalarField c = field_fill(Grid2D{16, 16}, 1.5);
        const ScalarField s = corrector_apply(c, 100.0, 1000.0, sp, gp, hier);
        for (std::size_t i = 0; i < c.size(); ++i)
            CHECK(s.raw()[i] == doctest::Approx(3.0 * 1.5).epsilon(1e-11));
    }

    SUBCASE("checkerboards never reach the coarse levels") {
        ScalarField cb(16, 16);
        for (int j = 0; j < 16; ++j)
            for (int i = 0; i < 16; ++i) cb(i, j) = ((i + j) % 2 == 0) ? 1.0 : -1.0;
        const ScalarField s = corrector_apply(cb, 100.0, 1000.0, sp, gp, hier);
        for (std::size_t i = 0; i < cb.size(); ++i)
            CHECK(s.raw()[i] == doctest::Approx(cb.raw()[i]).epsilon(1e-12));
    }
}

TEST_CASE("corrector with zero kernels returns zero") {
    const WaveletFilterBank fb = make_filterbank("haar");
    const LevelHierarchy hier = build_hierarchy(16, 16, 2, fb);
    SmootherParams sp;
    for (int l = 0; l <= 2; ++l) {
        sp.kernels.push_back(std::array<double, 9>{});
        sp.biases.push_back(0.0);
    }
    const GateParams gp = init_gates(2, 5);
    const ScalarField r = random_field(16, 16, 94);
    CHECK(field_norms(corrector_apply(r, 500.0, 1000.0, sp, gp, hier)).linf <= 1e-13);
}

TEST_CASE("corrector is linear in its input at fixed timestep") {
    const WaveletFilterBank fb = make_filterbank("db2");
    const LevelHierarchy hier = build_hierarchy(32, 32, 3, fb);
    const SmootherParams sp = init_smoothers(3, 7);
    const GateParams gp = init_gates(3, 8);
    const ScalarField x = random_field(32, 32, 95);
    const ScalarField y = random_field(32, 32, 96);
    const double a = -2.3;
    const ScalarField lhs =
        corrector_apply(field_axpy(a, x, y), 250.0, 1000.0, sp, gp, hier);
    const ScalarField sx = corrector_apply(x, 250.0, 1000.0, sp, gp, hier);
    const ScalarField sy = corrector_apply(y, 250.0, 1000.0, sp, gp, hier);
    // biases are zero at init, so the map is linear (not merely affine)
    const ScalarField rhs = field_axpy(a, sx, sy);
    for (std::size_t i = 0; i < lhs.size(); ++i)
        CHECK(lhs.raw()[i] == doctest::Approx(rhs.raw()[i])
                                  .epsilon(1e-11)
                                  .scale(std::max(1.0, std::abs(rhs.raw()[i]))));
}

TEST_CASE("coarse-level work stays within twice the finest-level cost") {
    const WaveletFilterBank fb = make_filterbank("haar");
    for (int levels : {1, 2, 3, 4}) {
        const LevelHierarchy hier = build_hierarchy(64, 64, levels, fb);
        const SmootherParams sp = init_smoothers(levels, 1);
        const GateParams gp = init_gates(levels, 2);
        const ScalarField r = random_field(64, 64, 97);
        mg_op_count_reset();
        (void)corrector_apply(r, 500.0, 1000.0, sp, gp, hier);
        const std::uint64_t finest = 9ull * 64 * 64;
        std::uint64_t expect = 0;
        for (int l = 0; l <= levels; ++l) expect += 9ull * (64 >> l) * (64 >> l);
        CHECK(mg_op_count() == expect);
        CHECK(mg_op_count() <= 2 * finest);
    }
}

TEST_CASE("initialization pinned structure") {
    const SmootherParams sp = init_smoothers(2, 42);
    REQUIRE(sp.levels() == 2);
    for (int l = 0; l <= 2; ++l) {
        CHECK(sp.biases[l] == 0.0);
        for (int k = 0; k < 9; ++k) {
            const double target = (k == 4) ? 1.0 : 0.0;
            CHECK(std::abs(sp.kernels[l][k] - target) <= 0.1);
        }
        CHECK(std::abs(sp.kernels[l][4] - 1.0) > 0.0);  // noise actually applied
    }
    const GateParams gp = init_gates(2, 42);
    CHECK(gp.d_emb == 32);
    CHECK(gp.hidden == 32);
    CHECK(gp.n_gates == 2);
    for (double v : gp.b1) CHECK(v == 0.0);
    for (double v : gp.b2) CHECK(v == 0.0);
    for (double v : gp.w1) CHECK(std::abs(v) <= 0.1);
    for (double v : gp.w2) CHECK(std::abs(v) <= 0.1);

    const SmootherParams sp2 = init_smoothers(2, 42);
    const GateParams gp2 = init_gates(2, 42);
    CHECK(sp2.kernels == sp.kernels);
    CHECK(gp2.w1 == gp.w1);
}

TEST_CASE("assembled residual pinned compositions") {
    const WaveletFilterBank fb = make_filterbank("haar");
    PhysicsConfig cfg;
    cfg.kappa = 0.5;

    SUBCASE("consistent input and lambda(0) = 0 gives a zero residual") {
        const ScalarField u = random_field(16, 16, 98);
        const ScalarField lr = restrict_avg_n(u, 2);
        const ScalarField anchor = lift_residual(lr, fb, 2);
        const ScalarField r = assemble_residual(u, lr, anchor, fb, cfg, 0, 1000);
        CHECK(field_norms(r).linf <= 1e-12);
    }

    SUBCASE("pure data mismatch when physics weights vanish") {
        PhysicsConfig zero = cfg;
        zero.w_lap = zero.w_bi = zero.w_aniso = zero.w_spec = 0.0;
        const ScalarField u = random_field(16, 16, 99);
        const ScalarField lr = random_field(4, 4, 100);
        const ScalarField anchor = lift_residual(lr, fb, 2);
        const ScalarField r = assemble_residual(u, lr, anchor, fb, zero, 1000, 1000);
        const ScalarField expect =
            lift_residual(sub(lr, restrict_avg_n(u, 2)), fb, 2);
        for (std::size_t i = 0; i < r.size(); ++i)
            CHECK(r.raw()[i] == doctest::Approx(expect.raw()[i]).epsilon(1e-12));
    }

    SUBCASE("data and physics parts compose additively") {
        const ScalarField u = random_field(16, 16, 101);
        const ScalarField lr = random_field(8, 8, 102);
        const ScalarField anchor = lift_residual(lr, fb, 1);
        const int t = 700, T = 1000;
        const ScalarField r = assemble_residual(u, lr, anchor, fb, cfg, t, T);
        ScalarField expect = lift_residual(sub(lr, restrict_avg(u)), fb, 1);
        axpy(lambda_schedule(t, T, cfg.lambda_max),
             combine_physics(u, anchor, cfg, t, T), expect);
        for (std::size_t i = 0; i < r.size(); ++i)
            CHECK(r.raw()[i] == doctest::Approx(expect.raw()[i])
                                    .epsilon(1e-12)
                                    .scale(std::max(1.0, std::abs(expect.raw()[i]))));
    }

    SUBCASE("incompatible shapes are rejected") {
        const ScalarField u = random_field(16, 16, 103);
        CHECK_THROWS(assemble_residual(u, random_field(5, 5, 104),
                                       random_field(16, 16, 105), fb, cfg, 10, 1000));
        CHECK_THROWS(assemble_residual(u, random_field(32, 32, 106),
                                       random_field(16, 16, 107), fb, cfg, 10, 1000));
    }
}

}  // TEST_SUITE
