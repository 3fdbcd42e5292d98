#include <doctest.h>

#include <cmath>
#include <vector>

#include "remd/schedule.hpp"

using namespace remd;

namespace {

// Independent evaluation of the pinned cosine law.
double cosine_alphabar(int t, int T, double s) {
    auto f = [&](double x) {
        const double c = std::cos(((x / T + s) / (1.0 + s)) * M_PI / 2.0);
        return c * c;
    };
    return f(static_cast<double>(t)) / f(0.0);
}

}  // namespace

TEST_SUITE("schedule") {

TEST_CASE("cosine schedule endpoints and range") {
    const TimestepSchedule s = make_cosine_schedule(1000);
    REQUIRE(s.T == 1000);
    REQUIRE(s.alphabar.size() == 1001);
    CHECK(s.alphabar[0] == 1.0);
    CHECK(s.alphabar[1000] < 1e-3);
    for (int t = 0; t <= 1000; ++t) {
        CHECK(s.alphabar[t] > 0.0);
        CHECK(s.alphabar[t] <= 1.0);
    }
}

TEST_CASE("cosine law matches the closed form") {
    const TimestepSchedule s = make_cosine_schedule(1000);
    for (int t : {0, 1, 7, 150, 500, 877, 1000})
        CHECK(s.alphabar[t] ==
              doctest::Approx(cosine_alphabar(t, 1000, 0.008)).epsilon(1e-12));
    const TimestepSchedule s2 = make_cosine_schedule(250, 0.02);
    for (int t : {0, 10, 125, 250})
        CHECK(s2.alphabar[t] ==
              doctest::Approx(cosine_alphabar(t, 250, 0.02)).epsilon(1e-12));
}

TEST_CASE("alphabar decreases strictly") {
    for (int T : {2, 3, 10, 100, 1000}) {
        const TimestepSchedule s = make_cosine_schedule(T);
        for (int t = 1; t <= T; ++t) CHECK(s.alphabar[t] < s.alphabar[t - 1]);
    }
}

TEST_CASE("reverse coefficients: clipping, beta = alpha, sigma = 0") {
    const TimestepSchedule s = make_cosine_schedule(1000);
    for (int t = 1; t <= 1000; ++t) {
        CHECK(s.alpha[t] >= 0.05);
        CHECK(s.alpha[t] <= 1.0);
        CHECK(s.beta[t] == s.alpha[t]);
        CHECK(s.sigma[t] == 0.0);
    }
    // t = 1 divides by 1 - alphabar_0 = 0 and resolves to the upper clip.
    CHECK(s.alpha[1] == 1.0);
    // Away from the endpoints the raw ratio is inside the clip band.
    const double raw = 0.5 * (1.0 - s.alphabar[800]) / (1.0 - s.alphabar[799]);
    CHECK(raw > 0.05);
    CHECK(raw < 1.0);
    CHECK(s.alpha[800] == doctest::Approx(raw).epsilon(1e-12));
}

TEST_CASE("custom clip bounds are honored") {
    const TimestepSchedule s = make_cosine_schedule(100, 0.008, 0.2, 0.6);
    for (int t = 1; t <= 100; ++t) {
        CHECK(s.alpha[t] >= 0.2);
        CHECK(s.alpha[t] <= 0.6);
    }
}

TEST_CASE("schedule rejects nonpositive T") {
    CHECK_THROWS(make_cosine_schedule(0));
    CHECK_THROWS(make_cosine_schedule(-5));
}

TEST_CASE("ddim subsequence pinned values") {
    CHECK(ddim_subsequence(1000, 5) == std::vector<int>{1000, 800, 600, 400, 200});
    CHECK(ddim_subsequence(150, 5) == std::vector<int>{150, 120, 90, 60, 30});
    CHECK(ddim_subsequence(10, 10) ==
          std::vector<int>{10, 9, 8, 7, 6, 5, 4, 3, 2, 1});
    CHECK(ddim_subsequence(1, 1) == std::vector<int>{1});
    CHECK(ddim_subsequence(1000, 0).empty());
}

TEST_CASE("ddim subsequence properties") {
    for (int t_start : {5, 17, 150, 800, 1000}) {
        for (int K : {1, 2, 3, 5}) {
            if (K > t_start) continue;
            const std::vector<int> taus = ddim_subsequence(t_start, K);
            REQUIRE(static_cast<int>(taus.size()) == K);
            CHECK(taus.front() == t_start);
            CHECK(taus.back() >= 1);
            for (std::size_t i = 1; i < taus.size(); ++i)
                CHECK(taus[i] < taus[i - 1]);
        }
    }
    CHECK_THROWS(ddim_subsequence(3, 5));
    CHECK_THROWS(ddim_subsequence(10, -1));
}

}  // TEST_SUITE
