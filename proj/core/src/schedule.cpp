#include "remd/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace remd {

TimestepSchedule make_cosine_schedule(int T, double s_offset, double clip_lo,
                                      double clip_hi) {
    if (T < 1) throw std::invalid_argument("make_cosine_schedule: T must be >= 1");
    TimestepSchedule s;
    s.T = T;
    s.alphabar.resize(T + 1);
    s.alpha.assign(T + 1, 0.0);
    s.beta.assign(T + 1, 0.0);
    s.sigma.assign(T + 1, 0.0);
    auto f = [&](double t) {
        const double c = std::cos(((t / T + s_offset) / (1.0 + s_offset)) * M_PI / 2.0);
        return c * c;
    };
    const double f0 = f(0.0);
    for (int t = 0; t <= T; ++t) s.alphabar[t] = f(t) / f0;
    for (int t = 1; t <= T; ++t) {
        const double den = 1.0 - s.alphabar[t - 1];
        const double val =
            den > 0.0 ? 0.5 * (1.0 - s.alphabar[t]) / den : clip_hi;
        s.alpha[t] = std::clamp(val, clip_lo, clip_hi);
        s.beta[t] = s.alpha[t];
    }
    return s;
}

std::vector<int> ddim_subsequence(int t_start, int K) {
    if (K < 0) throw std::invalid_argument("ddim_subsequence: K must be >= 0");
    if (K == 0) return {};
    if (K > t_start)
        throw std::invalid_argument(
            "ddim_subsequence: step count exceeds starting timestep");
    std::vector<int> taus;
    taus.reserve(K);
    for (int k = K; k >= 1; --k) {
        const int t = std::max(
            1, static_cast<int>(std::lround(static_cast<double>(t_start) * k / K)));
        taus.push_back(t);
    }
    for (std::size_t i = 1; i < taus.size(); ++i)
        if (taus[i] >= taus[i - 1])
            throw std::logic_error("ddim_subsequence: subsequence not strictly decreasing");
    return taus;
}

}  // namespace remd
