#pragma once

#include <vector>

namespace remd {

/// Diffusion noise schedule plus the per-step reverse coefficients.
/// Arrays are indexed by timestep t = 0..T.
struct TimestepSchedule {
    int T = 0;
    std::vector<double> alphabar;  ///< cumulative signal fraction, in (0,1]
    std::vector<double> alpha;     ///< drift coefficient per reverse step
    std::vector<double> beta;      ///< learned-head coefficient per step
    std::vector<double> sigma;     ///< noise coefficient; all zero in DDIM mode
    std::vector<int> ddim_steps;   ///< strictly decreasing inference subsequence
};

/// Cosine schedule: alphabar_t = f(t)/f(0), f(t) = cos^2(((t/T+s)/(1+s))*pi/2).
/// alpha_t = clip(0.5*(1-alphabar_t)/(1-alphabar_{t-1}), clip_lo, clip_hi),
/// beta = alpha, sigma = 0. The default subsequence is empty; fill it with
/// ddim_subsequence for a chosen step count.
TimestepSchedule make_cosine_schedule(int T, double s_offset = 0.008,
                                      double clip_lo = 0.05,
                                      double clip_hi = 1.0);

/// K evenly spaced timesteps descending from t_start:
/// tau_k = max(1, round(t_start*k/K)) for k = K..1. Requires K <= t_start.
std::vector<int> ddim_subsequence(int t_start, int K);

}  // namespace remd
