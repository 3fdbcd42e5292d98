#pragma once

#include <cstdint>
#include <string>

#include "remd/field.hpp"
#include "remd/nnet.hpp"
#include "remd/schedule.hpp"

namespace remd {

/// Conditioning and geometry shared by every reverse step of one sampling
/// run. `init_noise` scales the noise added to the lifted initial state.
/// `lift` selects how the initial state and conditioning anchor are built
/// from u_lr: "wavelet" (mean-calibrated wavelet prolongation, default) or
/// "bilinear" (smooth interpolation; avoids block harmonics on haar).
struct SamplerConfig {
    PhysicsConfig physics;
    LevelHierarchy hier;      ///< corrector hierarchy on the fine grid
    WaveletFilterBank fb;     ///< transfer filters for lift and init
    double init_noise = 1.0;
    std::string lift = "wavelet";
};

/// u_t = sqrt(alphabar_t)*u0 + sqrt(1-alphabar_t)*eps.
ScalarField forward_diffuse(const ScalarField& u0, int t,
                            const TimestepSchedule& sched,
                            const ScalarField& eps);

/// One reverse update u_{t-1} = u_t + alpha_t e_t + beta_t g + sigma_t eps.
/// `noise` may be null when sigma_t = 0 (DDIM).
ScalarField reverse_step(const ScalarField& u_t, int t,
                         const TimestepSchedule& sched, const ModelParams& params,
                         const ScalarField& u_lr, const ScalarField& anchor,
                         const SamplerConfig& cfg, const ScalarField* noise = nullptr);

/// Full few-step reconstruction: start from the mean-calibrated wavelet
/// lift of u_lr plus scaled seeded noise, then walk sched.ddim_steps.
/// Deterministic given (u_lr, params, sched, cfg, seed).
ScalarField sample(const ScalarField& u_lr, const ModelParams& params,
                   const TimestepSchedule& sched, const SamplerConfig& cfg,
                   std::uint64_t seed);

}  // namespace remd
