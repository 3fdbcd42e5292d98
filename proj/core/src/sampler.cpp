#include "remd/sampler.hpp"

#include <cmath>
#include <stdexcept>

#include "remd/rng.hpp"

namespace remd {

ScalarField forward_diffuse(const ScalarField& u0, int t,
                            const TimestepSchedule& sched,
                            const ScalarField& eps) {
    if (t < 0 || t > sched.T)
        throw std::invalid_argument("forward_diffuse: t out of range");
    require_same_grid(u0, eps, "forward_diffuse");
    const double ab = sched.alphabar[t];
    return field_axpy(std::sqrt(1.0 - ab), eps, scale(u0, std::sqrt(ab)));
}

ScalarField reverse_step(const ScalarField& u_t, int t,
                         const TimestepSchedule& sched, const ModelParams& params,
                         const ScalarField& u_lr, const ScalarField& anchor,
                         const SamplerConfig& cfg, const ScalarField* noise) {
    if (t < 1 || t > sched.T)
        throw std::invalid_argument("reverse_step: t out of range");
    LossContext ctx{&sched, cfg.physics, cfg.hier};
    const EpsHat pred = eps_prediction(params, u_t, t, u_lr, anchor, ctx);
    ScalarField next = add(u_t, pred.drift);
    const double sig = sched.sigma[t];
    if (sig != 0.0) {
        if (noise == nullptr)
            throw std::invalid_argument("reverse_step: sigma > 0 requires noise");
        axpy(sig, *noise, next);
    }
    return next;
}

ScalarField sample(const ScalarField& u_lr, const ModelParams& params,
                   const TimestepSchedule& sched, const SamplerConfig& cfg,
                   std::uint64_t seed) {
    int s = 0;
    for (int n = u_lr.nx(); n < cfg.hier.nx[0]; n *= 2) ++s;
    if (u_lr.nx() << s != cfg.hier.nx[0] || u_lr.ny() << s != cfg.hier.ny[0])
        throw std::invalid_argument("sample: scale mismatch with hierarchy");
    if (cfg.lift != "bilinear" && cfg.lift != "wavelet")
        throw std::invalid_argument("sample: unknown lift mode '" + cfg.lift + "'");
    const ScalarField u0 = cfg.lift == "bilinear" ? prolong_bilinear_n(u_lr, s)
                                                  : lift_residual(u_lr, cfg.fb, s);
    ScalarField u = u0;
    const ScalarField anchor = u0;
    Rng rng(derive_seed(seed, "sample-init"));
    if (!sched.ddim_steps.empty() && cfg.init_noise != 0.0) {
        const double ab0 = sched.alphabar[sched.ddim_steps.front()];
        const double amp = cfg.init_noise * std::sqrt(1.0 - ab0);
        for (double& v : u.raw()) v += amp * rng.normal();
    }
    for (int t : sched.ddim_steps) {
        if (sched.sigma[t] != 0.0) {
            ScalarField eps(u.nx(), u.ny(), u.dx(), u.dy(), u.boundary());
            for (double& v : eps.raw()) v = rng.normal();
            u = reverse_step(u, t, sched, params, u_lr, anchor, cfg, &eps);
        } else {
            u = reverse_step(u, t, sched, params, u_lr, anchor, cfg, nullptr);
        }
    }
    return u;
}

}  // namespace remd
