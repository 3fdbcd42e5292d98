#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "remd/field.hpp"
#include "remd/mgcorr.hpp"
#include "remd/schedule.hpp"

namespace remd {

/// Learned head g_theta: conv 3x3 (1 -> c), FiLM modulation from the
/// timestep embedding, smooth nonlinearity, conv 3x3 (c -> 1).
/// The final kernel and bias start at exactly zero.
struct HeadParams {
    int channels = 8;
    int d_emb = 32;
    std::vector<double> k1;      ///< c x 9 first-layer kernels
    std::vector<double> b1;      ///< c
    std::vector<double> film_wg; ///< c x d_emb, scale = wg*emb + bg
    std::vector<double> film_bg; ///< c
    std::vector<double> film_wd; ///< c x d_emb, shift = wd*emb + bd
    std::vector<double> film_bd; ///< c
    std::vector<double> k2;      ///< c x 9 final-layer kernels (zero init)
    double b2 = 0.0;             ///< final bias (zero init)
};

/// All trainable state. flatten() lays the components out in the fixed
/// order: smoother kernels (level 0..L), smoother biases, gate w1, gate b1,
/// gate w2, gate b2, head k1, head b1, film wg, film bg, film wd, film bd,
/// head k2, head b2.
struct ModelParams {
    SmootherParams smoothers;
    GateParams gates;
    HeadParams head;
};

std::size_t param_count(const ModelParams& p);
std::vector<double> flatten(const ModelParams& p);
/// Inverse of flatten; `shape` supplies the component dimensions.
ModelParams unflatten(const std::vector<double>& flat, const ModelParams& shape);

/// Identity-initialized smoothers, small random gates, zero-output head.
ModelParams init_model(int levels, std::uint64_t seed, int channels = 8,
                       int d_emb = 32, int hidden = 32);

ScalarField head_forward(const ScalarField& u_t, double t, double T,
                         const HeadParams& hp);

/// Adaptive moment estimation state over the flattened parameters.
struct OptimizerState {
    std::vector<double> m;  ///< first moments
    std::vector<double> v;  ///< second moments
    std::uint64_t step = 0;
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

OptimizerState make_optimizer(std::size_t n_params, double lr = 1e-3);
/// Bias-corrected adaptive moment update, in place.
void optimizer_step(OptimizerState& st, std::vector<double>& flat,
                    const std::vector<double>& grad);

/// One training example: a forward-diffused state with its noise target and
/// conditioning fields (coarse input and its lifted anchor).
struct LossItem {
    ScalarField u_t;
    int t = 0;
    ScalarField eps_target;
    ScalarField u_lr;
    ScalarField anchor;  ///< lifted u_lr, fine resolution
};

/// Everything loss evaluation needs besides the parameters.
struct LossContext {
    const TimestepSchedule* sched = nullptr;
    PhysicsConfig physics;
    LevelHierarchy hier;
};

/// The model's noise prediction: eps_hat = -(alpha_t e_t + beta_t g) /
/// (alpha_t sqrt(1 - alphabar_t)). Dividing by alpha_t identifies one
/// full-weight application of the drift with the denoised estimate, so the
/// reverse step is an alpha_t-relaxed move toward it. Also returns the raw
/// drift alpha_t*e + beta_t*g used by the sampler.
struct EpsHat {
    ScalarField eps_hat;
    ScalarField drift;
};
EpsHat eps_prediction(const ModelParams& p, const ScalarField& u_t, int t,
                      const ScalarField& u_lr, const ScalarField& anchor,
                      const LossContext& ctx);

/// Mean over the batch of mean((eps_target - eps_hat)^2), with the exact
/// reverse-mode gradient with respect to the flattened parameters.
struct LossResult {
    double loss = 0.0;
    std::vector<double> grad;
};
LossResult loss_and_grad(const ModelParams& p, const std::vector<LossItem>& batch,
                         const LossContext& ctx);

/// Checkpoint serialization: magic "RMDP", version, parameter count,
/// flattened parameters, then the optimizer state. Little-endian binary.
void save_checkpoint(const std::string& path, const ModelParams& p,
                     const OptimizerState& st);
void load_checkpoint(const std::string& path, ModelParams& p,
                     OptimizerState& st);

}  // namespace remd
