#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "remd/nnet.hpp"

namespace remd {

/// Desk-scale training configuration. Grid, scale and seed pin the data
/// pipeline; the rest pins the model and optimizer.
struct TrainConfig {
    int iterations = 500;
    int batch_size = 8;
    double learning_rate = 1e-3;
    int scale_factor = 2;  ///< coarse-to-fine factor, 2 or 4
    int nx = 32, ny = 32;  ///< fine-grid size of the training fields
    std::uint64_t seed = 0;
    int checkpoint_every = 500;  ///< 0 disables periodic checkpoints

    int T = 1000;          ///< diffusion horizon
    int levels = 2;        ///< corrector hierarchy depth
    std::string wavelet = "haar";
    std::string lift = "wavelet";  ///< anchor construction: wavelet | bilinear
    PhysicsConfig physics;

    std::string loss_csv_path;    ///< empty: keep losses in memory only
    std::string checkpoint_path;  ///< empty: no checkpoint files
};

/// A coarse field paired with the fine field it was degraded from.
struct FieldPair {
    ScalarField lr;
    ScalarField hr;
};

/// Degrades by block averaging, log2(scale) times. Dimensions must divide
/// evenly by the scale.
FieldPair make_pair(const ScalarField& u_hr, int scale);

struct TrainResult {
    ModelParams params;
    OptimizerState opt;
    std::vector<double> losses;  ///< one entry per iteration
};

/// Runs the training loop: per iteration draw a batch of dataset items,
/// timesteps uniform in {1..T} and Gaussian noise, forward-diffuse, take
/// one optimizer step on the noise-regression loss. Deterministic given
/// (cfg, dataset); aborts with a diagnostic if the loss leaves the finite
/// range.
TrainResult train(const TrainConfig& cfg,
                  const std::vector<ScalarField>& dataset);

}  // namespace remd
