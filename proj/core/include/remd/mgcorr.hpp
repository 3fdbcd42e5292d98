#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "remd/field.hpp"
#include "remd/physics.hpp"
#include "remd/transfer.hpp"

namespace remd {

/// One 3x3 depthwise kernel per hierarchy level (0 = finest), plus bias.
struct SmootherParams {
    std::vector<std::array<double, 9>> kernels;  ///< L+1 kernels, row-major
    std::vector<double> biases;                  ///< L+1 biases

    int levels() const { return static_cast<int>(kernels.size()) - 1; }
};

/// Timestep-conditioned gate MLP: embedding -> hidden -> L sigmoid outputs.
struct GateParams {
    int d_emb = 32;
    int hidden = 32;
    int n_gates = 0;
    std::vector<double> w1;  ///< hidden x d_emb, row-major
    std::vector<double> b1;  ///< hidden
    std::vector<double> w2;  ///< n_gates x hidden, row-major
    std::vector<double> b2;  ///< n_gates
};

inline double silu(double x) { return x / (1.0 + std::exp(-x)); }

/// Sinusoidal embedding of tau = t/T: d/2 sine then d/2 cosine channels at
/// geometric frequencies from 1000 down to 0.1.
std::vector<double> timestep_embedding(double t, double T, int d);

/// Gate values w_l(t) in (0,1), one per coarse level.
std::vector<double> gate_weights(double t, double T, const GateParams& gp);

/// 3x3 periodic cross-correlation plus bias.
ScalarField smoother_apply(const ScalarField& x, const std::array<double, 9>& k,
                           double bias = 0.0);

/// S_t(r) = Smooth_0(r) + sum_l w_l(t) * P^l( Smooth_l( R^l r ) ).
ScalarField corrector_apply(const ScalarField& r, double t, double T,
                            const SmootherParams& sp, const GateParams& gp,
                            const LevelHierarchy& hier);

/// Full reverse-drift residual: mean-calibrated lift of the coarse data
/// mismatch (using the configured wavelet) plus lambda(t)-scaled physics
/// residuals on the fine grid.
ScalarField assemble_residual(const ScalarField& u_t, const ScalarField& u_lr,
                              const ScalarField& u0_anchor,
                              const WaveletFilterBank& fb,
                              const PhysicsConfig& cfg, int t, int T);

/// Multiply counter for the cost-scaling checks; smoother_apply adds
/// 9 multiplies per output cell. Not thread safe (test instrumentation).
void mg_op_count_reset();
std::uint64_t mg_op_count();

/// Identity-plus-noise initialization for the smoothers (scale 1e-2) and
/// small random gate MLP weights; biases zero.
SmootherParams init_smoothers(int levels, std::uint64_t seed);
GateParams init_gates(int levels, std::uint64_t seed, int d_emb = 32,
                      int hidden = 32);

}  // namespace remd
