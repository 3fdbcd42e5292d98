#include "remd/mgcorr.hpp"

#include <stdexcept>

#include "remd/rng.hpp"

namespace remd {

namespace {
std::uint64_t g_mg_ops = 0;
}

void mg_op_count_reset() { g_mg_ops = 0; }
std::uint64_t mg_op_count() { return g_mg_ops; }

std::vector<double> timestep_embedding(double t, double T, int d) {
    if (d < 2 || d % 2 != 0)
        throw std::invalid_argument("timestep_embedding: d must be even and >= 2");
    const int half = d / 2;
    const double tau = t / T;
    std::vector<double> e(d);
    for (int i = 0; i < half; ++i) {
        // geometric ladder 1000 -> 0.1 across the channels
        const double f =
            1000.0 * std::pow(1e-4, half > 1 ? static_cast<double>(i) / (half - 1) : 0.0);
        e[i] = std::sin(tau * f);
        e[half + i] = std::cos(tau * f);
    }
    return e;
}

std::vector<double> gate_weights(double t, double T, const GateParams& gp) {
    const std::vector<double> emb = timestep_embedding(t, T, gp.d_emb);
    std::vector<double> h(gp.hidden);
    for (int i = 0; i < gp.hidden; ++i) {
        double a = gp.b1[i];
        for (int j = 0; j < gp.d_emb; ++j) a += gp.w1[i * gp.d_emb + j] * emb[j];
        h[i] = silu(a);
    }
    std::vector<double> out(gp.n_gates);
    for (int l = 0; l < gp.n_gates; ++l) {
        double a = gp.b2[l];
        for (int i = 0; i < gp.hidden; ++i) a += gp.w2[l * gp.hidden + i] * h[i];
        out[l] = 1.0 / (1.0 + std::exp(-a));
    }
    return out;
}

ScalarField smoother_apply(const ScalarField& x, const std::array<double, 9>& k,
                           double bias) {
    const int nx = x.nx(), ny = x.ny();
    ScalarField out(nx, ny, x.dx(), x.dy(), x.boundary());
    for (int y = 0; y < ny; ++y) {
        for (int xx = 0; xx < nx; ++xx) {
            double acc = bias;
            for (int dy = -1; dy <= 1; ++dy) {
                // periodic wrap regardless of the field's boundary flag:
                // the corrector is defined on the periodic torus
                const int yy = (y + dy + ny) % ny;
                for (int dx = -1; dx <= 1; ++dx) {
                    const int xi = (xx + dx + nx) % nx;
                    acc += k[(dy + 1) * 3 + (dx + 1)] * x(xi, yy);
                }
            }
            out(xx, y) = acc;
        }
    }
    g_mg_ops += static_cast<std::uint64_t>(nx) * ny * 9;
    return out;
}

ScalarField corrector_apply(const ScalarField& r, double t, double T,
                            const SmootherParams& sp, const GateParams& gp,
                            const LevelHierarchy& hier) {
    if (r.nx() != hier.nx[0] || r.ny() != hier.ny[0])
        throw std::invalid_argument("corrector_apply: field/hierarchy mismatch");
    if (sp.levels() != hier.levels || gp.n_gates != hier.levels)
        throw std::invalid_argument("corrector_apply: parameter level count mismatch");
    const std::vector<double> w = gate_weights(t, T, gp);
    ScalarField e = smoother_apply(r, sp.kernels[0], sp.biases[0]);
    ScalarField x = r;
    for (int l = 1; l <= hier.levels; ++l) {
        x = wavelet_restrict(x, hier.fb);
        ScalarField s = smoother_apply(x, sp.kernels[l], sp.biases[l]);
        ScalarField up = wavelet_prolong_n(s, hier.fb, l);
        axpy(w[l - 1], up, e);
    }
    return e;
}

ScalarField assemble_residual(const ScalarField& u_t, const ScalarField& u_lr,
                              const ScalarField& u0_anchor,
                              const WaveletFilterBank& fb,
                              const PhysicsConfig& cfg, int t, int T) {
    int s = 0;
    for (int n = u_lr.nx(); n < u_t.nx(); n *= 2) ++s;
    if (u_lr.nx() << s != u_t.nx() || u_lr.ny() << s != u_t.ny())
        throw std::invalid_argument("assemble_residual: incompatible scales");
    const ScalarField coarse = restrict_avg_n(u_t, s);
    ScalarField r = lift_residual(sub(u_lr, coarse), fb, s);
    const double lam = lambda_schedule(t, T, cfg.lambda_max);
    if (lam != 0.0) axpy(lam, combine_physics(u_t, u0_anchor, cfg, t, T), r);
    return r;
}

SmootherParams init_smoothers(int levels, std::uint64_t seed) {
    SmootherParams sp;
    Rng rng(derive_seed(seed, "smoother-init"));
    for (int l = 0; l <= levels; ++l) {
        std::array<double, 9> k;
        for (double& v : k) v = 1e-2 * rng.normal();
        k[4] += 1.0;
        sp.kernels.push_back(k);
        sp.biases.push_back(0.0);
    }
    return sp;
}

GateParams init_gates(int levels, std::uint64_t seed, int d_emb, int hidden) {
    GateParams gp;
    gp.d_emb = d_emb;
    gp.hidden = hidden;
    gp.n_gates = levels;
    Rng rng(derive_seed(seed, "gate-init"));
    gp.w1.resize(static_cast<std::size_t>(hidden) * d_emb);
    for (double& v : gp.w1) v = 1e-2 * rng.normal();
    gp.b1.assign(hidden, 0.0);
    gp.w2.resize(static_cast<std::size_t>(levels) * hidden);
    for (double& v : gp.w2) v = 1e-2 * rng.normal();
    gp.b2.assign(levels, 0.0);
    return gp;
}

}  // namespace remd
