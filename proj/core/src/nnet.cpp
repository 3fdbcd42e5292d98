#include "remd/nnet.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "remd/rng.hpp"

namespace remd {

namespace {

/// silu'(x) = sig(x) * (1 + x * (1 - sig(x)))
inline double silu_grad(double x) {
    const double s = 1.0 / (1.0 + std::exp(-x));
    return s * (1.0 + x * (1.0 - s));
}

/// 3x3 periodic cross-correlation: out(x,y) = b + sum_k k[dy,dx]*in(x+dx,y+dy).
ScalarField conv3(const ScalarField& x, const double* k, double bias) {
    const int nx = x.nx(), ny = x.ny();
    ScalarField out(nx, ny, x.dx(), x.dy(), x.boundary());
    for (int y = 0; y < ny; ++y)
        for (int xx = 0; xx < nx; ++xx) {
            double acc = bias;
            for (int dy = -1; dy <= 1; ++dy) {
                const int yy = (y + dy + ny) % ny;
                for (int dx = -1; dx <= 1; ++dx)
                    acc += k[(dy + 1) * 3 + (dx + 1)] * x((xx + dx + nx) % nx, yy);
            }
            out(xx, y) = acc;
        }
    return out;
}

/// Adjoint of conv3 with respect to its input (periodic convolution).
ScalarField conv3_adjoint(const ScalarField& gout, const double* k) {
    const int nx = gout.nx(), ny = gout.ny();
    ScalarField out(nx, ny, gout.dx(), gout.dy(), gout.boundary());
    for (int y = 0; y < ny; ++y)
        for (int xx = 0; xx < nx; ++xx) {
            double acc = 0.0;
            for (int dy = -1; dy <= 1; ++dy) {
                const int yy = (y - dy + ny) % ny;
                for (int dx = -1; dx <= 1; ++dx)
                    acc += k[(dy + 1) * 3 + (dx + 1)] * gout((xx - dx + nx) % nx, yy);
            }
            out(xx, y) = acc;
        }
    return out;
}

/// dL/dk[dy,dx] = sum_{x,y} gout(x,y) * in(x+dx, y+dy).
void conv3_kernel_grad(const ScalarField& gout, const ScalarField& in,
                       double* dk) {
    const int nx = in.nx(), ny = in.ny();
    for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
            double acc = 0.0;
            for (int y = 0; y < ny; ++y)
                for (int xx = 0; xx < nx; ++xx)
                    acc += gout(xx, y) * in((xx + dx + nx) % nx, (y + dy + ny) % ny);
            dk[(dy + 1) * 3 + (dx + 1)] += acc;
        }
}

void append(std::vector<double>& out, const double* v, std::size_t n) {
    out.insert(out.end(), v, v + n);
}

ModelParams zeros_like(const ModelParams& p) {
    ModelParams z = p;
    for (auto& k : z.smoothers.kernels) k.fill(0.0);
    for (auto& b : z.smoothers.biases) b = 0.0;
    auto zero = [](std::vector<double>& v) { std::fill(v.begin(), v.end(), 0.0); };
    zero(z.gates.w1);
    zero(z.gates.b1);
    zero(z.gates.w2);
    zero(z.gates.b2);
    zero(z.head.k1);
    zero(z.head.b1);
    zero(z.head.film_wg);
    zero(z.head.film_bg);
    zero(z.head.film_wd);
    zero(z.head.film_bd);
    zero(z.head.k2);
    z.head.b2 = 0.0;
    return z;
}

}  // namespace

std::size_t param_count(const ModelParams& p) {
    const std::size_t L1 = p.smoothers.kernels.size();
    const std::size_t c = p.head.channels, d = p.head.d_emb;
    return L1 * 9 + L1 + p.gates.w1.size() + p.gates.b1.size() +
           p.gates.w2.size() + p.gates.b2.size() + c * 9 + c + c * d + c +
           c * d + c + c * 9 + 1;
}

std::vector<double> flatten(const ModelParams& p) {
    std::vector<double> out;
    out.reserve(param_count(p));
    for (const auto& k : p.smoothers.kernels) append(out, k.data(), 9);
    append(out, p.smoothers.biases.data(), p.smoothers.biases.size());
    append(out, p.gates.w1.data(), p.gates.w1.size());
    append(out, p.gates.b1.data(), p.gates.b1.size());
    append(out, p.gates.w2.data(), p.gates.w2.size());
    append(out, p.gates.b2.data(), p.gates.b2.size());
    append(out, p.head.k1.data(), p.head.k1.size());
    append(out, p.head.b1.data(), p.head.b1.size());
    append(out, p.head.film_wg.data(), p.head.film_wg.size());
    append(out, p.head.film_bg.data(), p.head.film_bg.size());
    append(out, p.head.film_wd.data(), p.head.film_wd.size());
    append(out, p.head.film_bd.data(), p.head.film_bd.size());
    append(out, p.head.k2.data(), p.head.k2.size());
    out.push_back(p.head.b2);
    return out;
}

ModelParams unflatten(const std::vector<double>& flat, const ModelParams& shape) {
    if (flat.size() != param_count(shape))
        throw std::invalid_argument("unflatten: length mismatch");
    ModelParams p = shape;
    std::size_t pos = 0;
    auto take = [&](double* dst, std::size_t n) {
        std::memcpy(dst, flat.data() + pos, n * sizeof(double));
        pos += n;
    };
    for (auto& k : p.smoothers.kernels) take(k.data(), 9);
    take(p.smoothers.biases.data(), p.smoothers.biases.size());
    take(p.gates.w1.data(), p.gates.w1.size());
    take(p.gates.b1.data(), p.gates.b1.size());
    take(p.gates.w2.data(), p.gates.w2.size());
    take(p.gates.b2.data(), p.gates.b2.size());
    take(p.head.k1.data(), p.head.k1.size());
    take(p.head.b1.data(), p.head.b1.size());
    take(p.head.film_wg.data(), p.head.film_wg.size());
    take(p.head.film_bg.data(), p.head.film_bg.size());
    take(p.head.film_wd.data(), p.head.film_wd.size());
    take(p.head.film_bd.data(), p.head.film_bd.size());
    take(p.head.k2.data(), p.head.k2.size());
    p.head.b2 = flat[pos++];
    return p;
}

ModelParams init_model(int levels, std::uint64_t seed, int channels, int d_emb,
                       int hidden) {
    ModelParams p;
    p.smoothers = init_smoothers(levels, seed);
    p.gates = init_gates(levels, seed, d_emb, hidden);
    HeadParams& h = p.head;
    h.channels = channels;
    h.d_emb = d_emb;
    Rng rng(derive_seed(seed, "head-init"));
    h.k1.resize(static_cast<std::size_t>(channels) * 9);
    for (double& v : h.k1) v = 0.1 * rng.normal();
    h.b1.assign(channels, 0.0);
    h.film_wg.assign(static_cast<std::size_t>(channels) * d_emb, 0.0);
    h.film_bg.assign(channels, 1.0);  // identity modulation at start
    h.film_wd.assign(static_cast<std::size_t>(channels) * d_emb, 0.0);
    h.film_bd.assign(channels, 0.0);
    h.k2.assign(static_cast<std::size_t>(channels) * 9, 0.0);  // zero-init contract
    h.b2 = 0.0;
    return p;
}

ScalarField head_forward(const ScalarField& u_t, double t, double T,
                         const HeadParams& hp) {
    const std::vector<double> emb = timestep_embedding(t, T, hp.d_emb);
    ScalarField out(u_t.nx(), u_t.ny(), u_t.dx(), u_t.dy(), u_t.boundary());
    for (int c = 0; c < hp.channels; ++c) {
        double gam = hp.film_bg[c], del = hp.film_bd[c];
        for (int j = 0; j < hp.d_emb; ++j) {
            gam += hp.film_wg[c * hp.d_emb + j] * emb[j];
            del += hp.film_wd[c * hp.d_emb + j] * emb[j];
        }
        ScalarField h1 = conv3(u_t, hp.k1.data() + c * 9, hp.b1[c]);
        for (double& v : h1.raw()) v = silu(gam * v + del);
        axpy(1.0, conv3(h1, hp.k2.data() + c * 9, 0.0), out);
    }
    for (double& v : out.raw()) v += hp.b2;
    return out;
}

OptimizerState make_optimizer(std::size_t n_params, double lr) {
    OptimizerState st;
    st.m.assign(n_params, 0.0);
    st.v.assign(n_params, 0.0);
    st.lr = lr;
    return st;
}

void optimizer_step(OptimizerState& st, std::vector<double>& flat,
                    const std::vector<double>& grad) {
    if (flat.size() != st.m.size() || grad.size() != st.m.size())
        throw std::invalid_argument("optimizer_step: length mismatch");
    st.step += 1;
    const double bc1 = 1.0 - std::pow(st.beta1, static_cast<double>(st.step));
    const double bc2 = 1.0 - std::pow(st.beta2, static_cast<double>(st.step));
    for (std::size_t i = 0; i < flat.size(); ++i) {
        st.m[i] = st.beta1 * st.m[i] + (1.0 - st.beta1) * grad[i];
        st.v[i] = st.beta2 * st.v[i] + (1.0 - st.beta2) * grad[i] * grad[i];
        const double mh = st.m[i] / bc1;
        const double vh = st.v[i] / bc2;
        flat[i] -= st.lr * mh / (std::sqrt(vh) + st.eps);
    }
}

EpsHat eps_prediction(const ModelParams& p, const ScalarField& u_t, int t,
                      const ScalarField& u_lr, const ScalarField& anchor,
                      const LossContext& ctx) {
    const TimestepSchedule& s = *ctx.sched;
    const double a_t = s.alpha[t], b_t = s.beta[t], abar = s.alphabar[t];
    const ScalarField r =
        assemble_residual(u_t, u_lr, anchor, ctx.hier.fb, ctx.physics, t, s.T);
    const ScalarField e = corrector_apply(r, t, s.T, p.smoothers, p.gates, ctx.hier);
    const ScalarField g = head_forward(u_t, t, s.T, p.head);
    EpsHat out;
    out.drift = field_axpy(a_t, e, scale(g, b_t));
    out.eps_hat = scale(out.drift, -1.0 / (a_t * std::sqrt(1.0 - abar)));
    return out;
}

LossResult loss_and_grad(const ModelParams& p, const std::vector<LossItem>& batch,
                         const LossContext& ctx) {
    if (batch.empty())
        throw std::invalid_argument("loss_and_grad: empty batch");
    const TimestepSchedule& sched = *ctx.sched;
    const double T = sched.T;
    const int L = ctx.hier.levels;
    const HeadParams& hp = p.head;
    ModelParams acc = zeros_like(p);
    double loss = 0.0;
    const double binv = 1.0 / static_cast<double>(batch.size());

    for (const LossItem& item : batch) {
        const int t = item.t;
        const double a_t = sched.alpha[t], b_t = sched.beta[t];
        const double abar = sched.alphabar[t];
        const double ce = -1.0 / std::sqrt(1.0 - abar);          // d eps_hat / d e
        const double cg = -b_t / (a_t * std::sqrt(1.0 - abar));  // d eps_hat / d g

        // ---- forward, keeping the intermediates backprop needs ----
        const ScalarField r = assemble_residual(item.u_t, item.u_lr, item.anchor,
                                                ctx.hier.fb, ctx.physics, t, sched.T);
        const std::vector<double> emb = timestep_embedding(t, T, p.gates.d_emb);
        // gate MLP
        std::vector<double> hpre(p.gates.hidden), hact(p.gates.hidden);
        for (int i = 0; i < p.gates.hidden; ++i) {
            double a = p.gates.b1[i];
            for (int j = 0; j < p.gates.d_emb; ++j)
                a += p.gates.w1[i * p.gates.d_emb + j] * emb[j];
            hpre[i] = a;
            hact[i] = silu(a);
        }
        std::vector<double> gate(L), glogit(L);
        for (int l = 0; l < L; ++l) {
            double a = p.gates.b2[l];
            for (int i = 0; i < p.gates.hidden; ++i)
                a += p.gates.w2[l * p.gates.hidden + i] * hact[i];
            glogit[l] = a;
            gate[l] = 1.0 / (1.0 + std::exp(-a));
        }
        // corrector levels
        std::vector<ScalarField> q(L + 1), lifted(L);
        q[0] = r;
        for (int l = 1; l <= L; ++l) q[l] = wavelet_restrict(q[l - 1], ctx.hier.fb);
        ScalarField e = conv3(q[0], p.smoothers.kernels[0].data(),
                              p.smoothers.biases[0]);
        for (int l = 1; l <= L; ++l) {
            const ScalarField z = conv3(q[l], p.smoothers.kernels[l].data(),
                                        p.smoothers.biases[l]);
            lifted[l - 1] = wavelet_prolong_n(z, ctx.hier.fb, l);
            axpy(gate[l - 1], lifted[l - 1], e);
        }
        // head
        std::vector<double> gam(hp.channels), del(hp.channels);
        std::vector<ScalarField> h1(hp.channels), hmod(hp.channels), act(hp.channels);
        ScalarField g(item.u_t.nx(), item.u_t.ny(), item.u_t.dx(), item.u_t.dy(),
                      item.u_t.boundary());
        for (int c = 0; c < hp.channels; ++c) {
            gam[c] = hp.film_bg[c];
            del[c] = hp.film_bd[c];
            for (int j = 0; j < hp.d_emb; ++j) {
                gam[c] += hp.film_wg[c * hp.d_emb + j] * emb[j];
                del[c] += hp.film_wd[c * hp.d_emb + j] * emb[j];
            }
            h1[c] = conv3(item.u_t, hp.k1.data() + c * 9, hp.b1[c]);
            hmod[c] = h1[c];
            for (double& v : hmod[c].raw()) v = gam[c] * v + del[c];
            act[c] = hmod[c];
            for (double& v : act[c].raw()) v = silu(v);
            axpy(1.0, conv3(act[c], hp.k2.data() + c * 9, 0.0), g);
        }
        for (double& v : g.raw()) v += hp.b2;

        ScalarField eps_hat = field_axpy(ce, e, scale(g, cg));

        // ---- loss and output-side gradient ----
        ScalarField diff = sub(eps_hat, item.eps_target);
        const double n_inv = 1.0 / static_cast<double>(diff.size());
        double item_loss = 0.0;
        for (double v : diff.raw()) item_loss += v * v;
        loss += item_loss * n_inv * binv;
        ScalarField dhat = scale(diff, 2.0 * n_inv * binv);
        ScalarField de = scale(dhat, ce);
        ScalarField dg = scale(dhat, cg);

        // ---- backward: corrector ----
        conv3_kernel_grad(de, q[0], acc.smoothers.kernels[0].data());
        acc.smoothers.biases[0] += field_sum(de);
        std::vector<double> dgate(L, 0.0);
        for (int l = 1; l <= L; ++l) {
            dgate[l - 1] = dot(de, lifted[l - 1]);
            ScalarField dz = wavelet_restrict_n(de, ctx.hier.fb, l);
            // adjoint of P^l is R^l for orthonormal transfers
            for (double& v : dz.raw()) v *= gate[l - 1];
            conv3_kernel_grad(dz, q[l], acc.smoothers.kernels[l].data());
            acc.smoothers.biases[l] += field_sum(dz);
        }
        // gate MLP backward
        std::vector<double> dh(p.gates.hidden, 0.0);
        for (int l = 0; l < L; ++l) {
            const double dlog = dgate[l] * gate[l] * (1.0 - gate[l]);
            acc.gates.b2[l] += dlog;
            for (int i = 0; i < p.gates.hidden; ++i) {
                acc.gates.w2[l * p.gates.hidden + i] += dlog * hact[i];
                dh[i] += dlog * p.gates.w2[l * p.gates.hidden + i];
            }
        }
        for (int i = 0; i < p.gates.hidden; ++i) {
            const double da = dh[i] * silu_grad(hpre[i]);
            acc.gates.b1[i] += da;
            for (int j = 0; j < p.gates.d_emb; ++j)
                acc.gates.w1[i * p.gates.d_emb + j] += da * emb[j];
        }

        // ---- backward: head ----
        acc.head.b2 += field_sum(dg);
        for (int c = 0; c < hp.channels; ++c) {
            conv3_kernel_grad(dg, act[c], acc.head.k2.data() + c * 9);
            ScalarField da = conv3_adjoint(dg, hp.k2.data() + c * 9);
            ScalarField dmod = da;
            for (std::size_t i = 0; i < dmod.size(); ++i)
                dmod.raw()[i] = da.raw()[i] * silu_grad(hmod[c].raw()[i]);
            const double dgam = dot(dmod, h1[c]);
            const double ddel = field_sum(dmod);
            acc.head.film_bg[c] += dgam;
            acc.head.film_bd[c] += ddel;
            for (int j = 0; j < hp.d_emb; ++j) {
                acc.head.film_wg[c * hp.d_emb + j] += dgam * emb[j];
                acc.head.film_wd[c * hp.d_emb + j] += ddel * emb[j];
            }
            ScalarField dh1 = scale(dmod, gam[c]);
            conv3_kernel_grad(dh1, item.u_t, acc.head.k1.data() + c * 9);
            acc.head.b1[c] += field_sum(dh1);
        }
    }

    return {loss, flatten(acc)};
}

// ==================== checkpoint serialization ====================

namespace {

template <typename T>
void write_pod(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void read_pod(std::istream& is, T& v) {
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
}

constexpr char kMagic[4] = {'R', 'M', 'D', 'P'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

void save_checkpoint(const std::string& path, const ModelParams& p,
                     const OptimizerState& st) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("save_checkpoint: cannot open " + path);
    const std::vector<double> flat = flatten(p);
    os.write(kMagic, 4);
    write_pod(os, kVersion);
    write_pod(os, static_cast<std::uint64_t>(flat.size()));
    os.write(reinterpret_cast<const char*>(flat.data()),
             static_cast<std::streamsize>(flat.size() * sizeof(double)));
    write_pod(os, st.step);
    write_pod(os, st.lr);
    write_pod(os, st.beta1);
    write_pod(os, st.beta2);
    write_pod(os, st.eps);
    os.write(reinterpret_cast<const char*>(st.m.data()),
             static_cast<std::streamsize>(st.m.size() * sizeof(double)));
    os.write(reinterpret_cast<const char*>(st.v.data()),
             static_cast<std::streamsize>(st.v.size() * sizeof(double)));
    if (!os) throw std::runtime_error("save_checkpoint: write failed: " + path);
}

void load_checkpoint(const std::string& path, ModelParams& p,
                     OptimizerState& st) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("load_checkpoint: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("load_checkpoint: bad magic in " + path);
    std::uint32_t version = 0;
    read_pod(is, version);
    if (version != kVersion)
        throw std::runtime_error("load_checkpoint: unsupported version");
    std::uint64_t count = 0;
    read_pod(is, count);
    if (count != param_count(p))
        throw std::runtime_error("load_checkpoint: parameter count mismatch");
    std::vector<double> flat(count);
    is.read(reinterpret_cast<char*>(flat.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    read_pod(is, st.step);
    read_pod(is, st.lr);
    read_pod(is, st.beta1);
    read_pod(is, st.beta2);
    read_pod(is, st.eps);
    st.m.resize(count);
    st.v.resize(count);
    is.read(reinterpret_cast<char*>(st.m.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    is.read(reinterpret_cast<char*>(st.v.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (!is) throw std::runtime_error("load_checkpoint: truncated file: " + path);
    p = unflatten(flat, p);
}

}  // namespace remd
