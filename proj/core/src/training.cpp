#include "remd/training.hpp"

#include <cmath>
#include <fstream>

#include "remd/rng.hpp"
#include "remd/sampler.hpp"
#include "remd/schedule.hpp"
#include "remd/transfer.hpp"

namespace remd {

namespace {

int log2_exact(int scale) {
    if (scale == 2) return 1;
    if (scale == 4) return 2;
    throw std::invalid_argument("train: scale factor must be 2 or 4, got " +
                                std::to_string(scale));
}

void validate(const TrainConfig& cfg, const std::vector<ScalarField>& dataset) {
    if (cfg.iterations < 0)
        throw std::invalid_argument("train: iterations must be >= 0");
    if (cfg.batch_size <= 0)
        throw std::invalid_argument("train: batch size must be positive");
    if (cfg.learning_rate <= 0.0)
        throw std::invalid_argument("train: learning rate must be positive");
    if (cfg.T <= 0) throw std::invalid_argument("train: T must be positive");
    if (dataset.empty())
        throw std::invalid_argument("train: dataset must be nonempty");
    if (cfg.lift != "wavelet" && cfg.lift != "bilinear")
        throw std::invalid_argument("train: unknown lift mode '" + cfg.lift + "'");
    for (const ScalarField& f : dataset)
        if (f.nx() != cfg.nx || f.ny() != cfg.ny)
            throw std::invalid_argument(
                "train: dataset field size does not match the configured grid");
}

}  // namespace

FieldPair make_pair(const ScalarField& u_hr, int scale) {
    const int s = log2_exact(scale);
    if (u_hr.nx() % scale != 0 || u_hr.ny() % scale != 0)
        throw std::invalid_argument(
            "make_pair: dimensions must divide by the scale factor");
    return {restrict_avg_n(u_hr, s), u_hr};
}

TrainResult train(const TrainConfig& cfg,
                  const std::vector<ScalarField>& dataset) {
    validate(cfg, dataset);
    const int s_levels = log2_exact(cfg.scale_factor);
    const WaveletFilterBank fb = make_filterbank(cfg.wavelet);

    LossContext ctx;
    const TimestepSchedule sched = make_cosine_schedule(cfg.T);
    ctx.sched = &sched;
    ctx.physics = cfg.physics;
    ctx.hier = build_hierarchy(cfg.nx, cfg.ny, cfg.levels, fb);

    // Conditioning inputs are fixed per dataset item; build them once.
    std::vector<FieldPair> pairs;
    std::vector<ScalarField> anchors;
    pairs.reserve(dataset.size());
    anchors.reserve(dataset.size());
    for (const ScalarField& f : dataset) {
        pairs.push_back(make_pair(f, cfg.scale_factor));
        anchors.push_back(cfg.lift == "bilinear"
                              ? prolong_bilinear_n(pairs.back().lr, s_levels)
                              : lift_residual(pairs.back().lr, fb, s_levels));
    }

    TrainResult res;
    res.params = init_model(cfg.levels, cfg.seed);
    std::vector<double> flat = flatten(res.params);
    res.opt = make_optimizer(flat.size(), cfg.learning_rate);
    res.losses.reserve(static_cast<std::size_t>(cfg.iterations));

    std::ofstream csv;
    if (!cfg.loss_csv_path.empty()) {
        csv.open(cfg.loss_csv_path);
        if (!csv)
            throw std::runtime_error("train: cannot open loss log " +
                                     cfg.loss_csv_path);
        csv << "iter,loss\n";
        csv.precision(17);
    }

    Rng rng(derive_seed(cfg.seed, "train"));
    const std::size_t n = dataset.size();
    std::vector<LossItem> batch;
    for (int iter = 0; iter < cfg.iterations; ++iter) {
        batch.clear();
        for (int b = 0; b < cfg.batch_size; ++b) {
            const std::size_t idx = rng.next_u64() % n;
            const int t = 1 + static_cast<int>(rng.next_u64() %
                                               static_cast<std::uint64_t>(cfg.T));
            ScalarField eps(dataset[idx].grid());
            for (double& v : eps.raw()) v = rng.normal();
            LossItem item;
            item.u_t = forward_diffuse(dataset[idx], t, sched, eps);
            item.t = t;
            item.eps_target = std::move(eps);
            item.u_lr = pairs[idx].lr;
            item.anchor = anchors[idx];
            batch.push_back(std::move(item));
        }

        const LossResult lr = loss_and_grad(res.params, batch, ctx);
        if (!std::isfinite(lr.loss))
            throw std::runtime_error("train: loss diverged at iteration " +
                                     std::to_string(iter));
        optimizer_step(res.opt, flat, lr.grad);
        res.params = unflatten(flat, res.params);
        res.losses.push_back(lr.loss);
        if (csv.is_open()) csv << iter << ',' << lr.loss << '\n';

        if (cfg.checkpoint_every > 0 && !cfg.checkpoint_path.empty() &&
            (iter + 1) % cfg.checkpoint_every == 0)
            save_checkpoint(cfg.checkpoint_path, res.params, res.opt);
    }

    if (!cfg.checkpoint_path.empty())
        save_checkpoint(cfg.checkpoint_path, res.params, res.opt);
    if (csv.is_open() && !csv)
        throw std::runtime_error("train: failed writing loss log " +
                                 cfg.loss_csv_path);
    return res;
}

}  // namespace remd
