// Microbenchmarks for the hot paths: the spectral transform, one corrector
// sweep, one loss/gradient evaluation, and a full five-step reconstruction.

#include <benchmark/benchmark.h>

#include "remd/data.hpp"
#include "remd/nnet.hpp"
#include "remd/sampler.hpp"
#include "remd/schedule.hpp"
#include "remd/spectral.hpp"
#include "remd/training.hpp"
#include "remd/transfer.hpp"

using namespace remd;

namespace {

void BM_Dft2(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ScalarField f = gen_grf(Grid2D{n, n}, -3.0, 1);
    for (auto _ : state) {
        const Spectrum2D s = dft2(f);
        benchmark::DoNotOptimize(s.values.data());
    }
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Dft2)->Arg(32)->Arg(64)->Arg(128);

void BM_CorrectorApply(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int levels = 3;
    const WaveletFilterBank fb = make_filterbank("haar");
    const LevelHierarchy hier = build_hierarchy(n, n, levels, fb);
    const ModelParams p = init_model(levels, 2);
    const ScalarField r = gen_grf(Grid2D{n, n}, -3.0, 3);
    for (auto _ : state) {
        const ScalarField e =
            corrector_apply(r, 500.0, 1000.0, p.smoothers, p.gates, hier);
        benchmark::DoNotOptimize(e.data());
    }
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_CorrectorApply)->Arg(64)->Arg(128);

void BM_LossAndGrad(benchmark::State& state) {
    const int n = 32;
    const TimestepSchedule sched = make_cosine_schedule(1000);
    LossContext ctx;
    ctx.sched = &sched;
    ctx.physics.kappa = 0.5;
    ctx.hier = build_hierarchy(n, n, 2, make_filterbank("haar"));
    const ModelParams p = init_model(2, 4);

    const ScalarField u0 = gen_grf(Grid2D{n, n}, -3.5, 5);
    ScalarField eps = gen_grf(Grid2D{n, n}, -0.0, 6);
    LossItem item;
    item.t = 300;
    item.u_t = forward_diffuse(u0, item.t, sched, eps);
    item.eps_target = std::move(eps);
    item.u_lr = restrict_avg(u0);
    item.anchor = lift_residual(item.u_lr, make_filterbank("haar"), 1);
    const std::vector<LossItem> batch{item};

    for (auto _ : state) {
        const LossResult r = loss_and_grad(p, batch, ctx);
        benchmark::DoNotOptimize(r.grad.data());
    }
}
BENCHMARK(BM_LossAndGrad);

void BM_SampleFiveSteps(benchmark::State& state) {
    const int n = 32;
    TimestepSchedule sched = make_cosine_schedule(1000);
    sched.ddim_steps = ddim_subsequence(150, 5);
    const WaveletFilterBank fb = make_filterbank("haar");
    SamplerConfig cfg;
    cfg.hier = build_hierarchy(n, n, 2, fb);
    cfg.fb = fb;
    cfg.init_noise = 0.0;
    cfg.physics.kappa = 0.5;
    const ModelParams p = init_model(2, 7);
    const ScalarField u_lr = restrict_avg(gen_grf(Grid2D{n, n}, -3.5, 8));

    for (auto _ : state) {
        const ScalarField hr = sample(u_lr, p, sched, cfg, 9);
        benchmark::DoNotOptimize(hr.data());
    }
}
BENCHMARK(BM_SampleFiveSteps);

}  // namespace

BENCHMARK_MAIN();
