// Command-line front end: wires data generation, degradation, training,
// sampling, evaluation, spectra, and step sweeps into reproducible runs.
// Every command is deterministic given (config, seed) and writes the
// effective configuration alongside its outputs.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "remd/config.hpp"
#include "remd/data.hpp"
#include "remd/metrics.hpp"
#include "remd/rng.hpp"
#include "remd/sampler.hpp"
#include "remd/schedule.hpp"
#include "remd/training.hpp"
#include "remd/transfer.hpp"

namespace fs = std::filesystem;
using namespace remd;

namespace {

struct GlobalArgs {
    std::vector<std::string> config_files;
    std::vector<std::string> overrides;  ///< key=value pairs, applied in order
};

RunConfig effective_config(const GlobalArgs& g) {
    RunConfig cfg = RunConfig::defaults();
    for (const std::string& path : g.config_files) cfg.load_file(path);
    for (const std::string& kv : g.overrides) {
        const std::size_t eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--set expects key=value, got '" + kv +
                                        "'");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return cfg;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << text;
    if (!os) throw std::runtime_error("write failed on " + path);
}

/// The echoed config lands next to the outputs: <dir>/config.txt for
/// directory outputs, <file>.config.txt otherwise.
void echo_config(const RunConfig& cfg, const std::string& out,
                 bool out_is_dir) {
    const fs::path p = out_is_dir ? fs::path(out) / "config.txt"
                                  : fs::path(out + ".config.txt");
    write_text(p.string(), cfg.echo());
}

std::string field_name(int i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "field_%04d.rmd", i);
    return buf;
}

std::vector<std::string> list_rmd(const std::string& dir) {
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".rmd")
            names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end());
    if (names.empty())
        throw std::runtime_error("no .rmd files found in " + dir);
    return names;
}

TrainConfig train_config(const RunConfig& cfg) {
    TrainConfig tc;
    tc.iterations = static_cast<int>(cfg.get_int("training.iterations"));
    tc.batch_size = static_cast<int>(cfg.get_int("training.batch_size"));
    tc.learning_rate = cfg.get_real("training.learning_rate");
    tc.scale_factor = static_cast<int>(cfg.get_int("training.scale_factor"));
    tc.nx = static_cast<int>(cfg.get_int("data.nx"));
    tc.ny = static_cast<int>(cfg.get_int("data.ny"));
    tc.seed = cfg.get_u64("run.seed");
    tc.checkpoint_every = static_cast<int>(cfg.get_int("training.checkpoint_every"));
    tc.T = static_cast<int>(cfg.get_int("training.T"));
    tc.levels = static_cast<int>(cfg.get_int("training.levels"));
    tc.wavelet = cfg.get_text("training.wavelet");
    tc.lift = cfg.get_text("training.lift");
    tc.physics.w_lap = cfg.get_real("physics.w_lap");
    tc.physics.w_bi = cfg.get_real("physics.w_bi");
    tc.physics.w_aniso = cfg.get_real("physics.w_aniso");
    tc.physics.w_spec = cfg.get_real("physics.w_spec");
    tc.physics.kappa = cfg.get_real("physics.kappa");
    tc.physics.huber_delta = cfg.get_real("physics.huber_delta");
    tc.physics.lambda_max = cfg.get_real("physics.lambda_max");
    return tc;
}

/// Loads a checkpoint into a model shaped by the config (levels must match
/// the checkpoint's parameter count).
ModelParams load_model(const std::string& path, const RunConfig& cfg) {
    ModelParams p = init_model(static_cast<int>(cfg.get_int("training.levels")),
                               /*seed=*/0);
    OptimizerState st = make_optimizer(param_count(p));
    load_checkpoint(path, p, st);
    return p;
}

struct SampleSetup {
    TimestepSchedule sched;
    SamplerConfig scfg;
    int scale_levels = 1;
};

SampleSetup sample_setup(const RunConfig& cfg, int nfe, const ScalarField& lr_field) {
    SampleSetup s;
    const int T = static_cast<int>(cfg.get_int("sampler.T"));
    s.sched = make_cosine_schedule(T, 0.008, cfg.get_real("sampler.alpha_clip"));
    const int t_start = static_cast<int>(cfg.get_int("sampler.t_start"));
    if (nfe > 0)
        s.sched.ddim_steps = ddim_subsequence(t_start > 0 ? t_start : T, nfe);
    else
        s.sched.ddim_steps.clear();

    const int scale = static_cast<int>(cfg.get_int("training.scale_factor"));
    s.scale_levels = scale == 4 ? 2 : 1;
    const WaveletFilterBank fb = make_filterbank(cfg.get_text("training.wavelet"));
    const int fine_nx = lr_field.nx() << s.scale_levels;
    const int fine_ny = lr_field.ny() << s.scale_levels;
    s.scfg.hier = build_hierarchy(fine_nx, fine_ny,
                                  static_cast<int>(cfg.get_int("training.levels")), fb);
    s.scfg.fb = fb;
    s.scfg.init_noise = cfg.get_real("sampler.init_noise");
    s.scfg.lift = cfg.get_text("training.lift");
    s.scfg.physics.w_lap = cfg.get_real("physics.w_lap");
    s.scfg.physics.w_bi = cfg.get_real("physics.w_bi");
    s.scfg.physics.w_aniso = cfg.get_real("physics.w_aniso");
    s.scfg.physics.w_spec = cfg.get_real("physics.w_spec");
    s.scfg.physics.kappa = cfg.get_real("physics.kappa");
    s.scfg.physics.huber_delta = cfg.get_real("physics.huber_delta");
    s.scfg.physics.lambda_max = cfg.get_real("physics.lambda_max");
    return s;
}

std::uint64_t sample_seed(const RunConfig& cfg) {
    const std::uint64_t s = cfg.get_u64("sampler.seed");
    return s != 0 ? s : derive_seed(cfg.get_u64("run.seed"), "sample");
}

// ==================== subcommands ====================

int cmd_gen(const RunConfig& cfg, const std::string& out_dir) {
    fs::create_directories(out_dir);
    const Grid2D g{static_cast<int>(cfg.get_int("data.nx")),
                   static_cast<int>(cfg.get_int("data.ny")),
                   1.0 / cfg.get_int("data.nx"), 1.0 / cfg.get_int("data.ny"),
                   Boundary::periodic};
    const int n = static_cast<int>(cfg.get_int("data.count"));
    const std::vector<ScalarField> ds =
        make_dataset(n, g, cfg.get_real("data.slope"),
                     derive_seed(cfg.get_u64("run.seed"), "gen"));
    for (int i = 0; i < n; ++i)
        write_field((fs::path(out_dir) / field_name(i)).string(), ds[i]);
    echo_config(cfg, out_dir, true);
    std::cout << "wrote " << n << " fields to " << out_dir << "\n";
    return 0;
}

int cmd_degrade(const RunConfig& cfg, const std::string& in,
                const std::string& out, int scale) {
    if (fs::is_directory(in)) {
        fs::create_directories(out);
        for (const std::string& name : list_rmd(in)) {
            const ScalarField hr = read_field((fs::path(in) / name).string());
            write_field((fs::path(out) / name).string(),
                        make_pair(hr, scale).lr);
        }
        echo_config(cfg, out, true);
    } else {
        const ScalarField hr = read_field(in);
        write_field(out, make_pair(hr, scale).lr);
        echo_config(cfg, out, false);
    }
    std::cout << "degraded " << in << " by " << scale << "x into " << out << "\n";
    return 0;
}

int cmd_train(const RunConfig& cfg, const std::string& data_dir,
              const std::string& out_dir) {
    fs::create_directories(out_dir);
    std::vector<ScalarField> dataset;
    for (const std::string& name : list_rmd(data_dir))
        dataset.push_back(read_field((fs::path(data_dir) / name).string()));

    TrainConfig tc = train_config(cfg);
    tc.loss_csv_path = (fs::path(out_dir) / "loss.csv").string();
    tc.checkpoint_path = (fs::path(out_dir) / "checkpoint.ckpt").string();
    const TrainResult res = train(tc, dataset);
    echo_config(cfg, out_dir, true);
    std::cout << "trained " << tc.iterations << " iterations; final loss "
              << (res.losses.empty() ? 0.0 : res.losses.back()) << "; wrote "
              << tc.checkpoint_path << "\n";
    return 0;
}

int cmd_sample(const RunConfig& cfg, const std::string& ckpt,
               const std::string& lr_path, const std::string& out, int nfe) {
    const ScalarField u_lr = read_field(lr_path);
    const ModelParams params = load_model(ckpt, cfg);
    const SampleSetup s = sample_setup(cfg, nfe, u_lr);
    const ScalarField hr = sample(u_lr, params, s.sched, s.scfg, sample_seed(cfg));
    write_field(out, hr);
    echo_config(cfg, out, false);
    std::cout << "sampled " << out << " with " << nfe << " steps\n";
    return 0;
}

int cmd_eval(const RunConfig& cfg, const std::string& pred_path,
             const std::string& gt_path, const std::string& out_prefix) {
    const ScalarField pred = read_field(pred_path);
    const ScalarField gt = read_field(gt_path);
    const EvalReport r = evaluate(pred, gt);

    std::ostringstream report;
    report << eval_report_csv_header() << '\n' << eval_report_csv_row(r) << '\n';
    write_text(out_prefix + "report.csv", report.str());

    std::ostringstream spec;
    spec.precision(17);
    spec << "k,power,count\n";
    for (std::size_t m = 0; m < r.error_spectrum.power.size(); ++m)
        spec << r.error_spectrum.bin_edges[m] << ',' << r.error_spectrum.power[m]
             << ',' << r.error_spectrum.count[m] << '\n';
    write_text(out_prefix + "error_spectrum.csv", spec.str());
    echo_config(cfg, out_prefix + "report.csv", false);
    std::cout << "rmse " << r.rmse << " psnr " << r.psnr << " ssim " << r.ssim
              << " ged " << r.ged << "\n";
    return 0;
}

int cmd_spectrum(const RunConfig& cfg, const std::string& in_path, int nbins,
                 const std::string& out) {
    const ScalarField f = read_field(in_path);
    if (nbins <= 0) nbins = full_bin_count(f.nx(), f.ny());
    const RadialSpectrum s = radial_power_spectrum(f, nbins);
    std::ostringstream os;
    os.precision(17);
    os << "k,power,count\n";
    for (std::size_t m = 0; m < s.power.size(); ++m)
        os << s.bin_edges[m] << ',' << s.power[m] << ',' << s.count[m] << '\n';
    write_text(out, os.str());
    echo_config(cfg, out, false);
    std::cout << "wrote " << nbins << "-bin spectrum to " << out << "\n";
    return 0;
}

int cmd_sweep(const RunConfig& cfg, const std::string& ckpt,
              const std::string& lr_dir, const std::string& gt_dir,
              const std::string& steps_csv, const std::string& out) {
    std::vector<int> steps;
    std::stringstream ss(steps_csv);
    for (std::string tok; std::getline(ss, tok, ',');)
        steps.push_back(std::stoi(tok));
    if (steps.empty()) throw std::invalid_argument("sweep: empty steps list");

    const std::vector<std::string> names = list_rmd(lr_dir);
    const ModelParams params = load_model(ckpt, cfg);

    std::ostringstream os;
    os.precision(17);
    os << "steps,rmse,seconds\n";
    for (const int k : steps) {
        const auto t0 = std::chrono::steady_clock::now();
        double acc = 0.0;
        for (const std::string& name : names) {
            const ScalarField u_lr = read_field((fs::path(lr_dir) / name).string());
            const ScalarField gt = read_field((fs::path(gt_dir) / name).string());
            const SampleSetup s = sample_setup(cfg, k, u_lr);
            const ScalarField hr =
                sample(u_lr, params, s.sched, s.scfg, sample_seed(cfg));
            acc += rmse(hr, gt);
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        os << k << ',' << acc / static_cast<double>(names.size()) << ',' << secs
           << '\n';
    }
    write_text(out, os.str());
    echo_config(cfg, out, false);
    std::cout << "swept {" << steps_csv << "} over " << names.size()
              << " fields into " << out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Few-step residual-diffusion super-resolution toolchain"};
    app.require_subcommand(1);

    GlobalArgs g;
    app.add_option("--config", g.config_files, "Config file(s), applied in order")
        ->check(CLI::ExistingFile);
    app.add_option("--set", g.overrides,
                   "Override one key: --set section.key=value (last wins)");

    std::string out, in, ckpt, lr_path, gt_path, pred_path, data_dir, lr_dir,
        gt_dir, steps = "1,2,5,10";
    int scale = 2, nfe = 5, nbins = 0;

    CLI::App* gen = app.add_subcommand("gen", "Generate a seeded synthetic dataset");
    gen->add_option("--out", out, "Output directory")->required();

    CLI::App* degrade = app.add_subcommand("degrade", "Block-average fields down");
    degrade->add_option("--in", in, "Input field file or directory")->required();
    degrade->add_option("--out", out, "Output file or directory")->required();
    degrade->add_option("--scale", scale, "Coarsening factor (2 or 4)");

    CLI::App* train = app.add_subcommand("train", "Train on a directory of fields");
    train->add_option("--data", data_dir, "Directory of fine-grid fields")->required();
    train->add_option("--out", out, "Run directory")->required();

    CLI::App* sampc = app.add_subcommand("sample", "Reconstruct one coarse field");
    sampc->add_option("--checkpoint", ckpt, "Checkpoint file")->required();
    sampc->add_option("--lr", lr_path, "Coarse input field")->required();
    sampc->add_option("--out", out, "Output field file")->required();
    sampc->add_option("--nfe", nfe, "Reverse steps");

    CLI::App* evalc = app.add_subcommand("eval", "Compare a prediction to ground truth");
    evalc->add_option("--pred", pred_path, "Predicted field")->required();
    evalc->add_option("--gt", gt_path, "Ground-truth field")->required();
    evalc->add_option("--out", out, "Output prefix for report and spectrum CSVs")
        ->required();

    CLI::App* spect = app.add_subcommand("spectrum", "Radial power spectrum CSV");
    spect->add_option("--in", in, "Field file")->required();
    spect->add_option("--nbins", nbins, "Bin count (0 = cover all modes)");
    spect->add_option("--out", out, "Output CSV")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "RMSE/time vs step count");
    sweep->add_option("--checkpoint", ckpt, "Checkpoint file")->required();
    sweep->add_option("--lr-dir", lr_dir, "Directory of coarse fields")->required();
    sweep->add_option("--gt-dir", gt_dir, "Directory of matching fine fields")
        ->required();
    sweep->add_option("--steps", steps, "Comma-separated step counts");
    sweep->add_option("--out", out, "Output CSV")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        const RunConfig cfg = effective_config(g);
        if (gen->parsed()) return cmd_gen(cfg, out);
        if (degrade->parsed()) return cmd_degrade(cfg, in, out, scale);
        if (train->parsed()) return cmd_train(cfg, data_dir, out);
        if (sampc->parsed()) return cmd_sample(cfg, ckpt, lr_path, out, nfe);
        if (evalc->parsed()) return cmd_eval(cfg, pred_path, gt_path, out);
        if (spect->parsed()) return cmd_spectrum(cfg, in, nbins, out);
        if (sweep->parsed()) return cmd_sweep(cfg, ckpt, lr_dir, gt_dir, steps, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
