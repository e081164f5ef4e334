// Command-line harness: single-algorithm runs, four-way comparisons,
// synthetic scenario generation, and the oracle self-test.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "anc/fap.hpp"
#include "anc/filters_classic.hpp"
#include "anc/oracle_check.hpp"
#include "anc/pipeline.hpp"
#include "anc/scenario.hpp"
#include "anc/wav.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitDiverged = 4;
constexpr int kExitOracle = 5;

struct CommonOpts {
  // Algorithm parameters; defaults follow the benchmark configuration
  // (M=8, lambda=0.99, L=25, P=8, mu=0.002 for LMS/FAP and 0.005 for NLMS).
  std::size_t order = 8;
  double mu_lms = 0.002;
  double mu_nlms = 0.005;
  double mu_fap = 0.002;
  double lambda = 0.99;
  double epsilon = 1e-8;
  std::size_t window = 25;
  std::size_t iterations = 8;
  std::string selection_norm = "norm";

  // Scenario.
  bool synth = false;
  std::uint64_t seed = 1;
  std::size_t samples = 30000;
  double snr_db = -10.218;
  std::string noise_kind = "babble";
  std::size_t channel_order = 8;

  // Files.
  std::string primary_path;
  std::string reference_path;
  std::string clean_path;
};

struct LoadedScenario {
  anc::AncScenario scenario;
  std::uint32_t sample_rate = 16000;
  bool clean_available = false;
};

anc::SelectionNorm parse_selection_norm(const std::string& s) {
  if (s == "norm") return anc::SelectionNorm::kNorm;
  if (s == "norm_squared") return anc::SelectionNorm::kNormSquared;
  throw anc::InvalidConfig("selection-norm must be norm or norm_squared");
}

std::unique_ptr<anc::AdaptiveFilter> make_filter(const std::string& algo,
                                                 const CommonOpts& o) {
  if (algo == "lms") return std::make_unique<anc::LmsFilter>(o.order, o.mu_lms);
  if (algo == "nlms") {
    return std::make_unique<anc::NlmsFilter>(o.order, o.mu_nlms, o.epsilon);
  }
  if (algo == "rls") return std::make_unique<anc::RlsFilter>(o.order, o.lambda);
  if (algo == "fap") {
    anc::FapConfig cfg;
    cfg.order = o.order;
    cfg.window = o.window;
    cfg.iterations = o.iterations;
    cfg.mu = o.mu_fap;
    cfg.selection_norm = parse_selection_norm(o.selection_norm);
    return std::make_unique<anc::FapFilter>(cfg);
  }
  throw anc::InvalidConfig("unknown algorithm: " + algo);
}

LoadedScenario load_scenario(const CommonOpts& o) {
  LoadedScenario out;
  if (o.synth) {
    anc::ScenarioConfig cfg;
    cfg.seed = o.seed;
    cfg.length = o.samples;
    cfg.channel_order = o.channel_order;
    cfg.snr_target_db = o.snr_db;
    cfg.noise_kind = anc::parse_noise_kind(o.noise_kind);
    out.scenario = anc::synth_scenario(cfg);
    out.clean_available = true;
    return out;
  }
  if (o.primary_path.empty() || o.reference_path.empty()) {
    throw anc::InvalidConfig(
        "either --synth or both --primary and --reference are required");
  }
  const anc::WavData primary = anc::wav_read(o.primary_path);
  const anc::WavData reference = anc::wav_read(o.reference_path);
  out.sample_rate = primary.sample_rate;

  std::size_t n = std::min(primary.samples.size(), reference.samples.size());
  anc::AncScenario& sc = out.scenario;
  sc.d.assign(primary.samples.begin(), primary.samples.begin() + n);
  sc.n1.assign(reference.samples.begin(), reference.samples.begin() + n);
  if (!o.clean_path.empty()) {
    const anc::WavData clean = anc::wav_read(o.clean_path);
    n = std::min(n, clean.samples.size());
    sc.d.resize(n);
    sc.n1.resize(n);
    sc.s.assign(clean.samples.begin(), clean.samples.begin() + n);
    out.clean_available = true;
  } else {
    sc.s.assign(n, 0.0);
  }
  sc.n0.resize(n);
  for (std::size_t t = 0; t < n; ++t) sc.n0[t] = sc.d[t] - sc.s[t];
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_mse_csv(const std::string& path, const anc::LearningCurve& curve) {
  std::string csv = "sample_index,mse_raw,mse_smoothed\n";
  for (std::size_t t = 0; t < curve.mse.size(); ++t) {
    csv += std::to_string(t);
    csv += ',';
    csv += format_double(curve.mse[t]);
    csv += ',';
    csv += format_double(curve.smoothed[t]);
    csv += '\n';
  }
  anc::write_file_atomic(path, csv);
}

ordered_json summary_json(const std::string& algo, const CommonOpts& o,
                          const anc::AncResult& res, bool clean_available,
                          std::size_t clip_count) {
  ordered_json j;
  j["algo"] = algo;
  j["order"] = o.order;
  if (algo == "lms") j["mu"] = o.mu_lms;
  if (algo == "nlms") {
    j["mu"] = o.mu_nlms;
    j["epsilon"] = o.epsilon;
  }
  if (algo == "rls") j["lambda"] = o.lambda;
  if (algo == "fap") {
    j["mu"] = o.mu_fap;
    j["window"] = o.window;
    j["iterations"] = o.iterations;
    j["selection_norm"] = o.selection_norm;
  }
  j["seed"] = o.seed;
  j["samples"] = res.e.size();
  if (clean_available) {
    j["snr_in_db"] = res.snr_in;
    j["snr_out_db"] = res.snr_out;
    j["snri_db"] = res.snri;
    j["snr_capped"] = res.snr_capped;
  } else {
    j["snr_in_db"] = nullptr;
    j["snr_out_db"] = nullptr;
    j["snri_db"] = nullptr;
    j["snr_capped"] = false;
  }
  j["samples_to_converge"] = anc::samples_to_converge(res.curve);
  j["diverged"] = res.diverged;
  if (res.diverged) j["divergence_index"] = res.divergence_index;
  j["clip_count"] = clip_count;
  return j;
}

int cmd_run(const std::string& algo, const CommonOpts& o,
            const std::string& out_wav, const std::string& mse_csv,
            const std::string& summary_path) {
  const LoadedScenario loaded = load_scenario(o);
  auto filter = make_filter(algo, o);
  const anc::AncResult res = anc::run_anc(loaded.scenario, *filter);

  const std::size_t clip_count =
      anc::wav_write(out_wav, res.e, loaded.sample_rate);
  write_mse_csv(mse_csv, res.curve);
  const ordered_json j =
      summary_json(algo, o, res, loaded.clean_available, clip_count);
  anc::write_file_atomic(summary_path, j.dump(2) + "\n");
  std::printf("%s\n", j.dump(2).c_str());
  if (clip_count > 0) {
    std::fprintf(stderr, "warning: %zu samples clipped on write\n", clip_count);
  }
  return res.diverged ? kExitDiverged : kExitOk;
}

int cmd_compare(const CommonOpts& o, const std::string& out_dir) {
  const LoadedScenario loaded = load_scenario(o);
  std::filesystem::create_directories(out_dir);

  const std::vector<std::string> algos = {"lms", "nlms", "rls", "fap"};
  std::string csv = "algo,snri_db,samples_to_converge,diverged\n";
  std::printf("%-10s %12s %20s %10s\n", "Algorithm", "SNRI (dB)",
              "Converge (samples)", "Diverged");

  for (const std::string& algo : algos) {
    auto filter = make_filter(algo, o);
    const anc::AncResult res = anc::run_anc(loaded.scenario, *filter);
    const std::size_t conv = anc::samples_to_converge(res.curve);
    write_mse_csv(out_dir + "/" + algo + "_mse.csv", res.curve);

    char snri_buf[32];
    std::snprintf(snri_buf, sizeof snri_buf, "%.4f", res.snri);
    csv += algo + "," + snri_buf + "," + std::to_string(conv) + "," +
           (res.diverged ? "yes" : "no") + "\n";
    std::printf("%-10s %12s %20zu %10s\n", algo.c_str(), snri_buf, conv,
                res.diverged ? "yes" : "no");
  }
  anc::write_file_atomic(out_dir + "/compare.csv", csv);
  return kExitOk;
}

int cmd_synth(const CommonOpts& o, const std::string& out_dir,
              std::uint32_t rate) {
  anc::ScenarioConfig cfg;
  cfg.seed = o.seed;
  cfg.length = o.samples;
  cfg.channel_order = o.channel_order;
  cfg.snr_target_db = o.snr_db;
  cfg.noise_kind = anc::parse_noise_kind(o.noise_kind);
  const anc::AncScenario sc = anc::synth_scenario(cfg);

  std::filesystem::create_directories(out_dir);
  anc::wav_write(out_dir + "/clean.wav", sc.s, rate);
  anc::wav_write(out_dir + "/primary.wav", sc.d, rate);
  anc::wav_write(out_dir + "/reference.wav", sc.n1, rate);
  std::printf("wrote clean.wav, primary.wav, reference.wav to %s\n",
              out_dir.c_str());
  return kExitOk;
}

int cmd_oracle_check(std::size_t samples, std::uint64_t seed,
                     bool inject_fault) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto reports = anc::run_all_oracle_checks(samples, seed, inject_fault);
  const auto t1 = std::chrono::steady_clock::now();

  bool all_pass = true;
  for (const auto& r : reports) {
    std::printf("%-24s max deviation %.3e (tolerance %.0e) ... %s\n",
                r.name.c_str(), r.max_deviation, r.tolerance,
                r.pass ? "ok" : "FAIL");
    if (!r.pass && all_pass) {
      std::fprintf(stderr, "tolerance violated: %s (%.3e > %.0e)\n",
                   r.name.c_str(), r.max_deviation, r.tolerance);
      all_pass = false;
    }
  }
  std::printf("elapsed %.2f s\n",
              std::chrono::duration<double>(t1 - t0).count());
  return all_pass ? kExitOk : kExitOracle;
}

void add_common_flags(CLI::App* app, CommonOpts& o, bool with_algo_params) {
  if (with_algo_params) {
    app->add_option("-M,--order", o.order, "Filter order M");
    app->add_option("--mu", o.mu_lms, "Step size for LMS and FAP");
    app->add_option("--mu-nlms", o.mu_nlms, "Step size for NLMS");
    app->add_option("--lambda", o.lambda, "RLS forgetting factor");
    app->add_option("--epsilon", o.epsilon, "NLMS regularizer");
    app->add_option("-L,--window", o.window, "FAP window length L");
    app->add_option("-P,--iterations", o.iterations, "FAP updates per sample");
    app->add_option("--selection-norm", o.selection_norm,
                    "FAP selection rule: norm | norm_squared");
  }
  app->add_flag("--synth", o.synth, "Use the synthetic scenario generator");
  app->add_option("--seed", o.seed, "Scenario seed");
  app->add_option("--samples", o.samples, "Synthetic scenario length");
  app->add_option("--snr-db", o.snr_db, "Synthetic input SNR target (dB)");
  app->add_option("--noise-kind", o.noise_kind,
                  "Synthetic noise: white | colored | babble");
  app->add_option("--channel-order", o.channel_order,
                  "Synthetic unknown-channel order");
  app->add_option("--primary", o.primary_path, "Primary (speech+noise) WAV");
  app->add_option("--reference", o.reference_path, "Reference noise WAV");
  app->add_option("--clean", o.clean_path, "Clean speech WAV (optional)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-microphone adaptive noise cancellation harness"};
  app.require_subcommand(1);

  CommonOpts run_opts;
  std::string run_algo;
  std::string out_wav = "out.wav";
  std::string mse_csv = "mse.csv";
  std::string summary_path = "summary.json";
  CLI::App* run = app.add_subcommand("run", "Run one algorithm");
  run->add_option("--algo", run_algo, "lms | nlms | rls | fap")->required();
  run->add_option("--mu-fap", run_opts.mu_fap, "Step size for FAP");
  add_common_flags(run, run_opts, true);
  run->add_option("--out", out_wav, "Denoised output WAV");
  run->add_option("--mse-csv", mse_csv, "Learning curve CSV");
  run->add_option("--summary-json", summary_path, "Run summary JSON");

  CommonOpts cmp_opts;
  std::string cmp_dir = "compare_out";
  CLI::App* compare =
      app.add_subcommand("compare", "Run all four algorithms side by side");
  compare->add_option("--mu-fap", cmp_opts.mu_fap, "Step size for FAP");
  add_common_flags(compare, cmp_opts, true);
  compare->add_option("--out", cmp_dir, "Output directory");

  CommonOpts synth_opts;
  std::string synth_dir = "scenario_out";
  std::uint32_t synth_rate = 16000;
  CLI::App* synth =
      app.add_subcommand("synth", "Emit a synthetic scenario's WAV files");
  add_common_flags(synth, synth_opts, false);
  synth->add_option("--out", synth_dir, "Output directory");
  synth->add_option("--rate", synth_rate, "Sample rate for the WAV headers");

  std::size_t oracle_samples = 20000;
  std::uint64_t oracle_seed = 42;
  bool inject_fault = false;
  CLI::App* oracle =
      app.add_subcommand("oracle-check", "Run the equivalence self-tests");
  oracle->add_option("--samples", oracle_samples, "Cache-check sample count");
  oracle->add_option("--seed", oracle_seed, "Self-test seed");
  oracle->add_flag("--inject-fault", inject_fault)->group("");  // hidden

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (run->parsed()) {
      // Single --mu drives both LMS and FAP unless --mu-fap overrides it.
      if (run->count("--mu") && !run->count("--mu-fap")) {
        run_opts.mu_fap = run_opts.mu_lms;
      }
      if (run_algo == "nlms" && run->count("--mu")) {
        run_opts.mu_nlms = run_opts.mu_lms;
      }
      return cmd_run(run_algo, run_opts, out_wav, mse_csv, summary_path);
    }
    if (compare->parsed()) {
      if (compare->count("--mu") && !compare->count("--mu-fap")) {
        cmp_opts.mu_fap = cmp_opts.mu_lms;
      }
      return cmd_compare(cmp_opts, cmp_dir);
    }
    if (synth->parsed()) return cmd_synth(synth_opts, synth_dir, synth_rate);
    if (oracle->parsed()) {
      return cmd_oracle_check(oracle_samples, oracle_seed, inject_fault);
    }
  } catch (const anc::InvalidConfig& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const anc::UnsupportedFormat& e) {
    std::fprintf(stderr, "unsupported input: %s\n", e.what());
    return kExitIo;
  } catch (const anc::IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kExitIo;
  } catch (const anc::DegenerateSnr& e) {
    std::fprintf(stderr, "degenerate SNR: %s\n", e.what());
    return kExitConfig;
  }
  return kExitOk;
}
