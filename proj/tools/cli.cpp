#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "ebsw/error.hpp"
#include "ebsw/estimators.hpp"
#include "ebsw/flows.hpp"
#include "ebsw/image.hpp"
#include "ebsw/measure.hpp"
#include "ebsw/oracles.hpp"
#include "ebsw/parallel.hpp"

#ifndef EBSW_VERSION
#define EBSW_VERSION "dev"
#endif

namespace ebsw::cli {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct EstimatorFlags {
  std::string method = "sw";
  double p = 2.0;
  std::size_t L = 100;
  std::string energy = "e";
  std::uint64_t seed = 0;
  double kappa = 10.0;
  std::size_t T = 100;
  double eta = 0.1;
};

void add_estimator_flags(CLI::App* cmd, EstimatorFlags& f, const std::string& default_method) {
  f.method = default_method;
  cmd->add_option("--method", f.method, "sw|max-sw|is-ebsw|sir-ebsw|imh-ebsw|rmh-ebsw")->capture_default_str();
  cmd->add_option("--p", f.p, "order p >= 1")->capture_default_str();
  cmd->add_option("-L", f.L, "number of projections / chain length")->capture_default_str();
  cmd->add_option("--energy", f.energy, "energy function: 'e' or 'q:<q>[:<eps>]'")->capture_default_str();
  cmd->add_option("--seed", f.seed, "random seed")->capture_default_str();
  cmd->add_option("--kappa", f.kappa, "RMH vMF concentration")->capture_default_str();
  cmd->add_option("-T", f.T, "Max-SW ascent iterations")->capture_default_str();
  cmd->add_option("--eta", f.eta, "Max-SW ascent step size")->capture_default_str();
}

EstimatorConfig to_config(const EstimatorFlags& f) {
  EstimatorConfig c;
  c.method = parse_method(f.method);
  c.p = f.p;
  c.num_projections = f.L;
  c.energy = EnergyFunction::parse(f.energy);
  c.seed = RngSeed{f.seed};
  c.rmh_kappa = f.kappa;
  c.max_sw_iters = f.T;
  c.max_sw_step = f.eta;
  c.validate();
  return c;
}

json config_json(const EstimatorConfig& c) {
  return {{"method", std::string(method_name(c.method))},
          {"p", c.p},
          {"L", c.num_projections},
          {"energy", c.energy.to_string()},
          {"seed", c.seed.value},
          {"kappa", c.rmh_kappa},
          {"T", c.max_sw_iters},
          {"eta", c.max_sw_step}};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out.flush()) throw IoError("write failed for " + path.string());
}

/// Everything needed to rerun a command: the argument list is replayed verbatim.
void write_manifest(const fs::path& path, const std::string& command, const std::vector<std::string>& args,
                    const json& config, std::uint64_t seed, double wall_ms, const json& outputs) {
  json m = {{"command", command},     {"args", args},          {"config", config},  {"seed", seed},
            {"version", EBSW_VERSION}, {"wall_time_ms", wall_ms}, {"outputs", outputs}};
  write_text(path, m.dump(2) + "\n");
}

struct Context {
  const std::vector<std::string>& args;
  std::ostream& out;
  std::ostream& err;
};

// ---------------------------------------------------------------------------

struct DistanceCmd {
  EstimatorFlags est;
  std::string mu, nu, manifest;

  void setup(CLI::App& app) {
    auto* cmd = app.add_subcommand("distance", "estimate a sliced Wasserstein distance between two CSV clouds");
    add_estimator_flags(cmd, est, "sw");
    cmd->add_option("--mu", mu, "first point cloud (CSV)")->required();
    cmd->add_option("--nu", nu, "second point cloud (CSV)")->required();
    cmd->add_option("--manifest", manifest, "write a run manifest here");
  }

  int run(Context& ctx) {
    const auto start = Clock::now();
    const auto cfg = to_config(est);
    const auto a = load_measure(mu);
    const auto b = load_measure(nu);
    const double value = estimate(a, b, cfg).value;
    const double elapsed = ms_since(start);
    json config = config_json(cfg);
    config["mu"] = mu;
    config["nu"] = nu;
    const json result = {{"method", std::string(method_name(cfg.method))},
                         {"value", value},
                         {"elapsed_ms", elapsed},
                         {"config", config}};
    ctx.out << result.dump() << "\n";
    if (!manifest.empty()) {
      write_manifest(manifest, "distance", ctx.args, config, cfg.seed.value, elapsed, {{"value", value}});
    }
    return kOk;
  }
};

struct FlowFlags {
  std::size_t steps = 500;
  double gamma = 0.01;
  std::size_t eval_every = 0;
  std::string grad_mode = "conventional";
  std::string seed_policy = "fresh";

  void add(CLI::App* cmd) {
    cmd->add_option("--steps", steps, "Euler steps")->capture_default_str();
    cmd->add_option("--gamma", gamma, "Euler step size")->capture_default_str();
    cmd->add_option("--eval-every", eval_every, "record exact W2 every k steps (default: steps/5, at least 1)");
    cmd->add_option("--grad-mode", grad_mode, "IS-EBSW gradient: conventional|parameter-copy")->capture_default_str();
    cmd->add_option("--seed-policy", seed_policy, "fresh|fixed")->capture_default_str();
  }

  FlowConfig to_config(const EstimatorConfig& est, std::size_t default_eval) const {
    FlowConfig c;
    c.steps = steps;
    c.step_size = gamma;
    c.estimator = est;
    c.gradient_mode = parse_gradient_mode(grad_mode);
    c.seed_policy = parse_seed_policy(seed_policy);
    c.eval_every = eval_every ? eval_every : std::max<std::size_t>(1, std::min(default_eval, steps));
    c.validate();
    return c;
  }

  static json to_json(const FlowConfig& c) {
    json j = config_json(c.estimator);
    j["steps"] = c.steps;
    j["gamma"] = c.step_size;
    j["eval_every"] = c.eval_every;
    j["grad_mode"] = std::string(gradient_mode_name(c.gradient_mode));
    j["seed_policy"] = std::string(seed_policy_name(c.seed_policy));
    return j;
  }
};

struct FlowCmd {
  EstimatorFlags est;
  FlowFlags flow;
  std::string source, target, out_dir;

  void setup(CLI::App& app) {
    auto* cmd = app.add_subcommand("flow", "run a sliced Wasserstein gradient flow between CSV clouds");
    add_estimator_flags(cmd, est, "is-ebsw");
    flow.add(cmd);
    cmd->add_option("--source", source, "initial point cloud (CSV)")->required();
    cmd->add_option("--target", target, "target point cloud (CSV)")->required();
    cmd->add_option("--out", out_dir, "output directory")->required();
  }

  int run(Context& ctx) {
    const auto start = Clock::now();
    const auto cfg = flow.to_config(to_config(est), flow.steps / 5);
    const auto src = load_measure(source);
    const auto tgt = load_measure(target);
    const auto result = run_flow(src, tgt, cfg);
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    write_text(dir / "trace.csv", result.trace.to_csv());
    save_measure(result.final_cloud, dir / "final.csv");
    json config = FlowFlags::to_json(cfg);
    config["source"] = source;
    config["target"] = target;
    const auto& last = result.trace.records.back();
    json outputs = {{"trace", (dir / "trace.csv").string()},
                    {"final", (dir / "final.csv").string()},
                    {"final_eval_w2", last.eval_w2},
                    {"final_estimator_value", last.estimator_value}};
    write_manifest(dir / "manifest.json", "flow", ctx.args, config, cfg.estimator.seed.value, ms_since(start),
                   outputs);
    ctx.out << result.trace.to_csv();
    return kOk;
  }
};

struct ColorCmd {
  EstimatorFlags est;
  FlowFlags flow;
  std::string source, target, out, manifest;

  void setup(CLI::App& app) {
    auto* cmd = app.add_subcommand("color-transfer", "transfer the color palette of one PPM image to another");
    add_estimator_flags(cmd, est, "is-ebsw");
    flow.steps = 2000;
    flow.gamma = 0.002;
    flow.add(cmd);
    cmd->add_option("--source", source, "source image (binary PPM)")->required();
    cmd->add_option("--target", target, "target image (binary PPM)")->required();
    cmd->add_option("--out", out, "output image (binary PPM)")->required();
    cmd->add_option("--manifest", manifest, "manifest path (default: <out>.manifest.json)");
  }

  int run(Context& ctx) {
    const auto start = Clock::now();
    const auto cfg = flow.to_config(to_config(est), flow.steps);
    const auto src = read_ppm(source);
    const auto tgt = read_ppm(target);
    const auto result = color_transfer(src, tgt, cfg);
    write_ppm(result.image, out);
    json config = FlowFlags::to_json(cfg);
    config["source"] = source;
    config["target"] = target;
    const auto& last = result.trace.records.back();
    write_manifest(manifest.empty() ? out + ".manifest.json" : manifest, "color-transfer", ctx.args, config,
                   cfg.estimator.seed.value, ms_since(start),
                   {{"image", out}, {"final_palette_w2", last.eval_w2}});
    ctx.out << result.trace.to_csv();
    return kOk;
  }
};

struct DensityCmd {
  std::string mu, nu, energy = "e", out, manifest;
  double p = 2.0;
  std::size_t K = 360;

  void setup(CLI::App& app) {
    auto* cmd = app.add_subcommand("density", "export the energy-based slicing density on a circle grid (d = 2)");
    cmd->add_option("--mu", mu, "first point cloud (CSV, d = 2)")->required();
    cmd->add_option("--nu", nu, "second point cloud (CSV, d = 2)")->required();
    cmd->add_option("--energy", energy, "energy function: 'e' or 'q:<q>[:<eps>]'")->capture_default_str();
    cmd->add_option("--p", p, "order p >= 1")->capture_default_str();
    cmd->add_option("-K", K, "number of grid angles")->capture_default_str();
    cmd->add_option("--out", out, "write CSV here instead of stdout");
    cmd->add_option("--manifest", manifest, "write a run manifest here");
  }

  int run(Context& ctx) {
    const auto start = Clock::now();
    const auto f = EnergyFunction::parse(energy);
    const auto a = load_measure(mu);
    const auto b = load_measure(nu);
    const auto grid = slicing_density_grid(a, b, f, p, K);
    const auto csv = grid.to_csv();
    if (out.empty()) {
      ctx.out << csv;
    } else {
      write_text(out, csv);
    }
    if (!manifest.empty()) {
      const json config = {{"mu", mu}, {"nu", nu}, {"energy", f.to_string()}, {"p", p}, {"K", K}};
      write_manifest(manifest, "density", ctx.args, config, 0, ms_since(start),
                     {{"csv", out.empty() ? "<stdout>" : out}});
    }
    return kOk;
  }
};

struct BenchCmd {
  EstimatorFlags est;
  std::size_t n = 1000, d = 3, repeats = 20;
  std::string methods = "sw,is-ebsw,max-sw", manifest;

  void setup(CLI::App& app) {
    auto* cmd = app.add_subcommand("bench", "time estimators on a seeded Gaussian fixture");
    add_estimator_flags(cmd, est, "sw");
    cmd->add_option("--n", n, "points per cloud")->capture_default_str();
    cmd->add_option("--d", d, "dimension")->capture_default_str();
    cmd->add_option("--repeats", repeats, "timed repetitions per method")->capture_default_str();
    cmd->add_option("--methods", methods, "comma-separated methods")->capture_default_str();
    cmd->add_option("--manifest", manifest, "write a run manifest here");
  }

  static EmpiricalMeasure gaussian_cloud(std::size_t n, std::size_t d, double shift, RngSeed seed) {
    Rng rng = make_rng(seed);
    std::normal_distribution<double> normal;
    std::vector<double> coords(n * d);
    for (double& x : coords) x = normal(rng) + shift;
    return EmpiricalMeasure(n, d, std::move(coords));
  }

  int run(Context& ctx) {
    if (repeats == 0) throw ArgumentError("--repeats must be >= 1");
    const auto start = Clock::now();
    const auto base = to_config(est);
    const auto mu = gaussian_cloud(n, d, 0.0, derive_seed(base.seed, 1));
    const auto nu = gaussian_cloud(n, d, 1.0, derive_seed(base.seed, 2));

    json report = {{"n", n}, {"d", d}, {"L", base.num_projections}, {"repeats", repeats},
                   {"threads", num_threads()}, {"seed", base.seed.value}};
    json per_method = json::object();
    std::stringstream list(methods);
    std::string name;
    while (std::getline(list, name, ',')) {
      if (name.empty()) continue;
      auto cfg = base;
      cfg.method = parse_method(name);
      cfg.validate();
      std::vector<double> times;
      double value = 0.0;
      for (std::size_t r = 0; r < repeats; ++r) {
        const auto t0 = Clock::now();
        const double v = estimate(mu, nu, cfg).value;
        times.push_back(ms_since(t0));
        if (r > 0 && v != value) throw std::logic_error("non-deterministic estimator value in bench");
        value = v;
      }
      std::sort(times.begin(), times.end());
      const double median = times.size() % 2 ? times[times.size() / 2]
                                             : 0.5 * (times[times.size() / 2 - 1] + times[times.size() / 2]);
      per_method[std::string(method_name(cfg.method))] = {
          {"median_ms", median}, {"min_ms", times.front()}, {"max_ms", times.back()}, {"value", value}};
    }
    report["methods"] = per_method;
    if (per_method.contains("sw") && per_method.contains("is-ebsw")) {
      report["ratio_is_ebsw_over_sw"] =
          per_method["is-ebsw"]["median_ms"].get<double>() / per_method["sw"]["median_ms"].get<double>();
    }
    ctx.out << report.dump(2) << "\n";
    if (!manifest.empty()) {
      json config = config_json(base);
      config["n"] = n;
      config["d"] = d;
      config["repeats"] = repeats;
      config["methods"] = methods;
      json values = json::object();
      for (auto& [k, v] : per_method.items()) values[k] = v["value"];
      write_manifest(manifest, "bench", ctx.args, config, base.seed.value, ms_since(start), {{"values", values}});
    }
    return kOk;
  }
};

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case Error::Kind::kArgument: return kArgumentError;
    case Error::Kind::kDiverged: return kDiverged;
    default: return kDataError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Energy-based sliced Wasserstein distances, gradient flows and color transfer", "ebsw"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: all cores)")->envname("EBSW_THREADS");

  DistanceCmd distance;
  FlowCmd flow;
  ColorCmd color;
  DensityCmd density;
  BenchCmd bench;
  std::string replay_path;
  distance.setup(app);
  flow.setup(app);
  color.setup(app);
  density.setup(app);
  bench.setup(app);
  auto* replay = app.add_subcommand("replay", "rerun the command recorded in a manifest");
  replay->add_option("manifest", replay_path, "manifest JSON")->required();

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("ebsw");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kArgumentError;
  }
  if (threads < 0) {
    err << "error: --threads must be >= 0\n";
    return kArgumentError;
  }
  set_num_threads(threads);

  Context ctx{args, out, err};
  try {
    if (*replay) {
      std::ifstream in(replay_path);
      if (!in) throw IoError("cannot open " + replay_path);
      json manifest;
      try {
        in >> manifest;
      } catch (const json::exception& e) {
        throw FormatError(std::string("bad manifest: ") + e.what());
      }
      if (!manifest.contains("args") || !manifest["args"].is_array()) throw FormatError("manifest has no args list");
      return run(manifest["args"].get<std::vector<std::string>>(), out, err);
    }
    if (app.got_subcommand("distance")) return distance.run(ctx);
    if (app.got_subcommand("flow")) return flow.run(ctx);
    if (app.got_subcommand("color-transfer")) return color.run(ctx);
    if (app.got_subcommand("density")) return density.run(ctx);
    if (app.got_subcommand("bench")) return bench.run(ctx);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kArgumentError;
}

}  // namespace ebsw::cli
