#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "geodock/docking.hpp"
#include "geodock/errors.hpp"
#include "geodock/generate.hpp"
#include "geodock/io.hpp"
#include "geodock/pipeline.hpp"

namespace {

using namespace geodock;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct SweepRange {
  unsigned lo = 1;
  unsigned hi = 1;
};

SweepRange parse_sweep(const std::string& text, bool allow_zero) {
  SweepRange r;
  const auto sep = text.find("..");
  try {
    if (sep == std::string::npos) {
      r.lo = r.hi = static_cast<unsigned>(std::stoul(text));
    } else {
      r.lo = static_cast<unsigned>(std::stoul(text.substr(0, sep)));
      r.hi = static_cast<unsigned>(std::stoul(text.substr(sep + 2)));
    }
  } catch (const std::exception&) {
    throw CLI::ValidationError("sweep range must look like A..B, got '" + text + "'");
  }
  if (r.lo > r.hi) throw CLI::ValidationError("sweep range is empty: '" + text + "'");
  if (!allow_zero && r.lo == 0) throw CLI::ValidationError("sweep values must be >= 1");
  return r;
}

struct DockOptions {
  std::string pocket_path;
  std::string ligands_path;
  std::string out_path = "results.csv";
  std::string metrics_path = "metrics.csv";
  DockParams params;
  std::vector<unsigned> rot_steps{16, 16, 8};
  std::optional<unsigned> workers;
  unsigned devices = 0;
  unsigned lane_width = 8;
};

void add_dock_params(CLI::App* cmd, DockParams& params, std::vector<unsigned>& rot_steps) {
  cmd->add_option("--restarts", params.n_restarts, "Independent restarts per ligand")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--reps", params.num_repetitions, "Optimization passes per restart")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--rot-steps", rot_steps, "Rotation grid steps a,b,c")
      ->delimiter(',')
      ->expected(3)
      ->capture_default_str();
  cmd->add_option("--dihedral-steps", params.dihedral_steps, "Dihedral candidates per rotamer")
      ->capture_default_str()
      ->check(CLI::Range(2u, 1000000u));
  cmd->add_option("--clash", params.clash_factor, "Bump-check clash factor in (0,1]")
      ->capture_default_str()
      ->check(CLI::Range(1e-9, 1.0));
  cmd->add_option("--seed", params.seed, "Base seed for restart generation")
      ->capture_default_str();
}

void apply_rot_steps(DockParams& params, const std::vector<unsigned>& rot_steps) {
  params.rotation_steps = {rot_steps[0], rot_steps[1], rot_steps[2]};
}

unsigned default_workers() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? hc : 1;
}

int cmd_dock(const DockOptions& opt) {
  const Pocket pocket = load_pocket(opt.pocket_path);
  const std::vector<Ligand> library = load_ligand_library(opt.ligands_path);
  if (library.empty()) {
    std::cerr << "error: ligand library '" << opt.ligands_path << "' is empty\n";
    return kExitUsage;
  }

  NodeConfig config;
  config.n_workers = resolve_workers(opt.workers, default_workers());
  config.n_devices = opt.devices;
  config.lane_width = opt.lane_width;
  config.mode = ExecMode::real;

  auto [results, metrics] = run_screening(library, pocket, opt.params, config);

  std::ofstream out(opt.out_path);
  if (!out) throw ParseError("cannot open '" + opt.out_path + "' for writing");
  write_results(out, results);
  std::ofstream mout(opt.metrics_path);
  if (!mout) throw ParseError("cannot open '" + opt.metrics_path + "' for writing");
  write_metrics(mout, metrics, config);

  std::cout << "docked " << results.size() << " ligands in " << format_double(metrics.wall_seconds)
            << " s (" << format_double(metrics.throughput) << " ligands/s, workers="
            << config.n_workers << ", devices=" << config.n_devices << ")\n";
  return kExitOk;
}

struct BenchOptions {
  std::string mode = "synthetic";
  std::string sweep_workers = "1..16";
  std::string sweep_devices = "1..1";
  std::string out_path = "bench.csv";
  std::string pocket_path;
  std::string ligands_path;
  std::size_t count = 1000;
  NodeConfig config;
  DockParams params;
  std::vector<unsigned> rot_steps{16, 16, 8};
  unsigned lane_width = 8;
};

int cmd_bench(const BenchOptions& opt) {
  const SweepRange workers = parse_sweep(opt.sweep_workers, false);
  const SweepRange devices = parse_sweep(opt.sweep_devices, true);
  const bool synthetic = opt.mode == "synthetic";

  Pocket pocket;
  std::vector<Ligand> library;
  if (!synthetic) {
    pocket = load_pocket(opt.pocket_path);
    library = load_ligand_library(opt.ligands_path);
    if (library.empty()) {
      std::cerr << "error: ligand library '" << opt.ligands_path << "' is empty\n";
      return kExitUsage;
    }
  }

  std::ofstream out(opt.out_path);
  if (!out) throw ParseError("cannot open '" + opt.out_path + "' for writing");
  out << "workers,devices,mode,throughput,device_utilization,mean_wait_seconds\n";

  for (unsigned d = devices.lo; d <= devices.hi; ++d) {
    for (unsigned w = workers.lo; w <= workers.hi; ++w) {
      NodeConfig config = opt.config;
      config.n_workers = w;
      config.n_devices = d;
      config.lane_width = opt.lane_width;
      config.mode = synthetic ? ExecMode::synthetic : ExecMode::real;

      RunMetrics metrics;
      if (synthetic) {
        metrics = simulate_schedule(config, opt.count);
      } else {
        DockParams params = opt.params;
        auto [results, m] = run_screening(library, pocket, params, config);
        metrics = std::move(m);
      }
      const std::vector<SummaryRow> rows = summarize(metrics);
      for (const SummaryRow& row : rows) {
        out << w << "," << d << "," << opt.mode << "," << format_double(row.throughput) << ","
            << format_double(row.device_utilization) << ","
            << format_double(row.mean_wait_seconds) << "\n";
      }
    }
  }
  std::cout << "sweep written to " << opt.out_path << "\n";
  return kExitOk;
}

struct ProfileOptions {
  std::string pocket_path;
  std::string ligands_path;
  std::size_t sample = 4;
  DockParams params;
  std::vector<unsigned> rot_steps{16, 16, 8};
};

int cmd_profile(const ProfileOptions& opt) {
  const Pocket pocket = load_pocket(opt.pocket_path);
  std::vector<Ligand> library = load_ligand_library(opt.ligands_path);
  if (library.empty()) {
    std::cerr << "error: ligand library '" << opt.ligands_path << "' is empty\n";
    return kExitUsage;
  }
  if (library.size() > opt.sample) library.resize(opt.sample);

  DockStats stats;
  std::uint64_t align_visits = 0;
  std::uint64_t optimize_visits = 0;
  std::uint64_t expected_calls = 0;
  for (const Ligand& lig : library) {
    dock_ligand(lig, pocket, opt.params, &stats);
    align_visits += opt.params.n_restarts;
    optimize_visits +=
        static_cast<std::uint64_t>(opt.params.n_restarts) * opt.params.num_repetitions;
    expected_calls += count_score_calls(opt.params, lig.rotamers.size());
  }

  const double total_wall = stats.align_wall_seconds + stats.optimize_wall_seconds;
  const double align_pct = total_wall > 0.0 ? 100.0 * stats.align_wall_seconds / total_wall : 0.0;
  const double optimize_pct =
      total_wall > 0.0 ? 100.0 * stats.optimize_wall_seconds / total_wall : 0.0;

  std::printf("function time_pct visits\n");
  std::printf("align_ligand %.2f %llu\n", align_pct,
              static_cast<unsigned long long>(align_visits));
  std::printf("optimize_pose %.2f %llu\n", optimize_pct,
              static_cast<unsigned long long>(optimize_visits));
  std::printf("score_pose[align] - %llu\n",
              static_cast<unsigned long long>(stats.align_score_calls));
  std::printf("score_pose[optimize] - %llu\n",
              static_cast<unsigned long long>(stats.optimize_score_calls));
  std::printf("bump_check - %llu\n", static_cast<unsigned long long>(stats.bump_checks));
  std::printf("rotate_fragment - %llu\n",
              static_cast<unsigned long long>(stats.fragment_rotations));
  std::printf("total_score_calls - %llu\n",
              static_cast<unsigned long long>(stats.align_score_calls +
                                              stats.optimize_score_calls));
  std::printf("expected_score_calls - %llu\n", static_cast<unsigned long long>(expected_calls));
  return kExitOk;
}

struct GenOptions {
  std::size_t ligands = 100;
  std::size_t atoms = 16;
  std::size_t rotamers = 4;
  std::uint64_t seed = 0;
  std::string out_path = "library.lgd";
  std::string pocket_out_path = "pocket.pkt";
  std::vector<std::size_t> dims{24, 24, 24};
  double spacing = 0.75;
  unsigned blobs = 6;
};

int cmd_gen(const GenOptions& opt) {
  PocketSpec pocket_spec;
  pocket_spec.dims = {opt.dims[0], opt.dims[1], opt.dims[2]};
  pocket_spec.spacing = opt.spacing;
  pocket_spec.blobs = opt.blobs;
  pocket_spec.seed = opt.seed;
  const Pocket pocket = make_pocket(pocket_spec);
  save_pocket(opt.pocket_out_path, pocket);

  LibrarySpec lib_spec;
  lib_spec.count = opt.ligands;
  lib_spec.atoms = opt.atoms;
  lib_spec.rotamers = opt.rotamers;
  lib_spec.seed = opt.seed;
  const std::vector<Ligand> library = make_library(lib_spec);
  save_ligand_library(opt.out_path, library);

  std::cout << "wrote " << library.size() << " ligands to " << opt.out_path << " and pocket to "
            << opt.pocket_out_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geodock: geometric docking mini-app and scheduling benchmark"};
  app.require_subcommand(1);

  DockOptions dock_opt;
  CLI::App* dock = app.add_subcommand("dock", "Dock a ligand library against a pocket");
  dock->add_option("--pocket", dock_opt.pocket_path, "Pocket file (.pkt)")->required();
  dock->add_option("--ligands", dock_opt.ligands_path, "Ligand library file (.lgd)")->required();
  dock->add_option("--out", dock_opt.out_path, "Results CSV path")->capture_default_str();
  dock->add_option("--metrics", dock_opt.metrics_path, "Metrics CSV path")->capture_default_str();
  add_dock_params(dock, dock_opt.params, dock_opt.rot_steps);
  unsigned dock_workers = 0;
  dock->add_option("--workers", dock_workers, "Worker count (default: GEODOCK_WORKERS or cores)")
      ->check(CLI::PositiveNumber);
  dock->add_option("--devices", dock_opt.devices, "Device lane count")->capture_default_str();
  dock->add_option("--lane-width", dock_opt.lane_width, "Concurrent scorers per lane")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  BenchOptions bench_opt;
  CLI::App* bench = app.add_subcommand("bench", "Sweep worker/device configurations");
  bench->add_option("--mode", bench_opt.mode, "real or synthetic")
      ->capture_default_str()
      ->check(CLI::IsMember({"real", "synthetic"}));
  bench->add_option("--sweep-workers", bench_opt.sweep_workers, "Worker sweep A..B")
      ->capture_default_str();
  bench->add_option("--sweep-devices", bench_opt.sweep_devices, "Device sweep A..B")
      ->capture_default_str();
  bench->add_option("--out", bench_opt.out_path, "Sweep CSV path")->capture_default_str();
  bench->add_option("--count", bench_opt.count, "Synthetic-mode ligand count")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench->add_option("--pocket", bench_opt.pocket_path, "Pocket file (real mode)");
  bench->add_option("--ligands", bench_opt.ligands_path, "Ligand library (real mode)");
  bench->add_option("--t-align", bench_opt.config.t_align_device,
                    "Synthetic device alignment seconds per ligand")
      ->capture_default_str();
  bench->add_option("--t-align-cpu", bench_opt.config.t_align_cpu,
                    "Synthetic CPU alignment seconds per ligand")
      ->capture_default_str();
  bench->add_option("--t-opt", bench_opt.config.t_opt_cpu,
                    "Synthetic CPU optimization seconds per ligand")
      ->capture_default_str();
  bench->add_option("--t-opt-device", bench_opt.config.t_opt_device,
                    "Synthetic device optimization seconds per ligand (split baseline)")
      ->capture_default_str();
  bench->add_option("--lane-width", bench_opt.lane_width, "Concurrent scorers per lane")
      ->capture_default_str();
  add_dock_params(bench, bench_opt.params, bench_opt.rot_steps);

  ProfileOptions profile_opt;
  CLI::App* profile = app.add_subcommand("profile", "Per-phase timing and visit counts");
  profile->add_option("--pocket", profile_opt.pocket_path, "Pocket file (.pkt)")->required();
  profile->add_option("--ligands", profile_opt.ligands_path, "Ligand library (.lgd)")->required();
  profile->add_option("--sample", profile_opt.sample, "Ligands to profile")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  add_dock_params(profile, profile_opt.params, profile_opt.rot_steps);

  GenOptions gen_opt;
  CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic pocket and ligand library");
  gen->add_option("--ligands", gen_opt.ligands, "Number of ligands to generate")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  gen->add_option("--atoms", gen_opt.atoms, "Atoms per ligand")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  gen->add_option("--rotamers", gen_opt.rotamers, "Rotamers per ligand (clamped to atoms-1)")
      ->capture_default_str();
  gen->add_option("--seed", gen_opt.seed, "Generator seed")->capture_default_str();
  gen->add_option("--out", gen_opt.out_path, "Library output path")->capture_default_str();
  gen->add_option("--pocket-out", gen_opt.pocket_out_path, "Pocket output path")
      ->capture_default_str();
  gen->add_option("--dims", gen_opt.dims, "Pocket grid dims nx,ny,nz")
      ->delimiter(',')
      ->expected(3)
      ->capture_default_str();
  gen->add_option("--spacing", gen_opt.spacing, "Pocket voxel spacing (A)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  gen->add_option("--blobs", gen_opt.blobs, "Gaussian blobs in the pocket field")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (dock->parsed()) {
      if (dock->count("--workers")) dock_opt.workers = dock_workers;
      apply_rot_steps(dock_opt.params, dock_opt.rot_steps);
      return cmd_dock(dock_opt);
    }
    if (bench->parsed()) {
      apply_rot_steps(bench_opt.params, bench_opt.rot_steps);
      return cmd_bench(bench_opt);
    }
    if (profile->parsed()) {
      apply_rot_steps(profile_opt.params, profile_opt.rot_steps);
      return cmd_profile(profile_opt);
    }
    if (gen->parsed()) {
      return cmd_gen(gen_opt);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
