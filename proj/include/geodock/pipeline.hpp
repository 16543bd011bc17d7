#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "geodock/docking.hpp"
#include "geodock/molecule.hpp"
#include "geodock/scoring.hpp"

namespace geodock {

enum class ExecMode { real, synthetic };

/// Node-level execution shape: CPU workers plus zero or more exclusive,
/// capacity-limited device lanes that stand in for accelerators. In
/// synthetic mode the kernels are replaced by the configured service times
/// and the identical scheduling policy is simulated in virtual time.
struct NodeConfig {
  unsigned n_workers = 1;
  unsigned n_devices = 0;
  unsigned lane_width = 8;  // concurrent scorers inside one lane
  ExecMode mode = ExecMode::real;

  // Synthetic per-ligand service times (seconds). The defaults model a
  // device that aligns ~16x faster than one core and optimizes ~2x faster,
  // with CPU optimization about 6x the device alignment cost.
  double t_align_device = 1.0;
  double t_align_cpu = 16.0;
  double t_opt_cpu = 6.0;
  double t_opt_device = 3.0;  // whole-ligand device path, used by the split baseline
};

/// One alignment batch handed to a device lane.
struct OffloadRecord {
  std::size_t ligand_index = 0;
  std::size_t worker_id = 0;
  std::size_t lane_id = 0;
};

struct RunMetrics {
  double wall_seconds = 0.0;
  double throughput = 0.0;  // ligands per second
  std::size_t ligand_count = 0;

  std::vector<double> device_busy_seconds;  // one entry per lane
  std::vector<double> device_idle_seconds;  // wall - busy, per lane
  std::vector<double> worker_wait_seconds;  // time spent waiting for a lane

  double align_seconds_total = 0.0;
  double optimize_seconds_total = 0.0;

  std::vector<OffloadRecord> offloads;
  std::vector<std::size_t> claim_worker;   // per ligand: worker that claimed the task
  std::vector<std::size_t> finish_worker;  // per ligand: worker that optimized it

  std::size_t exclusivity_violations = 0;  // concurrent offloads seen on one lane
  std::size_t lane_failures = 0;           // offloads retried on the CPU path

  double total_wait_seconds() const {
    double s = 0.0;
    for (double w : worker_wait_seconds) s += w;
    return s;
  }
  double total_busy_seconds() const {
    double s = 0.0;
    for (double b : device_busy_seconds) s += b;
    return s;
  }
};

/// Test instrumentation. inject_lane_failure is consulted once per offload;
/// returning true makes the offload fail so the task retries on the CPU.
struct PipelineHooks {
  std::function<bool(std::size_t lane_id, std::size_t ligand_index)> inject_lane_failure;
};

/// Docks the whole library: one tied task per ligand, claimed FIFO by idle
/// workers. With devices, the restart-batch alignment runs under exclusive
/// access on lane (worker id mod n_devices); optimization always runs on the
/// owning worker. Results are returned in library order and are bit-identical
/// to sequential dock_ligand for every (n_workers, n_devices) combination.
std::pair<std::vector<DockResult>, RunMetrics> run_screening(const std::vector<Ligand>& library,
                                                             const Pocket& pocket,
                                                             const DockParams& params,
                                                             const NodeConfig& config,
                                                             const PipelineHooks& hooks = {});

/// Discrete-event simulation of run_screening's exact scheduling policy using
/// the configured service times. Requires synthetic mode.
RunMetrics simulate_schedule(const NodeConfig& config, std::size_t n_ligands);

/// Simulation of the naive split baseline: n_devices dedicated whole-ligand
/// device workers plus (n_workers - n_devices) independent CPU workers,
/// sharing one FIFO task queue.
RunMetrics simulate_split_schedule(const NodeConfig& config, std::size_t n_ligands);

struct SummaryRow {
  double throughput = 0.0;
  double device_utilization = 0.0;  // total busy / (lanes * wall)
  double mean_wait_seconds = 0.0;   // lane wait per ligand
};

/// Report rows for sweep tables; empty when the run processed no ligands.
std::vector<SummaryRow> summarize(const RunMetrics& metrics);

/// Worker-count resolution: an explicit setting wins, then the
/// GEODOCK_WORKERS environment variable, then the fallback.
unsigned resolve_workers(std::optional<unsigned> explicit_workers, unsigned fallback);

}  // namespace geodock
