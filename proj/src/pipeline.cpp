#include "geodock/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <exception>
#include <memory>
#include <mutex>
#include <queue>
#include <stdexcept>
#include <string>
#include <thread>

#include "geodock/errors.hpp"

namespace geodock {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

/// Stands in for one accelerator: an exclusive guard plus a fixed-width pool
/// of scorer threads that execute one batch of jobs at a time. At most one
/// offloaded batch is ever in flight per lane; the guard is held by the
/// offloading worker for the whole batch.
class DeviceLane {
 public:
  DeviceLane(std::size_t id, unsigned width) : id_(id) {
    threads_.reserve(width);
    for (unsigned t = 0; t < width; ++t) {
      threads_.emplace_back([this] { pool_main(); });
    }
  }

  ~DeviceLane() {
    {
      std::lock_guard<std::mutex> lk(mu_);
      stop_ = true;
    }
    work_cv_.notify_all();
    for (std::thread& t : threads_) t.join();
  }

  DeviceLane(const DeviceLane&) = delete;
  DeviceLane& operator=(const DeviceLane&) = delete;

  /// Runs fn(0) .. fn(n_jobs - 1) on the pool and blocks until all finish.
  /// The first exception thrown by a job is rethrown here after the batch
  /// drains. Caller must hold `guard`.
  void run_batch(std::size_t n_jobs, const std::function<void(std::size_t)>& fn) {
    std::unique_lock<std::mutex> lk(mu_);
    fn_ = &fn;
    job_count_ = n_jobs;
    next_job_ = 0;
    completed_ = 0;
    batch_error_ = nullptr;
    work_cv_.notify_all();
    done_cv_.wait(lk, [this] { return completed_ == job_count_; });
    fn_ = nullptr;
    if (batch_error_) {
      std::exception_ptr error = batch_error_;
      batch_error_ = nullptr;
      std::rethrow_exception(error);
    }
  }

  std::size_t id() const { return id_; }

  std::mutex guard;
  std::atomic<int> in_flight{0};
  std::atomic<std::uint64_t> violations{0};
  double busy_seconds = 0.0;  // written only while `guard` is held

 private:
  void pool_main() {
    // Job claims happen under the lock. A claimed job keeps completed_ below
    // job_count_, so run_batch cannot reset the counters while any claimed
    // job is still executing; the stale-batch race is structurally excluded.
    std::unique_lock<std::mutex> lk(mu_);
    while (true) {
      work_cv_.wait(lk, [this] { return stop_ || (fn_ != nullptr && next_job_ < job_count_); });
      if (stop_) return;
      const std::size_t i = next_job_++;
      const std::function<void(std::size_t)>* fn = fn_;
      lk.unlock();
      std::exception_ptr error;
      try {
        (*fn)(i);
      } catch (...) {
        error = std::current_exception();
      }
      lk.lock();
      if (error && !batch_error_) batch_error_ = error;
      ++completed_;
      if (completed_ == job_count_) done_cv_.notify_all();
    }
  }

  const std::size_t id_;
  std::mutex mu_;
  std::condition_variable work_cv_;
  std::condition_variable done_cv_;
  const std::function<void(std::size_t)>* fn_ = nullptr;
  std::size_t job_count_ = 0;
  std::size_t next_job_ = 0;
  std::size_t completed_ = 0;
  std::exception_ptr batch_error_;
  bool stop_ = false;
  std::vector<std::thread> threads_;
};

struct LaneAlignOutcome {
  std::vector<AlignedRestart> aligned;
  double busy_seconds = 0.0;
  double wait_seconds = 0.0;
};

/// Offloads the full restart batch of one ligand to a lane: the starting
/// poses are generated on the lane, every (restart, rotation-chunk) slice is
/// scored by the lane pool, and the worker reduces the chunk results and
/// applies each winning rotation once.
LaneAlignOutcome align_batch_on_lane(DeviceLane& lane, const Ligand& ligand, const Pocket& pocket,
                                     const DockParams& params, const RotationGrid& grid,
                                     unsigned lane_width, std::size_t ligand_index,
                                     const PipelineHooks& hooks) {
  const std::size_t n_restarts = params.n_restarts;
  const std::size_t chunks_per_restart = std::max<std::size_t>(
      1, std::min<std::size_t>(lane_width, grid.size()));

  LaneAlignOutcome outcome;
  const auto wait_start = Clock::now();
  std::unique_lock<std::mutex> hold(lane.guard);
  const auto acquired = Clock::now();
  outcome.wait_seconds = seconds_between(wait_start, acquired);

  const int prior = lane.in_flight.fetch_add(1, std::memory_order_acq_rel);
  if (prior != 0) lane.violations.fetch_add(1, std::memory_order_relaxed);

  try {
    if (hooks.inject_lane_failure && hooks.inject_lane_failure(lane.id(), ligand_index)) {
      throw std::runtime_error("injected lane failure");
    }

    std::vector<Ligand> starts(n_restarts);
    lane.run_batch(n_restarts, [&](std::size_t r) {
      starts[r] = generate_starting_pose(ligand, static_cast<unsigned>(r), params, pocket);
    });

    std::vector<RotationChoice> partials(n_restarts * chunks_per_restart);
    lane.run_batch(partials.size(), [&](std::size_t job) {
      const std::size_t r = job / chunks_per_restart;
      const std::size_t c = job % chunks_per_restart;
      const std::size_t lo = c * grid.size() / chunks_per_restart;
      const std::size_t hi = (c + 1) * grid.size() / chunks_per_restart;
      partials[job] = best_rotation_in_range(starts[r], pocket, grid, lo, hi);
    });

    outcome.aligned.reserve(n_restarts);
    for (std::size_t r = 0; r < n_restarts; ++r) {
      RotationChoice choice;
      for (std::size_t c = 0; c < chunks_per_restart; ++c) {
        choice = combine(choice, partials[r * chunks_per_restart + c]);
      }
      auto [pose, score] = apply_rotation_choice(starts[r], grid, choice);
      outcome.aligned.push_back({std::move(pose), score, choice.evaluated});
    }
  } catch (...) {
    lane.in_flight.fetch_sub(1, std::memory_order_acq_rel);
    lane.busy_seconds += seconds_between(acquired, Clock::now());
    throw;
  }

  lane.in_flight.fetch_sub(1, std::memory_order_acq_rel);
  outcome.busy_seconds = seconds_between(acquired, Clock::now());
  lane.busy_seconds += outcome.busy_seconds;
  return outcome;
}

}  // namespace

std::pair<std::vector<DockResult>, RunMetrics> run_screening(const std::vector<Ligand>& library,
                                                             const Pocket& pocket,
                                                             const DockParams& params,
                                                             const NodeConfig& config,
                                                             const PipelineHooks& hooks) {
  if (library.empty()) throw ContractError("ligand library is empty");
  if (config.n_workers < 1) throw ContractError("n_workers must be >= 1");
  if (config.lane_width < 1) throw ContractError("lane_width must be >= 1");

  const std::size_t n_ligands = library.size();
  const RotationGrid grid = enumerate_rotations(params.rotation_steps);

  std::vector<std::unique_ptr<DeviceLane>> lanes;
  lanes.reserve(config.n_devices);
  for (unsigned d = 0; d < config.n_devices; ++d) {
    lanes.push_back(std::make_unique<DeviceLane>(d, config.lane_width));
  }

  std::vector<DockResult> results(n_ligands);
  RunMetrics metrics;
  metrics.ligand_count = n_ligands;
  metrics.claim_worker.assign(n_ligands, 0);
  metrics.finish_worker.assign(n_ligands, 0);
  metrics.worker_wait_seconds.assign(config.n_workers, 0.0);

  std::mutex metrics_mu;  // offload log + failure counters
  std::atomic<std::size_t> next_ligand{0};
  std::atomic<std::size_t> failures{0};
  std::vector<double> worker_align_seconds(config.n_workers, 0.0);
  std::vector<double> worker_opt_seconds(config.n_workers, 0.0);
  std::exception_ptr first_error;
  std::mutex error_mu;

  const auto run_start = Clock::now();
  {
    std::vector<std::jthread> workers;
    workers.reserve(config.n_workers);
    for (unsigned w = 0; w < config.n_workers; ++w) {
      workers.emplace_back([&, w] {
        try {
          while (true) {
            const std::size_t i = next_ligand.fetch_add(1, std::memory_order_relaxed);
            if (i >= n_ligands) return;
            const Ligand& lig = library[i];
            metrics.claim_worker[i] = w;

            const std::vector<std::string> violations = validate_ligand(lig);
            if (!violations.empty()) throw ValidationError(lig.name, violations);

            std::vector<AlignedRestart> aligned;
            const auto align_start = Clock::now();
            if (!lanes.empty()) {
              DeviceLane& lane = *lanes[w % lanes.size()];
              try {
                LaneAlignOutcome outcome = align_batch_on_lane(
                    lane, lig, pocket, params, grid, config.lane_width, i, hooks);
                metrics.worker_wait_seconds[w] += outcome.wait_seconds;
                aligned = std::move(outcome.aligned);
                std::lock_guard<std::mutex> lk(metrics_mu);
                metrics.offloads.push_back({i, w, lane.id()});
              } catch (const std::exception&) {
                // Retry once on the CPU path; record the failure.
                failures.fetch_add(1, std::memory_order_relaxed);
                aligned = align_restarts(lig, pocket, params, grid);
              }
            } else {
              aligned = align_restarts(lig, pocket, params, grid);
            }
            const auto align_end = Clock::now();
            worker_align_seconds[w] += seconds_between(align_start, align_end);

            results[i] = finish_dock(lig, aligned, pocket, params);
            worker_opt_seconds[w] += seconds_between(align_end, Clock::now());
            metrics.finish_worker[i] = w;
          }
        } catch (...) {
          std::lock_guard<std::mutex> lk(error_mu);
          if (!first_error) first_error = std::current_exception();
          // Drain the queue so the other workers finish quickly.
          next_ligand.store(n_ligands, std::memory_order_relaxed);
        }
      });
    }
  }  // jthreads join here

  if (first_error) std::rethrow_exception(first_error);

  metrics.wall_seconds = seconds_between(run_start, Clock::now());
  metrics.throughput =
      metrics.wall_seconds > 0.0 ? static_cast<double>(n_ligands) / metrics.wall_seconds : 0.0;
  metrics.lane_failures = failures.load();
  metrics.device_busy_seconds.resize(lanes.size());
  metrics.device_idle_seconds.resize(lanes.size());
  for (std::size_t d = 0; d < lanes.size(); ++d) {
    metrics.device_busy_seconds[d] = lanes[d]->busy_seconds;
    metrics.device_idle_seconds[d] = metrics.wall_seconds - lanes[d]->busy_seconds;
    metrics.exclusivity_violations += lanes[d]->violations.load();
  }
  for (unsigned w = 0; w < config.n_workers; ++w) {
    metrics.align_seconds_total += worker_align_seconds[w];
    metrics.optimize_seconds_total += worker_opt_seconds[w];
  }
  return {std::move(results), std::move(metrics)};
}

namespace {

struct SimEvent {
  double time = 0.0;
  std::uint64_t seq = 0;
  std::size_t worker = 0;

  bool operator>(const SimEvent& o) const {
    if (time != o.time) return time > o.time;
    return seq > o.seq;
  }
};

void require_synthetic(const NodeConfig& config) {
  if (config.mode != ExecMode::synthetic) {
    throw ContractError("schedule simulation requires synthetic mode");
  }
  if (!(config.t_align_device > 0.0) || !(config.t_align_cpu > 0.0) ||
      !(config.t_opt_cpu > 0.0) || !(config.t_opt_device > 0.0)) {
    throw ContractError("synthetic service times must be positive");
  }
}

}  // namespace

RunMetrics simulate_schedule(const NodeConfig& config, std::size_t n_ligands) {
  require_synthetic(config);
  if (config.n_workers < 1) throw ContractError("n_workers must be >= 1");

  const std::size_t n = config.n_workers;
  const std::size_t k = config.n_devices;

  RunMetrics metrics;
  metrics.ligand_count = n_ligands;
  metrics.worker_wait_seconds.assign(n, 0.0);
  metrics.device_busy_seconds.assign(k, 0.0);
  metrics.device_idle_seconds.assign(k, 0.0);
  metrics.claim_worker.assign(n_ligands, 0);
  metrics.finish_worker.assign(n_ligands, 0);

  std::vector<double> lane_free(k, 0.0);
  std::priority_queue<SimEvent, std::vector<SimEvent>, std::greater<SimEvent>> events;
  std::uint64_t seq = 0;
  for (std::size_t w = 0; w < n; ++w) events.push({0.0, seq++, w});

  std::size_t claimed = 0;
  double last_completion = 0.0;

  while (!events.empty()) {
    const SimEvent e = events.top();
    events.pop();
    if (claimed >= n_ligands) continue;  // worker retires
    const std::size_t i = claimed++;
    const std::size_t w = e.worker;
    metrics.claim_worker[i] = w;
    metrics.finish_worker[i] = w;

    double done;
    if (k > 0) {
      const std::size_t lane = w % k;
      const double grant = std::max(e.time, lane_free[lane]);
      lane_free[lane] = grant + config.t_align_device;
      metrics.worker_wait_seconds[w] += grant - e.time;
      metrics.device_busy_seconds[lane] += config.t_align_device;
      metrics.offloads.push_back({i, w, lane});
      metrics.align_seconds_total += config.t_align_device;
      done = grant + config.t_align_device + config.t_opt_cpu;
    } else {
      metrics.align_seconds_total += config.t_align_cpu;
      done = e.time + config.t_align_cpu + config.t_opt_cpu;
    }
    metrics.optimize_seconds_total += config.t_opt_cpu;
    last_completion = std::max(last_completion, done);
    events.push({done, seq++, w});
  }

  metrics.wall_seconds = last_completion;
  metrics.throughput = last_completion > 0.0 && n_ligands > 0
                           ? static_cast<double>(n_ligands) / last_completion
                           : 0.0;
  for (std::size_t d = 0; d < k; ++d) {
    metrics.device_idle_seconds[d] = metrics.wall_seconds - metrics.device_busy_seconds[d];
  }
  return metrics;
}

RunMetrics simulate_split_schedule(const NodeConfig& config, std::size_t n_ligands) {
  require_synthetic(config);
  if (config.n_workers < 1) throw ContractError("n_workers must be >= 1");
  const std::size_t n = config.n_workers;
  const std::size_t k = std::min<std::size_t>(config.n_devices, n);

  RunMetrics metrics;
  metrics.ligand_count = n_ligands;
  metrics.worker_wait_seconds.assign(n, 0.0);
  metrics.device_busy_seconds.assign(k, 0.0);
  metrics.device_idle_seconds.assign(k, 0.0);
  metrics.claim_worker.assign(n_ligands, 0);
  metrics.finish_worker.assign(n_ligands, 0);

  std::priority_queue<SimEvent, std::vector<SimEvent>, std::greater<SimEvent>> events;
  std::uint64_t seq = 0;
  for (std::size_t w = 0; w < n; ++w) events.push({0.0, seq++, w});

  std::size_t claimed = 0;
  double last_completion = 0.0;
  while (!events.empty()) {
    const SimEvent e = events.top();
    events.pop();
    if (claimed >= n_ligands) continue;
    const std::size_t i = claimed++;
    const std::size_t w = e.worker;
    metrics.claim_worker[i] = w;
    metrics.finish_worker[i] = w;
    double done;
    if (w < k) {
      // Dedicated whole-ligand device worker: both phases on its device.
      done = e.time + config.t_align_device + config.t_opt_device;
      metrics.device_busy_seconds[w] += config.t_align_device + config.t_opt_device;
      metrics.align_seconds_total += config.t_align_device;
      metrics.optimize_seconds_total += config.t_opt_device;
    } else {
      done = e.time + config.t_align_cpu + config.t_opt_cpu;
      metrics.align_seconds_total += config.t_align_cpu;
      metrics.optimize_seconds_total += config.t_opt_cpu;
    }
    last_completion = std::max(last_completion, done);
    events.push({done, seq++, w});
  }

  metrics.wall_seconds = last_completion;
  metrics.throughput = last_completion > 0.0 && n_ligands > 0
                           ? static_cast<double>(n_ligands) / last_completion
                           : 0.0;
  for (std::size_t d = 0; d < k; ++d) {
    metrics.device_idle_seconds[d] = metrics.wall_seconds - metrics.device_busy_seconds[d];
  }
  return metrics;
}

std::vector<SummaryRow> summarize(const RunMetrics& metrics) {
  if (metrics.ligand_count == 0) return {};
  SummaryRow row;
  row.throughput = metrics.throughput;
  const std::size_t lanes = metrics.device_busy_seconds.size();
  if (lanes > 0 && metrics.wall_seconds > 0.0) {
    row.device_utilization =
        metrics.total_busy_seconds() / (static_cast<double>(lanes) * metrics.wall_seconds);
  }
  row.mean_wait_seconds = metrics.total_wait_seconds() / static_cast<double>(metrics.ligand_count);
  return {row};
}

unsigned resolve_workers(std::optional<unsigned> explicit_workers, unsigned fallback) {
  if (explicit_workers) return *explicit_workers;
  if (const char* env = std::getenv("GEODOCK_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  return fallback;
}

}  // namespace geodock
