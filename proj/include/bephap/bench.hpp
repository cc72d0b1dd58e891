#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bephap::simnet {

struct BenchConfig {
  double rate_rps = 5000;
  std::uint64_t duration_ms = 1000;
  std::uint64_t interval_ms = 1000;  // loss accounting window
  unsigned workers = 1;              // feeder threads in front of the RSU pipeline
  std::size_t warmup = 200;
  std::size_t samples = 1000;        // latency samples per phase
  std::uint64_t seed = 1;
};

struct PhaseStats {
  std::string phase;
  std::size_t n = 0;
  double mean_ms = 0;
  double p50_ms = 0;
  double p95_ms = 0;
};

/// Wall-clock per-phase timings of one handover: VN request build (A taken
/// from the pool), RSU verify, VN reply handling, RSU ack check, plus the
/// off-path pool refill for reference.
std::vector<PhaseStats> bench_latency(const BenchConfig& cfg);

struct BatchPoint {
  std::size_t n = 0;
  double total_ms = 0;  // median over repetitions
};

struct BatchFit {
  std::vector<BatchPoint> points;
  double slope_ms = 0;
  double intercept_ms = 0;
  double r2 = 0;
};

/// RSU cost of verifying n requests back to back, with a least-squares line.
BatchFit bench_batch(const std::vector<std::size_t>& ns, std::uint64_t seed,
                     std::size_t repetitions = 5);

struct LossInterval {
  std::uint64_t index = 0;
  std::size_t offered = 0;
  std::size_t served = 0;
  std::size_t dropped = 0;
  double ratio() const { return offered ? static_cast<double>(dropped) / offered : 0.0; }
};

struct LossReport {
  double offered_rps = 0;
  double capacity_rps = 0;  // 1 / mean single-request verify time
  double feeder_lag_ms = 0; // worst lateness of a request release
  std::vector<LossInterval> intervals;
  std::size_t offered() const;
  std::size_t dropped() const;
  double loss_ratio() const;
};

/// Requests are released on a wall-clock schedule at `rate_rps` into a single
/// RSU handler. A request still unserved when its interval closes is dropped.
/// Throws BenchInfeasible when the configuration cannot be driven (zero rate
/// or duration, or a release schedule the feeders fall behind by more than
/// one interval).
LossReport bench_loss_ratio(const BenchConfig& cfg);

std::string latency_csv(const std::vector<PhaseStats>& phases);
std::string batch_csv(const BatchFit& fit);
std::string loss_csv(const std::vector<LossReport>& reports);

}  // namespace bephap::simnet
