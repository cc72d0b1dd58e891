#include "bephap/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <deque>
#include <memory>
#include <mutex>
#include <numeric>
#include <thread>

#include "bephap/actors.hpp"
#include "bephap/error.hpp"

namespace bephap::simnet {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

/// One domain with a single RSU and a fleet of registered VNs.
struct Fixture {
  explicit Fixture(std::uint64_t seed, std::size_t fleet = 16)
      : root(seed),
        lea("LEA", root.fork("lea"), ledger),
        rsm("RSM-1", root.fork("rsm"), lea, 0),
        rsu("RSU-1", root.fork("rsu"), rsm) {
    for (std::size_t i = 0; i < fleet; ++i) {
      const std::string name = "VN-" + std::to_string(i);
      auto vn = std::make_unique<Vn>(name, Bytes(name.begin(), name.end()), root.fork(name));
      const auto receipt = rsm.forward_registration(vn->begin_registration(lea.params()), 0);
      vn->finish_registration(rsm.complete_registration(receipt, 0), ledger, 0);
      vns.push_back(std::move(vn));
    }
    rsm.view().sync_all();
  }

  /// Distinct REQs with T1 = first, first+1, ...; the RSU sees each at its T1.
  std::vector<wire::AuthRequest> requests(std::size_t n, std::uint64_t first) {
    std::vector<wire::AuthRequest> out;
    out.reserve(n);
    const auto& ver = rsu.public_keys().ver;
    for (std::size_t i = 0; i < n; ++i)
      out.push_back(vns[i % vns.size()]->start_handover(ver, first + i));
    return out;
  }

  Rng root;
  ledger::Ledger ledger;
  Lea lea;
  Rsm rsm;
  Rsu rsu;
  std::vector<std::unique_ptr<Vn>> vns;
};

PhaseStats summarize(std::string phase, std::vector<double> xs) {
  PhaseStats s;
  s.phase = std::move(phase);
  s.n = xs.size();
  if (xs.empty()) return s;
  std::sort(xs.begin(), xs.end());
  auto rank = [&](double p) {
    const auto idx = static_cast<std::size_t>(std::ceil(p * xs.size())) - 1;
    return xs[std::min(idx, xs.size() - 1)];
  };
  s.mean_ms = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  s.p50_ms = rank(0.50);
  s.p95_ms = rank(0.95);
  return s;
}

double mean_verify_ms(std::uint64_t seed, std::size_t warmup, std::size_t samples) {
  Fixture fx(seed);
  const auto reqs = fx.requests(warmup + samples, 1000);
  for (std::size_t i = 0; i < warmup; ++i) fx.rsu.handle_request(i % 64, reqs[i], reqs[i].t1.ms);
  const auto t0 = Clock::now();
  for (std::size_t i = warmup; i < reqs.size(); ++i)
    fx.rsu.handle_request(i % 64, reqs[i], reqs[i].t1.ms);
  return ms_since(t0) / static_cast<double>(samples);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::vector<PhaseStats> bench_latency(const BenchConfig& cfg) {
  Fixture fx(cfg.seed);
  std::vector<double> build, verify, reply, ack, refill;
  const auto& ver = fx.rsu.public_keys().ver;
  std::uint64_t now = 1000;
  for (std::size_t i = 0; i < cfg.warmup + cfg.samples; ++i, now += 10) {
    const bool keep = i >= cfg.warmup;
    Vn& vn = *fx.vns[i % fx.vns.size()];
    const std::uint64_t peer = i % fx.vns.size();

    auto t0 = Clock::now();
    vn.precompute(1);
    const double t_refill = ms_since(t0);

    t0 = Clock::now();
    const auto req = vn.start_handover(ver, now);
    const double t_build = ms_since(t0);

    t0 = Clock::now();
    const auto rep = fx.rsu.handle_request(peer, req, now);
    const double t_verify = ms_since(t0);

    t0 = Clock::now();
    const auto a = vn.handle_reply(rep, now);
    const double t_reply = ms_since(t0);

    t0 = Clock::now();
    fx.rsu.handle_ack(peer, a, now);
    const double t_ack = ms_since(t0);

    if (!keep) continue;
    refill.push_back(t_refill);
    build.push_back(t_build);
    verify.push_back(t_verify);
    reply.push_back(t_reply);
    ack.push_back(t_ack);
  }
  return {summarize("vn_request_build", std::move(build)),
          summarize("rsu_verify", std::move(verify)),
          summarize("vn_reply", std::move(reply)),
          summarize("rsu_ack_check", std::move(ack)),
          summarize("vn_precompute_point", std::move(refill))};
}

BatchFit bench_batch(const std::vector<std::size_t>& ns, std::uint64_t seed,
                     std::size_t repetitions) {
  Fixture fx(seed);
  std::uint64_t clock = 1000;
  BatchFit fit;
  for (std::size_t n : ns) {
    std::vector<double> runs;
    for (std::size_t r = 0; r < repetitions; ++r) {
      const auto reqs = fx.requests(n, clock);
      clock += n + 10'000;  // past 2Δ, so the replay cache starts empty
      const auto t0 = Clock::now();
      for (std::size_t i = 0; i < n; ++i) fx.rsu.handle_request(i % 64, reqs[i], reqs[i].t1.ms);
      runs.push_back(ms_since(t0));
    }
    std::sort(runs.begin(), runs.end());
    fit.points.push_back({n, runs[runs.size() / 2]});
  }
  const double k = static_cast<double>(fit.points.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& p : fit.points) {
    sx += p.n;
    sy += p.total_ms;
    sxx += double(p.n) * p.n;
    sxy += p.n * p.total_ms;
  }
  fit.slope_ms = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  fit.intercept_ms = (sy - fit.slope_ms * sx) / k;
  double ss_res = 0, ss_tot = 0;
  for (const auto& p : fit.points) {
    const double e = p.total_ms - (fit.slope_ms * p.n + fit.intercept_ms);
    ss_res += e * e;
    ss_tot += (p.total_ms - sy / k) * (p.total_ms - sy / k);
  }
  fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

std::size_t LossReport::offered() const {
  std::size_t n = 0;
  for (const auto& i : intervals) n += i.offered;
  return n;
}

std::size_t LossReport::dropped() const {
  std::size_t n = 0;
  for (const auto& i : intervals) n += i.dropped;
  return n;
}

double LossReport::loss_ratio() const {
  const std::size_t n = offered();
  return n ? static_cast<double>(dropped()) / n : 0.0;
}

LossReport bench_loss_ratio(const BenchConfig& cfg) {
  if (!(cfg.rate_rps > 0) || cfg.duration_ms == 0 || cfg.interval_ms == 0 || cfg.workers == 0)
    throw Error(Errc::BenchInfeasible, "rate, duration, interval and workers must be positive");
  const double total = cfg.rate_rps * static_cast<double>(cfg.duration_ms) / 1000.0;
  if (total > 2e6) throw Error(Errc::BenchInfeasible, "more than 2e6 requests requested");
  const auto n = static_cast<std::size_t>(std::llround(total));

  LossReport report;
  report.offered_rps = cfg.rate_rps;
  report.capacity_rps = 1000.0 / mean_verify_ms(cfg.seed ^ 0x5a5a, cfg.warmup, 500);

  Fixture fx(cfg.seed);
  const auto reqs = fx.requests(n, 1000);

  const std::size_t n_intervals = (cfg.duration_ms + cfg.interval_ms - 1) / cfg.interval_ms;
  report.intervals.resize(n_intervals);
  for (std::size_t k = 0; k < n_intervals; ++k) report.intervals[k].index = k;
  auto release_ms = [&](std::size_t i) { return 1000.0 * i / cfg.rate_rps; };
  auto interval_of = [&](std::size_t i) {
    return std::min<std::size_t>(static_cast<std::size_t>(release_ms(i) / cfg.interval_ms),
                                 n_intervals - 1);
  };
  for (std::size_t i = 0; i < n; ++i) ++report.intervals[interval_of(i)].offered;

  std::mutex mu;
  std::condition_variable cv;
  std::deque<std::size_t> queue;
  std::atomic<double> worst_lag{0};

  const auto start = Clock::now() + std::chrono::milliseconds(20);
  auto at = [&](double ms) {
    return start + std::chrono::duration_cast<Clock::duration>(
                       std::chrono::duration<double, std::milli>(ms));
  };

  // Feeders wake once per tick and release everything already due, so a
  // single-core host is not spending its budget on one context switch per
  // request. A request is never released before its scheduled time.
  constexpr double kTickMs = 1.0;
  std::vector<std::thread> feeders;
  for (unsigned w = 0; w < cfg.workers; ++w) {
    feeders.emplace_back([&, w] {
      std::size_t i = w;
      while (i < n) {
        std::this_thread::sleep_until(at(release_ms(i)));
        const auto now = Clock::now();
        const double lag =
            std::chrono::duration<double, std::milli>(now - at(release_ms(i))).count();
        double prev = worst_lag.load();
        while (lag > prev && !worst_lag.compare_exchange_weak(prev, lag)) {
        }
        {
          std::lock_guard lk(mu);
          do {
            queue.push_back(i);
            i += cfg.workers;
          } while (i < n && at(release_ms(i)) <= now);
        }
        cv.notify_one();
        if (i < n) std::this_thread::sleep_until(now + std::chrono::duration_cast<Clock::duration>(
                                                           std::chrono::duration<double, std::milli>(kTickMs)));
      }
    });
  }

  // The single RSU handler pipeline.
  std::size_t handled = 0;
  while (handled < n) {
    std::size_t i;
    {
      std::unique_lock lk(mu);
      cv.wait(lk, [&] { return !queue.empty(); });
      i = queue.front();
      queue.pop_front();
    }
    ++handled;
    const std::size_t k = interval_of(i);
    const auto close = at(static_cast<double>((k + 1) * cfg.interval_ms));
    if (Clock::now() >= close) {
      ++report.intervals[k].dropped;
      continue;
    }
    try {
      fx.rsu.handle_request(i % 64, reqs[i], reqs[i].t1.ms);
    } catch (const Error&) {
      // a rejected request is still served
    }
    if (Clock::now() > close)
      ++report.intervals[k].dropped;
    else
      ++report.intervals[k].served;
  }
  for (auto& t : feeders) t.join();
  report.feeder_lag_ms = worst_lag.load();
  if (report.feeder_lag_ms > static_cast<double>(cfg.interval_ms))
    throw Error(Errc::BenchInfeasible,
                "feeders fell " + fmt(report.feeder_lag_ms) + " ms behind the release schedule");
  return report;
}

std::string latency_csv(const std::vector<PhaseStats>& phases) {
  std::string out = "# wall-clock per-phase timings, one handover per sample\n";
  out += "phase,n,mean_ms,p50_ms,p95_ms\n";
  for (const auto& p : phases)
    out += p.phase + "," + std::to_string(p.n) + "," + fmt(p.mean_ms) + "," + fmt(p.p50_ms) +
           "," + fmt(p.p95_ms) + "\n";
  return out;
}

std::string batch_csv(const BatchFit& fit) {
  std::string out = "# RSU verification of n requests back to back; median of repetitions\n";
  out += "# fit total_ms = " + fmt(fit.slope_ms) + " * n + " + fmt(fit.intercept_ms) +
         ", r2 = " + fmt(fit.r2) + "\n";
  out += "n,total_ms\n";
  for (const auto& p : fit.points) out += std::to_string(p.n) + "," + fmt(p.total_ms) + "\n";
  return out;
}

std::string loss_csv(const std::vector<LossReport>& reports) {
  std::string out =
      "# loss model: requests are released on a wall-clock schedule into one RSU handler; a "
      "request still unserved when its interval closes counts as dropped\n";
  for (const auto& r : reports)
    out += "# offered_rps=" + fmt(r.offered_rps) + " measured_capacity_rps=" +
           fmt(r.capacity_rps) + " worst_feeder_lag_ms=" + fmt(r.feeder_lag_ms) + "\n";
  out += "offered_rps,interval,offered,served,dropped,loss_ratio\n";
  for (const auto& r : reports)
    for (const auto& i : r.intervals)
      out += fmt(r.offered_rps) + "," + std::to_string(i.index) + "," +
             std::to_string(i.offered) + "," + std::to_string(i.served) + "," +
             std::to_string(i.dropped) + "," + fmt(i.ratio()) + "\n";
  return out;
}

}  // namespace bephap::simnet
