#include "bephap/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "bephap/bench.hpp"
#include "bephap/error.hpp"
#include "bephap/simnet.hpp"

namespace bephap::cli {

namespace {

struct Options {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string format = "text";
  double rate = 5000;
  std::uint64_t duration_ms = 1000;
  std::uint64_t interval_ms = 1000;
  unsigned workers = 1;
  std::string mode = "loss";
  bool adversary = false;
  bool frame = false;
};

struct Loaded {
  std::string name;
  simnet::Scenario sc;
};

Loaded load(const Options& o, std::string_view builtin) {
  Loaded l;
  if (o.scenario.empty()) {
    l.name = std::string(builtin);
    l.sc = simnet::parse_scenario(*simnet::builtin_scenario(builtin));
  } else {
    l.name = o.scenario;
    l.sc = simnet::load_scenario(o.scenario);
  }
  if (o.seed) l.sc.seed = *o.seed;
  return l;
}

void write_out(const Options& o, const std::string& file, const std::string& content) {
  if (o.out_dir.empty()) return;
  std::filesystem::create_directories(o.out_dir);
  std::ofstream f(std::filesystem::path(o.out_dir) / file);
  if (!f) throw Error(Errc::Usage, "cannot write under " + o.out_dir);
  f << content;
}

bool is_error_name(std::string_view s) {
  for (int c = 0; c <= static_cast<int>(Errc::BenchInfeasible); ++c)
    if (to_string(static_cast<Errc>(c)) == s) return true;
  return false;
}

/// Protocol-path rejections: typed errors from VN or RSU handlers.
std::size_t rejections(const simnet::Transcript& t) {
  std::size_t n = 0;
  for (const auto& e : t.events.events()) {
    const bool handler = e.event == "handle_request" || e.event == "handle_reply" ||
                         e.event == "handle_ack" || e.event == "start_handover" ||
                         e.event == "finish_registration" || e.event == "apply_update";
    n += handler && is_error_name(e.outcome);
  }
  return n;
}

std::size_t count_event(const simnet::Transcript& t, std::string_view event,
                        std::string_view outcome) {
  return t.events.count(event, outcome);
}

std::string printable(const Bytes& id) {
  const bool ok = std::all_of(id.begin(), id.end(), [](unsigned char c) { return std::isgraph(c); });
  return ok ? std::string(id.begin(), id.end()) : to_hex(id);
}

void report_expectations(const simnet::Scenario& sc, const simnet::Transcript& t,
                         std::ostream& out) {
  for (const auto& e : sc.script.expect) {
    const std::size_t n = t.count(e.actor, e.event, e.outcome);
    const bool ok = e.count ? n == *e.count : n >= 1;
    out << (ok ? "ok    " : "UNMET ") << e.actor << " " << e.event << " " << e.outcome
        << " observed " << n << "\n";
  }
}

int cmd_demo(const Options& o, std::ostream& out) {
  const auto [name, sc] = load(o, o.adversary ? "adversary" : "honest");
  const auto t = simnet::simulate(sc.topology, sc.script, sc.seed, sc.cfg);
  write_out(o, "transcript.txt", t.text());

  const std::size_t req = t.bytes_of("REQ"), rep = t.bytes_of("REP"), ack = t.bytes_of("ACK");
  const std::size_t confirmed = count_event(t, "handle_ack", "Confirmed");
  const std::size_t equal = t.count("net", "ks_agreement", "Equal");
  const std::size_t mismatch = t.count("net", "ks_agreement", "Mismatch");
  const std::size_t forged_replies = t.count("ADV", "receive", "REP");

  std::ostringstream s;
  if (o.format == "csv") {
    s << "message,bytes\nREQ," << req << "\nREP," << rep << "\nACK," << ack << "\ntotal,"
      << req + rep + ack << "\n";
  } else {
    s << "scenario " << name << " seed " << sc.seed << "\n";
    s << "REQ " << req << " bytes\nREP " << rep << " bytes\nACK " << ack << " bytes\n";
    s << "total " << req + rep + ack << " bytes\n";
    s << "handovers confirmed " << confirmed << "\n";
    s << "Ks agreement " << equal << "/" << confirmed << (mismatch ? " MISMATCH" : "") << "\n";
    report_expectations(sc, t, s);
  }

  bool ok = t.unmet.empty() && mismatch == 0 && equal == confirmed;
  if (o.adversary) {
    ok = ok && forged_replies == 0;
    if (o.format != "csv") s << (ok ? "all attacks rejected\n" : "an attack was not rejected\n");
  } else if (sc.script.expect.empty()) {
    ok = ok && rejections(t) == 0;
  }
  out << s.str();
  write_out(o, o.format == "csv" ? "summary.csv" : "summary.txt", s.str());
  return ok ? kOk : kRejected;
}

int cmd_trace(const Options& o, std::ostream& out) {
  const auto [name, sc] = load(o, "trace");
  const auto t = simnet::simulate(sc.topology, sc.script, sc.seed, sc.cfg);
  write_out(o, "transcript.txt", t.text());
  std::ostringstream s;
  if (o.format == "csv") s << "rsu,id,txid\n";
  for (const auto& r : t.traces) {
    if (o.format == "csv")
      s << r.evidence.rsu_id << "," << printable(r.id) << "," << to_hex(r.txid) << "\n";
    else
      s << "traced evidence from " << r.evidence.rsu_id << " to ID " << printable(r.id)
        << " (txid " << to_hex(r.txid) << ")\n";
  }
  for (const auto& e : t.events.events())
    if (e.event == "trace" && e.outcome != "Traced" && o.format != "csv")
      s << "trace rejected: " << e.outcome << "\n";
  out << s.str();
  write_out(o, o.format == "csv" ? "trace.csv" : "trace.txt", s.str());
  return !t.traces.empty() && t.unmet.empty() ? kOk : kRejected;
}

int cmd_audit(const Options& o, std::ostream& out) {
  const auto [name, sc] = load(o, o.frame ? "audit-frame" : "audit");
  const auto t = simnet::simulate(sc.topology, sc.script, sc.seed, sc.cfg);
  write_out(o, "transcript.txt", t.text());
  std::ostringstream s;
  if (o.format == "csv") s << "audit,verdict\n";
  bool ok = !t.audits.empty() && t.unmet.empty();
  for (std::size_t i = 0; i < t.audits.size(); ++i) {
    const auto& v = t.audits[i];
    ok = ok && (v == "Consistent" || v == "Framed");
    if (o.format == "csv")
      s << i << "," << v << "\n";
    else
      s << "verdict " << v << "\n";
  }
  out << s.str();
  write_out(o, o.format == "csv" ? "audit.csv" : "audit.txt", s.str());
  return ok ? kOk : kRejected;
}

int cmd_rotate(const Options& o, std::ostream& out) {
  const auto [name, sc] = load(o, "rotate");
  const auto t = simnet::simulate(sc.topology, sc.script, sc.seed, sc.cfg);
  write_out(o, "transcript.txt", t.text());
  std::ostringstream s;
  if (o.format == "csv") s << "actor,event,outcome,count\n";
  std::map<std::tuple<std::string, std::string, std::string>, std::size_t> tally;
  for (const auto& e : t.events.events())
    if (e.event.starts_with("rotate") || e.event == "apply_update" ||
        e.event == "handle_request" || e.event == "revoke" || e.event == "mint_update")
      ++tally[{e.actor, e.event, e.outcome}];
  for (const auto& [k, n] : tally) {
    const auto& [actor, event, outcome] = k;
    if (o.format == "csv")
      s << actor << "," << event << "," << outcome << "," << n << "\n";
    else
      s << actor << " " << event << " " << outcome << " x" << n << "\n";
  }
  if (o.format != "csv") report_expectations(sc, t, s);
  out << s.str();
  write_out(o, o.format == "csv" ? "rotate.csv" : "rotate.txt", s.str());
  return t.unmet.empty() && t.count("net", "ks_agreement", "Mismatch") == 0 ? kOk : kRejected;
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

int cmd_bench(const Options& o, std::ostream& out) {
  simnet::BenchConfig cfg;
  cfg.rate_rps = o.rate;
  cfg.duration_ms = o.duration_ms;
  cfg.interval_ms = o.interval_ms;
  cfg.workers = o.workers;
  cfg.seed = o.seed.value_or(1);
  const bool csv = o.format == "csv";
  std::ostringstream s;

  if (o.mode == "latency" || o.mode == "all") {
    const auto phases = simnet::bench_latency(cfg);
    write_out(o, "bench_latency.csv", simnet::latency_csv(phases));
    if (csv) {
      s << simnet::latency_csv(phases);
    } else {
      for (const auto& p : phases)
        s << p.phase << " mean " << fixed(p.mean_ms) << " ms p50 " << fixed(p.p50_ms)
          << " ms p95 " << fixed(p.p95_ms) << " ms (n=" << p.n << ")\n";
    }
  }
  if (o.mode == "batch" || o.mode == "all") {
    const auto fit = simnet::bench_batch({1, 10, 100, 1000}, cfg.seed);
    write_out(o, "bench_batch.csv", simnet::batch_csv(fit));
    if (csv) {
      s << simnet::batch_csv(fit);
    } else {
      for (const auto& p : fit.points)
        s << "batch n=" << p.n << " total " << fixed(p.total_ms) << " ms\n";
      s << "linear fit slope " << fixed(fit.slope_ms) << " ms/request r2 " << fixed(fit.r2, 6)
        << "\n";
    }
  }
  if (o.mode == "loss" || o.mode == "all") {
    const auto report = simnet::bench_loss_ratio(cfg);
    write_out(o, "bench_loss.csv", simnet::loss_csv({report}));
    if (csv) {
      s << simnet::loss_csv({report});
    } else {
      s << "offered " << fixed(report.offered_rps, 0) << " req/s for " << cfg.duration_ms
        << " ms: " << report.offered() << " requests, " << report.dropped()
        << " dropped, loss ratio " << fixed(report.loss_ratio()) << "\n";
      s << "measured capacity " << fixed(report.capacity_rps, 0) << " req/s\n";
    }
  }
  out << s.str();
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"BEPHAP handover authentication: scenarios, benchmarks, trace and audit", "bephap"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--scenario", o.scenario, "scenario file (default: a built-in one)");
    sub->add_option("--seed", o.seed, "RNG seed (default: the scenario's own, else 1)");
    sub->add_option("--out", o.out_dir, "directory for transcripts and tables");
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "text"}));
  };

  auto* demo = app.add_subcommand("demo", "registration, handover and rotation over two domains");
  common(demo);
  demo->add_flag("--adversary", o.adversary, "run the canned attack scenario instead");
  auto* bench = app.add_subcommand("bench", "wall-clock latency, batch and loss-ratio benchmarks");
  bench->add_option("--seed", o.seed, "RNG seed");
  bench->add_option("--out", o.out_dir, "directory for CSV output");
  bench->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "text"}));
  bench->add_option("--rate", o.rate, "offered requests per second")->check(CLI::PositiveNumber);
  bench->add_option("--duration-ms", o.duration_ms, "offered load duration");
  bench->add_option("--interval-ms", o.interval_ms, "loss accounting interval");
  bench->add_option("--workers", o.workers, "feeder threads");
  bench->add_option("--mode", o.mode, "which benchmark")
      ->check(CLI::IsMember({"loss", "latency", "batch", "all"}));
  auto* trace = app.add_subcommand("trace", "open RSU evidence to a real identity");
  common(trace);
  auto* audit = app.add_subcommand("audit", "check a trace result against public data");
  common(audit);
  audit->add_flag("--frame", o.frame, "have the LEA name the wrong vehicle");
  auto* rotate = app.add_subcommand("rotate", "group key rotation with revocation");
  common(rotate);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (demo->parsed()) return cmd_demo(o, out);
    if (bench->parsed()) return cmd_bench(o, out);
    if (trace->parsed()) return cmd_trace(o, out);
    if (audit->parsed()) return cmd_audit(o, out);
    if (rotate->parsed()) return cmd_rotate(o, out);
  } catch (const Error& e) {
    err << "bephap: " << e.what() << "\n";
    switch (e.code()) {
      case Errc::ScenarioParse:
      case Errc::ScenarioInvalid:
      case Errc::Usage:
        return kUsage;
      case Errc::BenchInfeasible:
        return kBenchInfeasible;
      default:
        return kRejected;
    }
  }
  return kUsage;
}

}  // namespace bephap::cli
