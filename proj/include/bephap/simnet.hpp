#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bephap/actors.hpp"
#include "bephap/events.hpp"
#include "bephap/wire.hpp"

namespace bephap::simnet {

enum class NodeKind { Lea, Rsm, Rsu, Vn, Fog };

std::string_view to_string(NodeKind k);

struct NodeSpec {
  std::string name;
  NodeKind kind = NodeKind::Vn;
  std::string domain;               // RSU: owning RSM
  std::uint64_t sync_delay_ms = 0;  // RSM: ledger propagation delay
  std::string real_id;              // VN: defaults to the node name
  std::size_t pool = 0;             // VN: precomputed (α, A) entries after registration
  std::uint64_t latency_ms = 0;     // Fog: forwarding delay
  RsmFault fault = RsmFault::None;
};

/// An open VN–RSU hop. Every infrastructure link and the VN–RSM enrolment
/// link are implicit and secure.
struct LinkSpec {
  std::string a;
  std::string b;
  std::uint64_t latency_ms = 2;
  std::uint64_t jitter_ms = 0;
  double drop = 0.0;
  std::string via;  // optional fog forwarder
};

struct Topology {
  std::vector<NodeSpec> nodes;
  std::vector<LinkSpec> links;

  const NodeSpec* node(std::string_view name) const;
  const LinkSpec* link(std::string_view a, std::string_view b) const;
  /// True for pairs the adversary cannot see: LEA–RSM, RSM–RSU, VN–RSM.
  bool is_secure_pair(std::string_view a, std::string_view b) const;
  /// Throws ScenarioInvalid.
  void validate() const;
};

enum class StepKind {
  Register,
  Handover,
  Report,
  Rotate,
  Trace,
  Audit,
  Capture,
  Replay,
  Tamper,
  Drop,
  Inject,
  Impersonate,
};

struct Step {
  std::uint64_t at_ms = 0;
  StepKind kind = StepKind::Handover;
  std::vector<std::string> args;
  std::map<std::string, std::string> opts;
  int line = 0;

  std::string opt(const std::string& key, std::string fallback = {}) const;
};

struct Expectation {
  std::string actor;
  std::string event;
  std::string outcome;
  std::optional<std::size_t> count;  // exact; otherwise at least once
};

struct Script {
  std::vector<Step> steps;
  std::vector<Expectation> expect;
  /// Throws ScenarioInvalid for unknown nodes, missing links and any
  /// adversary step aimed at a secure pair.
  void validate(const Topology& topo) const;
};

struct Scenario {
  std::uint64_t seed = 1;
  ProtocolConfig cfg;
  Topology topology;
  Script script;
};

/// Throws ScenarioParse (syntax) or ScenarioInvalid (semantics).
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);

/// Simnet framing: one version byte and one type byte ahead of the payload.
/// The version byte sits outside the per-message byte counts.
inline constexpr std::uint8_t kFrameVersion = 1;
Bytes frame(std::string_view name, ByteView payload);
/// Throws WrongLength on a short frame or unknown version/type.
std::pair<std::string, Bytes> unframe(ByteView framed);

struct Transcript {
  /// Ordered "t=<ms> msg <dir> <name> <hex>", "t=<ms> sec <dir> <name> sha256=<hex>"
  /// and event lines.
  std::vector<std::string> lines;
  EventLog events;
  std::vector<wire::DumpLine> messages;  // open-link traffic only
  std::vector<TraceResult> traces;
  std::vector<std::string> audits;
  std::vector<std::string> unmet;

  std::string text() const;
  std::size_t count(std::string_view actor, std::string_view event,
                    std::string_view outcome) const;
  std::size_t bytes_of(std::string_view name) const;  // size of the first such message
};

/// Runs to quiescence; unmet expectations are listed, not thrown.
Transcript simulate(const Topology& topo, const Script& script, std::uint64_t seed,
                    ProtocolConfig cfg = {});
/// As simulate, but throws DeadlockDetected when the event queue drains with
/// expectations unmet.
Transcript run_scenario(const Topology& topo, const Script& script, std::uint64_t seed,
                        ProtocolConfig cfg = {});
Transcript run_scenario(const Scenario& sc);

/// Built-in scenarios shipped with the CLI: "honest", "adversary", "rotate",
/// "trace", "audit", "audit-frame".
std::optional<std::string> builtin_scenario(std::string_view name);

}  // namespace bephap::simnet
