#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>

#include "bephap/hash.hpp"
#include "bephap/simnet.hpp"
#include "test_util.hpp"

namespace bephap::simnet {
namespace {

const std::string kBase = R"(
node LEA lea
node RSM-1 rsm
node RSM-2 rsm sync_delay=300
node RSU-1 rsu domain=RSM-1
node RSU-2 rsu domain=RSM-2
node VN-1 vn id=VIN-SECRET-0001
link VN-1 RSU-1 latency=3
link VN-1 RSU-2 latency=3
)";

Scenario parse(const std::string& body) { return parse_scenario(kBase + body); }

Errc parse_errc(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "parsed: " << text;
  return Errc::Usage;
}

TEST(Scenario, ParsesNodesLinksStepsAndSettings) {
  const auto sc = parse(R"(
seed = 99
freshness_ms = 250   # comment
at 10 register VN-1 RSM-1
at 5 handover VN-1 RSU-1
expect RSU-1 handle_ack Confirmed count=1
)");
  EXPECT_EQ(sc.seed, 99u);
  EXPECT_EQ(sc.cfg.freshness_ms, 250u);
  EXPECT_EQ(sc.topology.nodes.size(), 6u);
  EXPECT_EQ(sc.topology.node("RSM-2")->sync_delay_ms, 300u);
  EXPECT_EQ(sc.topology.node("VN-1")->real_id, "VIN-SECRET-0001");
  ASSERT_EQ(sc.script.steps.size(), 2u);
  EXPECT_EQ(sc.script.steps[0].kind, StepKind::Handover);  // sorted by time
  EXPECT_EQ(sc.script.expect[0].count, std::optional<std::size_t>(1));
}

TEST(Scenario, SyntaxErrors) {
  for (const char* bad : {
           "node LEA",                        // missing kind
           "node X plane",                    // unknown kind
           "seed = x",                        // not a number
           "bogus = 1",                       // unknown setting
           "frobnicate",                      // unknown directive
           "at x handover VN-1 RSU-1",        // bad time
           "at 1 teleport VN-1",              // unknown verb
           "at 1 handover VN-1",              // arity
           "at 1 tamper REQ VN-1>RSU-1 offset=1 xor=zz",
           "at 1 tamper REQ VN-1>RSU-1 offset=1 xor=0x00",
           "at 1 inject REQ to=RSU-1 hex=abc",
           "link VN-1 RSU-1 colour=red",
           "expect A B",
       })
    EXPECT_EQ(parse_errc(kBase + bad), Errc::ScenarioParse) << bad;
  EXPECT_EQ(parse_errc("node a lea extra=1"), Errc::ScenarioParse);
}

TEST(Scenario, SemanticErrors) {
  for (const char* bad : {
           "node LEA-2 lea",
           "node RSU-3 rsu domain=VN-1",
           "node VN-1 vn",
           "node ADV vn",
           "link RSM-1 RSU-1",               // infrastructure links are implicit
           "link VN-1 RSM-1",                // enrolment link is implicit
           "node VN-2 vn\nlink VN-1 VN-2",
           "link RSU-1 VN-1",                // duplicate
           "at 1 handover VN-1 RSM-1",
           "at 1 register VN-1 RSU-1",
           "at 1 handover VN-9 RSU-1",
           "at 1 replay never",
           "at 1 capture REQ VN-1>RSU-1",    // missing label
           "at 1 tamper REP VN-1>RSU-1 offset=0 xor=1",  // REP never flows VN>RSU
       })
    EXPECT_EQ(parse_errc(kBase + bad), Errc::ScenarioInvalid) << bad;
}

TEST(Scenario, SecureLinksRejectAdversarySteps) {
  for (const char* bad : {
           "at 1 capture REQ RSM-1>RSU-1 as=x",
           "at 1 tamper REQ VN-1>RSM-1 offset=0 xor=1",
           "at 1 drop REQ LEA>RSM-1",
           "at 1 capture REG_REQ VN-1>RSM-1 as=x",
           "at 1 inject GK to=RSU-1 hex=00",
           "at 1 inject REQ to=RSM-1 hex=00",
           "at 1 inject REQ to=LEA hex=00",
       })
    EXPECT_EQ(parse_errc(kBase + bad), Errc::ScenarioInvalid) << bad;
}

TEST(Scenario, BuiltinsParse) {
  for (const char* name : {"honest", "adversary", "rotate", "trace", "audit", "audit-frame"}) {
    auto text = builtin_scenario(name);
    ASSERT_TRUE(text) << name;
    EXPECT_NO_THROW(parse_scenario(*text)) << name;
  }
  EXPECT_FALSE(builtin_scenario("nope"));
}

TEST(Frame, RoundTripAndErrors) {
  const Bytes p{1, 2, 3};
  const auto f = frame("REP", p);
  EXPECT_EQ(f.size(), 5u);
  EXPECT_EQ(f[0], kFrameVersion);
  EXPECT_EQ(unframe(f), std::make_pair(std::string("REP"), p));
  EXPECT_ERRC(frame("GK", p), Errc::WrongLength);
  EXPECT_ERRC(unframe(Bytes{1}), Errc::WrongLength);
  EXPECT_ERRC(unframe(Bytes{2, 1}), Errc::WrongLength);
  EXPECT_ERRC(unframe(Bytes{1, 9}), Errc::WrongLength);
}

TEST(Simnet, HonestRunEndsConfirmedOnBothSides) {
  const auto t = run_scenario(parse(R"(
at 0 register VN-1 RSM-1
at 100 handover VN-1 RSU-1
expect RSU-1 handle_ack Confirmed count=1
)"));
  ASSERT_GE(t.lines.size(), 4u);
  const auto n = t.lines.size();
  EXPECT_NE(t.lines[n - 4].find("actor=VN-1 event=handle_reply outcome=Confirmed"),
            std::string::npos);
  EXPECT_NE(t.lines[n - 3].find(" msg VN-1>RSU-1 ACK "), std::string::npos);
  EXPECT_NE(t.lines[n - 2].find("actor=RSU-1 event=handle_ack outcome=Confirmed"),
            std::string::npos);
  EXPECT_NE(t.lines[n - 1].find("actor=net event=ks_agreement outcome=Equal"), std::string::npos);
  EXPECT_EQ(t.bytes_of("REQ"), 104u);
  EXPECT_EQ(t.bytes_of("REP"), 88u);
  EXPECT_EQ(t.bytes_of("ACK"), 20u);
}

TEST(Simnet, DeterministicUnderSeed) {
  for (const char* name : {"honest", "adversary", "rotate", "audit-frame"}) {
    const auto sc = parse_scenario(*builtin_scenario(name));
    const auto a = run_scenario(sc).text();
    const auto b = run_scenario(sc).text();
    EXPECT_EQ(a, b) << name;
    EXPECT_NE(a, simulate(sc.topology, sc.script, sc.seed + 1, sc.cfg).text()) << name;
  }
}

TEST(Simnet, GoldenTranscript) {
  // Regression freeze of the honest builtin at seed 7.
  const auto t = run_scenario(parse_scenario(*builtin_scenario("honest")));
  EXPECT_EQ(to_hex(sha256(as_bytes(t.text()))), "cdddfe35c684e26824ba966b11d627970f03d5adf55ee88e4cc58a57fab69808");
}

TEST(Simnet, IdentityNeverOnOpenLinks) {
  for (const char* name : {"honest", "adversary", "rotate"}) {
    const auto sc = parse_scenario(*builtin_scenario(name));
    const auto t = run_scenario(sc);
    for (const auto& node : sc.topology.nodes) {
      if (node.kind != NodeKind::Vn) continue;
      const Bytes id(node.real_id.begin(), node.real_id.end());
      for (const auto& m : t.messages)
        ASSERT_EQ(std::search(m.payload.begin(), m.payload.end(), id.begin(), id.end()),
                  m.payload.end())
            << name << " " << m.direction << " " << m.name;
      EXPECT_EQ(t.text().find(to_hex(id)), std::string::npos);
    }
  }
}

TEST(Simnet, BuiltinsMeetTheirExpectations) {
  for (const char* name : {"honest", "adversary", "rotate", "trace", "audit", "audit-frame"}) {
    const auto t = simulate(parse_scenario(*builtin_scenario(name)).topology,
                            parse_scenario(*builtin_scenario(name)).script,
                            parse_scenario(*builtin_scenario(name)).seed);
    EXPECT_TRUE(t.unmet.empty()) << name << ": " << (t.unmet.empty() ? "" : t.unmet.front());
  }
}

TEST(Simnet, ReplayGivesExactlyOneReplayDetected) {
  const auto t = run_scenario(parse(R"(
at 0 register VN-1 RSM-1
at 100 capture REQ VN-1>RSU-1 as=r
at 100 handover VN-1 RSU-1
at 200 replay r
expect RSU-1 handle_request ReplayDetected count=1
expect RSU-1 handle_ack Confirmed count=1
)"));
  EXPECT_EQ(t.count("ADV", "capture", "REQ"), 1u);
}

TEST(Simnet, UnmetExpectationIsDeadlock) {
  const auto sc = parse(R"(
at 0 register VN-1 RSM-1
at 100 drop REQ VN-1>RSU-1
at 100 handover VN-1 RSU-1
expect RSU-1 handle_ack Confirmed
)");
  EXPECT_ERRC(run_scenario(sc), Errc::DeadlockDetected);
  const auto t = simulate(sc.topology, sc.script, sc.seed);
  ASSERT_EQ(t.unmet.size(), 1u);
  EXPECT_EQ(t.count("ADV", "drop", "REQ"), 1u);
}

TEST(Simnet, LossyLinkDropsEverything) {
  auto sc = parse_scenario(R"(
node LEA lea
node RSM-1 rsm
node RSU-1 rsu domain=RSM-1
node VN-1 vn
link VN-1 RSU-1 drop=1
at 0 register VN-1 RSM-1
at 100 handover VN-1 RSU-1
at 200 handover VN-1 RSU-1
)");
  const auto t = run_scenario(sc);
  EXPECT_EQ(t.count("net", "drop", "REQ"), 2u);
  EXPECT_EQ(t.count("RSU-1", "handle_request", "Replied"), 0u);
}

TEST(Simnet, FogForwarderOnlyAddsLatency) {
  auto base = R"(
node LEA lea
node RSM-1 rsm
node RSU-1 rsu domain=RSM-1
node FOG-1 fog latency=40
node VN-1 vn
at 0 register VN-1 RSM-1
at 100 handover VN-1 RSU-1
expect RSU-1 handle_ack Confirmed count=1
)";
  const auto direct = run_scenario(parse_scenario(std::string(base) + "link VN-1 RSU-1 latency=2"));
  const auto fog =
      run_scenario(parse_scenario(std::string(base) + "link VN-1 RSU-1 latency=2 via=FOG-1"));
  EXPECT_EQ(fog.count("FOG-1", "forward", "REQ"), 1u);
  EXPECT_EQ(fog.count("FOG-1", "forward", "ACK"), 1u);
  EXPECT_EQ(direct.events.events().back().time_ms, 106u);
  EXPECT_EQ(fog.events.events().back().time_ms, 226u);
  // Same REQ and same sizes; REP differs only because T2 is later.
  ASSERT_EQ(direct.messages.size(), fog.messages.size());
  EXPECT_EQ(direct.messages[0].payload, fog.messages[0].payload);
  for (std::size_t i = 0; i < direct.messages.size(); ++i)
    EXPECT_EQ(direct.messages[i].payload.size(), fog.messages[i].payload.size());
}

TEST(Simnet, CrossDomainWaitsForLedgerSync) {
  const auto t = run_scenario(parse(R"(
at 0 register VN-1 RSM-1
at 100 handover VN-1 RSU-2
at 400 handover VN-1 RSU-2
at 500 handover VN-1 RSU-1
expect RSU-2 handle_request UnknownCredential count=1
expect RSU-2 handle_ack Confirmed count=1
expect RSU-1 handle_ack Confirmed count=1
expect net ks_agreement Equal count=2
)"));
  EXPECT_EQ(t.bytes_of("REQ"), 104u);
}

TEST(Simnet, SwappedTxidIsNotOnChain) {
  run_scenario(parse_scenario(R"(
node LEA lea
node RSM-1 rsm fault=swap_txid
node VN-1 vn
node VN-2 vn
at 0 register VN-1 RSM-1
at 1 register VN-2 RSM-1
expect VN-2 finish_registration NotOnChain count=1
)"));
}

TEST(Simnet, ExpiredRegistrationAtRsu) {
  run_scenario(parse(R"(
t_exp_ms = 1000
at 0 register VN-1 RSM-1
at 999 handover VN-1 RSU-1
at 1500 handover VN-1 RSU-1
expect RSU-1 handle_request ExpiredRegistration count=1
expect VN-1 start_handover ExpiredRegistration count=1
)"));
}

TEST(Simnet, ImpersonationCorpusNeverAccepted) {
  const auto t = run_scenario(parse(R"(
at 0 register VN-1 RSM-1
at 100 impersonate RSU-1 count=2000
expect RSU-1 handle_request Replied count=0
expect RSU-1 handle_request UnknownCredential count=2000
)"));
  EXPECT_EQ(t.count("ADV", "receive", "REP"), 0u);
}

TEST(Simnet, TraceAndAuditOutputs) {
  auto t = run_scenario(parse_scenario(*builtin_scenario("trace")));
  ASSERT_EQ(t.traces.size(), 1u);
  EXPECT_EQ(std::string(t.traces[0].id.begin(), t.traces[0].id.end()), "VIN-0001");
  t = run_scenario(parse_scenario(*builtin_scenario("audit-frame")));
  EXPECT_EQ(t.audits, std::vector<std::string>{"Framed"});
}

TEST(Simnet, ShippedScenarioFilesRun) {
  const std::filesystem::path dir = BEPHAP_SCENARIO_DIR;
  std::size_t n = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".scn") continue;
    ++n;
    EXPECT_NO_THROW(run_scenario(load_scenario(entry.path().string()))) << entry.path();
  }
  EXPECT_GT(n, 0u);
  EXPECT_ERRC(load_scenario((dir / "missing.scn").string()), Errc::ScenarioParse);
}

}  // namespace
}  // namespace bephap::simnet
