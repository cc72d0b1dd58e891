#include <array>

#include "bephap/simnet.hpp"

namespace bephap::simnet {

namespace {

constexpr std::string_view kHonest = R"(# Register in domain 1, hand over inside it, cross into domain 2 through a
# fog forwarder, rotate the group key, and hand over again on the update.
seed = 7
node LEA lea
node RSM-1 rsm
node RSM-2 rsm sync_delay=50
node RSU-1 rsu domain=RSM-1
node RSU-2 rsu domain=RSM-2
node FOG-1 fog latency=3
node VN-1 vn id=VIN-0001 pool=8
link VN-1 RSU-1 latency=4 jitter=2
link VN-1 RSU-2 latency=4 jitter=2 via=FOG-1
at 0 register VN-1 RSM-1
at 100 handover VN-1 RSU-1
at 200 handover VN-1 RSU-2
at 300 rotate
at 400 handover VN-1 RSU-1
expect RSU-1 handle_ack Confirmed count=2
expect RSU-2 handle_ack Confirmed count=1
expect VN-1 apply_update Applied count=1
expect net ks_agreement Equal count=3
)";

constexpr std::string_view kAdversary = R"(# One canned attack per adversary capability. Every honest session still
# completes; every attack is rejected with its own error.
seed = 11
node LEA lea
node RSM-1 rsm
node RSU-1 rsu domain=RSM-1
node VN-A vn id=VIN-A
node VN-B vn id=VIN-B
link VN-A RSU-1 latency=3
link VN-B RSU-1 latency=3
at 0 register VN-A RSM-1
at 0 register VN-B RSM-1

# replay inside the freshness window, then after it
at 100 capture REQ VN-A>RSU-1 as=reqA
at 100 handover VN-A RSU-1
at 150 replay reqA to=RSU-1
at 2000 replay reqA to=RSU-1

# in-flight tampering of REQ, REP and ACK
at 3000 tamper REQ VN-B>RSU-1 offset=20 xor=0x01
at 3000 handover VN-B RSU-1
at 4000 tamper REP RSU-1>VN-B offset=5 xor=0x80
at 4000 handover VN-B RSU-1
at 5000 tamper ACK VN-B>RSU-1 offset=0 xor=0x01
at 5000 handover VN-B RSU-1

# cross-session splice: A's ACK offered on B's session
at 6000 capture ACK VN-A>RSU-1 as=ackA
at 6000 handover VN-A RSU-1
at 6000 handover VN-B RSU-1
at 6007 replay ackA to=RSU-1 peer=VN-B

# a reply replayed into the VN's next session
at 7000 capture REP RSU-1>VN-A as=repA
at 7000 handover VN-A RSU-1
at 7100 handover VN-A RSU-1
at 7101 replay repA to=VN-A

# impersonation without secrets, and garbage injection
at 8000 impersonate RSU-1 count=200
at 9000 inject REQ to=RSU-1 hex=00ff

expect RSU-1 handle_request ReplayDetected count=1
expect RSU-1 handle_request StaleTimestamp count=1
expect RSU-1 handle_request UnknownCredential count=201
expect RSU-1 handle_request WrongLength count=1
expect VN-B handle_reply BadKeyConfirm count=1
expect VN-A handle_reply BadKeyConfirm count=1
expect RSU-1 handle_ack BadAck count=2
expect RSU-1 handle_ack Confirmed count=5
expect net ks_agreement Equal count=5
expect net ks_agreement Mismatch count=0
)";

constexpr std::string_view kRotate = R"(# Rotation with one revoked VN and one VN whose update is lost in transit.
seed = 5
node LEA lea
node RSM-1 rsm
node RSM-2 rsm
node RSU-1 rsu domain=RSM-1
node RSU-2 rsu domain=RSM-2
node VN-H vn id=VIN-HONEST
node VN-M vn id=VIN-MISSED
node VN-R vn id=VIN-REVOKED
link VN-H RSU-1
link VN-H RSU-2
link VN-M RSU-1
link VN-R RSU-1
at 0 register VN-H RSM-1
at 0 register VN-M RSM-1
at 0 register VN-R RSM-1
at 100 handover VN-H RSU-1
at 110 handover VN-M RSU-1
at 120 handover VN-R RSU-1
at 200 report RSU-1 VN-R
at 250 handover VN-R RSU-1
at 300 drop UPD RSU-1>VN-M
at 300 rotate
at 400 handover VN-H RSU-2
at 410 handover VN-M RSU-1
at 420 handover VN-R RSU-1
at 500 register VN-M RSM-2
at 600 handover VN-M RSU-1
expect RSU-1 handle_request RevokedCredential count=1
expect LEA rotate_updates 2 count=1
expect LEA rotate_skipped_revoked 1 count=1
expect VN-H apply_update Applied count=1
expect RSU-2 handle_ack Confirmed count=1
expect RSU-1 handle_request UnknownCredential count=2
expect RSU-1 handle_ack Confirmed count=4
)";

constexpr std::string_view kTrace = R"(# The RSU reports a session; the LEA opens the evidence to the real ID.
seed = 3
node LEA lea
node RSM-1 rsm
node RSU-1 rsu domain=RSM-1
node VN-1 vn id=VIN-0001
link VN-1 RSU-1
at 0 register VN-1 RSM-1
at 100 handover VN-1 RSU-1
at 200 trace RSU-1 VN-1
expect LEA trace Traced count=1
expect net trace_identity Match count=1
)";

constexpr std::string_view kAudit = R"(# The LEA's answer is checked against public data only.
seed = 3
node LEA lea
node RSM-1 rsm
node RSU-1 rsu domain=RSM-1
node VN-1 vn id=VIN-0001
node VN-2 vn id=VIN-0002
link VN-1 RSU-1
at 0 register VN-1 RSM-1
at 0 register VN-2 RSM-1
at 100 handover VN-1 RSU-1
at 200 audit RSU-1 VN-1
expect AUDITOR audit Consistent count=1
)";

constexpr std::string_view kAuditFrame = R"(# The LEA names VN-2 for VN-1's session; VN-2 answers with its own ledger entry.
seed = 3
node LEA lea
node RSM-1 rsm
node RSU-1 rsu domain=RSM-1
node VN-1 vn id=VIN-0001
node VN-2 vn id=VIN-0002
link VN-1 RSU-1
at 0 register VN-1 RSM-1
at 0 register VN-2 RSM-1
at 100 handover VN-1 RSU-1
at 200 audit RSU-1 VN-1 claim=VN-2
expect AUDITOR audit Framed count=1
)";

constexpr std::array<std::pair<std::string_view, std::string_view>, 6> kBuiltins = {{
    {"honest", kHonest},
    {"adversary", kAdversary},
    {"rotate", kRotate},
    {"trace", kTrace},
    {"audit", kAudit},
    {"audit-frame", kAuditFrame},
}};

}  // namespace

std::optional<std::string> builtin_scenario(std::string_view name) {
  for (auto [n, text] : kBuiltins)
    if (n == name) return std::string(text);
  return std::nullopt;
}

}  // namespace bephap::simnet
