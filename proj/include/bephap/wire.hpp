#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "bephap/bytes.hpp"
#include "bephap/curve.hpp"
#include "bephap/pkc.hpp"
#include "bephap/symmetric.hpp"
#include "bephap/timestamp.hpp"

/// Normative byte layouts. Fields appear in protocol tuple order, integers
/// are big-endian, points travel as their 28-byte x-coordinate with the
/// even-y representative implied.
namespace bephap::wire {

inline constexpr std::size_t kS1Bytes = kScalarBytes;
inline constexpr std::size_t kS2Bytes = kScalarBytes + kPidBytes + kLambdaBytes;
inline constexpr std::size_t kUpdateBytes = kPidBytes + kLambdaBytes;

inline constexpr std::size_t kRequestBytes =
    kPidBytes + kScalarBytes + kFieldBytes + kS1Bytes + kTimestampBytes;
inline constexpr std::size_t kReplyBytes = kS2Bytes + kLambdaBytes + kTimestampBytes;
inline constexpr std::size_t kAckBytes = kLambdaBytes;
inline constexpr std::size_t kRegistrationReplyBytes =
    kTxIdBytes + kSignatureBytes + 8 + kPidBytes + kLambdaBytes;
inline constexpr std::size_t kReceiptBytes = kTxIdBytes + kSignatureBytes + 8;
inline constexpr std::size_t kGroupKeyBytes = 2 * kScalarBytes + 4;

static_assert(kRequestBytes == 104);
static_assert(kReplyBytes == 88);
static_assert(kAckBytes == 20);

/// REQ = (pID, m, A, S1, T1)
struct AuthRequest {
  Pid pid{};
  Scalar m;
  GroupPoint a;
  ByteArray<kS1Bytes> s1{};
  Timestamp t1;

  bool operator==(const AuthRequest&) const = default;
};

/// REP = (S2, S3, T2)
struct AuthReply {
  ByteArray<kS2Bytes> s2{};
  Digest s3{};
  Timestamp t2;

  bool operator==(const AuthReply&) const = default;
};

/// ACK = H6(M, Ks, REQ, REP)
struct AuthAck {
  Digest ack{};

  bool operator==(const AuthAck&) const = default;
};

/// S_upd = SEN_Ks(pID' || D') sent by an RSU after a group-key rotation.
struct UpdateMsg {
  ByteArray<kUpdateBytes> s_upd{};

  bool operator==(const UpdateMsg&) const = default;
};

/// VN -> RSM -> LEA: C1 = AEN_pkLEA(ID, CH), framed as u32 length || C1.
struct RegistrationRequest {
  Bytes c1;

  bool operator==(const RegistrationRequest&) const = default;
};

/// LEA -> RSM: (TXID, σ, T_Exp).
struct Receipt {
  TxId txid{};
  Signature sigma;
  std::uint64_t t_exp_ms = 0;

  bool operator==(const Receipt&) const = default;
};

/// RSM -> VN: (TXID, σ, T_Exp, pID, D).
struct RegistrationReply {
  Receipt receipt;
  Pid pid{};
  SymKey d;

  bool operator==(const RegistrationReply&) const = default;
};

/// LEA -> RSM -> RSU over secure links: (GK, b, epoch).
struct GroupKeyMsg {
  Scalar gk;
  Scalar b;
  std::uint32_t epoch = 0;

  bool operator==(const GroupKeyMsg&) const = default;
};

/// Precondition (asserted): a is not O and has even y.
ByteArray<kFieldBytes> canonicalize_point(const GroupPoint& a);
/// Throws Error(NotOnCurve) when no curve point has this x.
GroupPoint decanonicalize(ByteView x);

// Every decoder throws bephap::Error with one of WrongLength, OffCurvePoint
// or NonCanonicalScalar, and nothing else.
Bytes encode(const AuthRequest& m);
Bytes encode(const AuthReply& m);
Bytes encode(const AuthAck& m);
Bytes encode(const UpdateMsg& m);
Bytes encode(const RegistrationRequest& m);
Bytes encode(const Receipt& m);
Bytes encode(const RegistrationReply& m);
Bytes encode(const GroupKeyMsg& m);

AuthRequest decode_request(ByteView in);
AuthReply decode_reply(ByteView in);
AuthAck decode_ack(ByteView in);
UpdateMsg decode_update(ByteView in);
RegistrationRequest decode_registration_request(ByteView in);
Receipt decode_receipt(ByteView in);
RegistrationReply decode_registration_reply(ByteView in);
GroupKeyMsg decode_group_key(ByteView in);

/// Hex transcript line: "<direction> <name> <hex>".
struct DumpLine {
  std::string direction;
  std::string name;
  Bytes payload;

  bool operator==(const DumpLine&) const = default;
};

std::string format_dump_line(const DumpLine& line);
DumpLine parse_dump_line(std::string_view text);  // throws Error(WrongLength)

}  // namespace bephap::wire
