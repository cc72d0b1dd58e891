#include "bephap/wire.hpp"

#include <cassert>
#include <sstream>

#include "bephap/error.hpp"

namespace bephap::wire {

namespace {

class Reader {
 public:
  Reader(ByteView in, std::size_t expected, std::string_view what) : in_(in) {
    if (in.size() != expected) throw Error(Errc::WrongLength, std::string(what));
  }

  ByteView take(std::size_t n) {
    auto out = in_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  template <std::size_t N>
  ByteArray<N> array() {
    ByteArray<N> out{};
    auto v = take(N);
    std::copy(v.begin(), v.end(), out.begin());
    return out;
  }

  Scalar scalar() { return Scalar::from_bytes(take(kScalarBytes)); }
  std::uint32_t u32() { return load_u32(take(4)); }
  std::uint64_t u64() { return load_u64(take(8)); }

 private:
  ByteView in_;
  std::size_t pos_ = 0;
};

Signature read_signature(Reader& r) {
  Scalar rr = r.scalar();
  Scalar ss = r.scalar();
  return Signature{rr, ss};
}

}  // namespace

ByteArray<kFieldBytes> canonicalize_point(const GroupPoint& a) {
  assert(!a.is_identity() && "identity has no canonical encoding");
  assert(a.has_even_y() && "sender must resample to an even-y point");
  return a.x_bytes();
}

GroupPoint decanonicalize(ByteView x) {
  if (x.size() != kFieldBytes) throw Error(Errc::WrongLength, "point x");
  auto p = GroupPoint::from_x_even(x);
  if (!p) throw Error(Errc::NotOnCurve);
  return std::move(*p);
}

Bytes encode(const AuthRequest& m) {
  Bytes out;
  out.reserve(kRequestBytes);
  append(out, m.pid);
  append(out, m.m.bytes());
  append(out, canonicalize_point(m.a));
  append(out, m.s1);
  append_u32(out, m.t1.ms);
  return out;
}

AuthRequest decode_request(ByteView in) {
  Reader r(in, kRequestBytes, "REQ");
  AuthRequest m;
  m.pid = r.array<kPidBytes>();
  m.m = r.scalar();
  try {
    m.a = decanonicalize(r.take(kFieldBytes));
  } catch (const Error&) {
    throw Error(Errc::OffCurvePoint, "REQ.A");
  }
  m.s1 = r.array<kS1Bytes>();
  m.t1 = Timestamp{r.u32()};
  return m;
}

Bytes encode(const AuthReply& m) {
  Bytes out;
  out.reserve(kReplyBytes);
  append(out, m.s2);
  append(out, m.s3);
  append_u32(out, m.t2.ms);
  return out;
}

AuthReply decode_reply(ByteView in) {
  Reader r(in, kReplyBytes, "REP");
  AuthReply m;
  m.s2 = r.array<kS2Bytes>();
  m.s3 = r.array<kLambdaBytes>();
  m.t2 = Timestamp{r.u32()};
  return m;
}

Bytes encode(const AuthAck& m) { return Bytes(m.ack.begin(), m.ack.end()); }

AuthAck decode_ack(ByteView in) {
  Reader r(in, kAckBytes, "ACK");
  return AuthAck{r.array<kAckBytes>()};
}

Bytes encode(const UpdateMsg& m) { return Bytes(m.s_upd.begin(), m.s_upd.end()); }

UpdateMsg decode_update(ByteView in) {
  Reader r(in, kUpdateBytes, "UPD");
  return UpdateMsg{r.array<kUpdateBytes>()};
}

Bytes encode(const RegistrationRequest& m) {
  Bytes out;
  append_u32(out, static_cast<std::uint32_t>(m.c1.size()));
  append(out, m.c1);
  return out;
}

RegistrationRequest decode_registration_request(ByteView in) {
  if (in.size() < 4) throw Error(Errc::WrongLength, "REG_REQ header");
  const std::uint32_t len = load_u32(in);
  if (in.size() - 4 != len) throw Error(Errc::WrongLength, "REG_REQ body");
  auto body = in.subspan(4);
  return RegistrationRequest{Bytes(body.begin(), body.end())};
}

namespace {

void append_receipt(Bytes& out, const Receipt& m) {
  append(out, m.txid);
  append(out, m.sigma.encode());
  append_u64(out, m.t_exp_ms);
}

Receipt read_receipt(Reader& r) {
  Receipt m;
  m.txid = r.array<kTxIdBytes>();
  m.sigma = read_signature(r);
  m.t_exp_ms = r.u64();
  return m;
}

}  // namespace

Bytes encode(const Receipt& m) {
  Bytes out;
  append_receipt(out, m);
  return out;
}

Receipt decode_receipt(ByteView in) {
  Reader r(in, kReceiptBytes, "RECEIPT");
  return read_receipt(r);
}

Bytes encode(const RegistrationReply& m) {
  Bytes out;
  out.reserve(kRegistrationReplyBytes);
  append_receipt(out, m.receipt);
  append(out, m.pid);
  append(out, m.d.view());
  return out;
}

RegistrationReply decode_registration_reply(ByteView in) {
  Reader r(in, kRegistrationReplyBytes, "REG_REP");
  RegistrationReply m;
  m.receipt = read_receipt(r);
  m.pid = r.array<kPidBytes>();
  m.d = SymKey(r.array<kLambdaBytes>());
  return m;
}

Bytes encode(const GroupKeyMsg& m) {
  Bytes out;
  append(out, m.gk.bytes());
  append(out, m.b.bytes());
  append_u32(out, m.epoch);
  return out;
}

GroupKeyMsg decode_group_key(ByteView in) {
  Reader r(in, kGroupKeyBytes, "GK");
  GroupKeyMsg m;
  m.gk = r.scalar();
  m.b = r.scalar();
  m.epoch = r.u32();
  return m;
}

std::string format_dump_line(const DumpLine& line) {
  return line.direction + " " + line.name + " " + to_hex(line.payload);
}

DumpLine parse_dump_line(std::string_view text) {
  std::istringstream in{std::string(text)};
  DumpLine line;
  std::string hex;
  if (!(in >> line.direction >> line.name)) throw Error(Errc::WrongLength, "dump line");
  if (!(in >> hex)) throw Error(Errc::WrongLength, "dump line payload");
  try {
    line.payload = from_hex(hex);
  } catch (const std::invalid_argument&) {
    throw Error(Errc::WrongLength, "dump line hex");
  }
  return line;
}

}  // namespace bephap::wire
