#include <gtest/gtest.h>

#include "bephap/wire.hpp"
#include "test_util.hpp"

namespace bephap::wire {
namespace {

GroupPoint even_point(Rng& rng) {
  for (;;) {
    auto p = base_mul(Scalar::random(rng));
    if (!p.is_identity() && p.has_even_y()) return p;
  }
}

AuthRequest sample_request(Rng& rng) {
  AuthRequest m;
  m.pid = rng.bytes<kPidBytes>();
  m.m = Scalar::random(rng);
  m.a = even_point(rng);
  m.s1 = rng.bytes<kS1Bytes>();
  m.t1 = Timestamp{static_cast<std::uint32_t>(rng.next_u64())};
  return m;
}

TEST(Wire, MessageSizes) {
  Rng rng(40);
  const auto req = encode(sample_request(rng));
  const auto rep = encode(AuthReply{rng.bytes<kS2Bytes>(), rng.bytes<20>(), Timestamp{7}});
  const auto ack = encode(AuthAck{rng.bytes<20>()});
  EXPECT_EQ(req.size(), 104u);
  EXPECT_EQ(rep.size(), 88u);
  EXPECT_EQ(ack.size(), 20u);
  EXPECT_EQ(req.size() + rep.size() + ack.size(), 212u);
  EXPECT_EQ(kS2Bytes, 64u);
}

TEST(Wire, RequestLayout) {
  Rng rng(41);
  const auto m = sample_request(rng);
  const auto enc = encode(m);
  EXPECT_TRUE(std::equal(m.pid.begin(), m.pid.end(), enc.begin()));
  EXPECT_TRUE(std::equal(m.m.bytes().begin(), m.m.bytes().end(), enc.begin() + 16));
  const auto x = m.a.x_bytes();
  EXPECT_TRUE(std::equal(x.begin(), x.end(), enc.begin() + 44));
  EXPECT_TRUE(std::equal(m.s1.begin(), m.s1.end(), enc.begin() + 72));
  EXPECT_EQ(load_u32(ByteView(enc).subspan(100)), m.t1.ms);
}

TEST(Wire, RoundTrips) {
  Rng rng(42);
  for (int i = 0; i < 200; ++i) {
    const auto req = sample_request(rng);
    ASSERT_EQ(decode_request(encode(req)), req);
    const AuthReply rep{rng.bytes<kS2Bytes>(), rng.bytes<20>(), Timestamp{9}};
    ASSERT_EQ(decode_reply(encode(rep)), rep);
    const AuthAck ack{rng.bytes<20>()};
    ASSERT_EQ(decode_ack(encode(ack)), ack);
    const UpdateMsg upd{rng.bytes<kUpdateBytes>()};
    ASSERT_EQ(decode_update(encode(upd)), upd);
  }
  Bytes c1(90);
  rng.fill(c1);
  EXPECT_EQ(decode_registration_request(encode(RegistrationRequest{c1})).c1, c1);

  const Receipt receipt{rng.bytes<32>(), Signature{Scalar::random(rng), Scalar::random(rng)},
                        1234567890123ull};
  EXPECT_EQ(decode_receipt(encode(receipt)), receipt);
  EXPECT_EQ(encode(receipt).size(), kReceiptBytes);
  const RegistrationReply reply{receipt, rng.bytes<16>(), SymKey(rng.bytes<20>())};
  EXPECT_EQ(decode_registration_reply(encode(reply)), reply);
  EXPECT_EQ(encode(reply).size(), kRegistrationReplyBytes);
  const GroupKeyMsg gk{Scalar::random(rng), Scalar::random(rng), 3};
  EXPECT_EQ(decode_group_key(encode(gk)), gk);
}

TEST(Wire, LengthContract) {
  Bytes b103(103, 0), b105(105, 0), b87(87, 0), b19(19, 0), b21(21, 0);
  EXPECT_ERRC(decode_request(b103), Errc::WrongLength);
  EXPECT_ERRC(decode_request(b105), Errc::WrongLength);
  EXPECT_ERRC(decode_reply(b87), Errc::WrongLength);
  EXPECT_ERRC(decode_ack(b19), Errc::WrongLength);
  EXPECT_ERRC(decode_ack(b21), Errc::WrongLength);
  EXPECT_ERRC(decode_registration_request(ByteView(b19).first(3)), Errc::WrongLength);
}

TEST(Wire, NonCanonicalScalarRejected) {
  Rng rng(43);
  auto enc = encode(sample_request(rng));
  std::fill(enc.begin() + 16, enc.begin() + 44, 0xff);
  EXPECT_ERRC(decode_request(enc), Errc::NonCanonicalScalar);
}

TEST(Wire, OffCurveXRejected) {
  Rng rng(44);
  auto enc = encode(sample_request(rng));
  // Step x until it has no curve solution (about half of all x do not).
  int rejected = 0;
  for (int i = 0; i < 64; ++i) {
    enc[71] = static_cast<std::uint8_t>(i);
    if (testing::error_of([&] { decode_request(enc); }) == Errc::OffCurvePoint) ++rejected;
  }
  EXPECT_GT(rejected, 10);
  EXPECT_LT(rejected, 54);
}

TEST(Wire, CanonicalPoint) {
  Rng rng(45);
  for (int i = 0; i < 100; ++i) {
    const auto p = even_point(rng);
    ASSERT_EQ(decanonicalize(canonicalize_point(p)), p);
  }
  Bytes p_bytes(curve_params().p.begin(), curve_params().p.end());
  EXPECT_ERRC(decanonicalize(p_bytes), Errc::NotOnCurve);
}

TEST(Wire, FuzzedDecodeOnlyThrowsTypedErrors) {
  Rng rng(46);
  auto check = [](auto&& fn) {
    try {
      fn();
    } catch (const Error&) {
    } catch (...) {
      ADD_FAILURE() << "untyped exception";
    }
  };
  for (int i = 0; i < 20000; ++i) {
    const std::size_t n = rng.uniform(3) == 0 ? rng.uniform(300)
                                              : std::array<std::size_t, 6>{104, 88, 20, 36, 96, 132}[rng.uniform(6)];
    Bytes buf(n);
    rng.fill(buf);
    check([&] { decode_request(buf); });
    check([&] { decode_reply(buf); });
    check([&] { decode_ack(buf); });
    check([&] { decode_update(buf); });
    check([&] { decode_registration_request(buf); });
    check([&] { decode_receipt(buf); });
    check([&] { decode_registration_reply(buf); });
    check([&] { decode_group_key(buf); });
  }
}

TEST(Wire, DumpLineRoundTrip) {
  const DumpLine line{"VN->RSU", "REQ", from_hex("00ff10")};
  const auto text = format_dump_line(line);
  EXPECT_EQ(text, "VN->RSU REQ 00ff10");
  EXPECT_EQ(parse_dump_line(text), line);
  EXPECT_ERRC(parse_dump_line("VN->RSU REQ"), Errc::WrongLength);
  EXPECT_ERRC(parse_dump_line("VN->RSU REQ 0g"), Errc::WrongLength);
}

}  // namespace
}  // namespace bephap::wire
