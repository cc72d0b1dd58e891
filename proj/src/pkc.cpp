#include "bephap/pkc.hpp"

#include "bephap/error.hpp"
#include "bephap/hash.hpp"
#include "ossl.hpp"

namespace bephap {

namespace {

constexpr std::string_view kNonceLabel = "bephap.ecdsa.nonce";
constexpr std::string_view kKdfLabel = "bephap.aenc.kdf";
constexpr std::string_view kStreamLabel = "bephap.aenc.stream";
constexpr std::string_view kMacLabel = "bephap.aenc.mac";

Scalar message_scalar(ByteView msg) {
  // SHA-224 output is exactly the bit length of q, so no truncation applies.
  return Scalar::reduce(sha224(msg));
}

Scalar x_mod_q(const GroupPoint& p) { return Scalar::reduce(p.x_bytes()); }

}  // namespace

VerifyingKey VerifyingKey::decode(ByteView enc) {
  auto q = GroupPoint::from_compressed(enc);
  if (q.is_identity()) throw Error(Errc::NotOnCurve, "identity public key");
  return VerifyingKey{std::move(q)};
}

ByteArray<kSignatureBytes> Signature::encode() const {
  ByteArray<kSignatureBytes> out{};
  std::copy(r.bytes().begin(), r.bytes().end(), out.begin());
  std::copy(s.bytes().begin(), s.bytes().end(), out.begin() + kScalarBytes);
  return out;
}

Signature Signature::decode(ByteView enc) {
  if (enc.size() != kSignatureBytes) throw Error(Errc::WrongLength, "signature");
  return Signature{Scalar::from_bytes(enc.first(kScalarBytes)),
                   Scalar::from_bytes(enc.subspan(kScalarBytes))};
}

SignatureKeyPair keygen_sig(Rng& rng) {
  const NonZeroScalar d = NonZeroScalar::random(rng);
  return SignatureKeyPair{SigningKey{d}, VerifyingKey{base_mul(d)}};
}

Signature sign(const SigningKey& sk, ByteView msg) {
  const Scalar e = message_scalar(msg);
  for (std::uint32_t attempt = 0;; ++attempt) {
    Bytes ctr;
    append_u32(ctr, attempt);
    ByteArray<40> wide{};
    detail::shake256({as_bytes(kNonceLabel), sk.d.bytes(), e.bytes(), ctr}, wide);
    const Scalar k = Scalar::reduce(wide);
    secure_wipe(wide);
    if (k.is_zero()) continue;
    const Scalar r = x_mod_q(base_mul(k));
    if (r.is_zero()) continue;
    const Scalar s = k.inverse() * (e + r * sk.d);
    if (s.is_zero()) continue;
    return Signature{r, s};
  }
}

bool verify(const VerifyingKey& pk, const Signature& sig, ByteView msg) {
  if (sig.r.is_zero() || sig.s.is_zero() || pk.q.is_identity()) return false;
  const Scalar e = message_scalar(msg);
  const Scalar w = sig.s.inverse();
  const GroupPoint x = msm2(e * w, sig.r * w, pk.q);
  if (x.is_identity()) return false;
  return x_mod_q(x) == sig.r;
}

EncryptionKeyPair keygen_enc(Rng& rng) {
  const NonZeroScalar d = NonZeroScalar::random(rng);
  return EncryptionKeyPair{DecryptionKey{d}, EncryptionKey{base_mul(d)}};
}

namespace {

struct AencKeys {
  ByteArray<32> enc{};
  ByteArray<32> mac{};
  ~AencKeys() {
    secure_wipe(enc);
    secure_wipe(mac);
  }
};

void derive(const GroupPoint& ephemeral, const GroupPoint& shared,
            const GroupPoint& recipient, AencKeys& keys) {
  ByteArray<64> okm{};
  auto e = ephemeral.compressed();
  auto s = shared.compressed();
  auto r = recipient.compressed();
  detail::shake256({as_bytes(kKdfLabel), e, s, r}, okm);
  std::copy(okm.begin(), okm.begin() + 32, keys.enc.begin());
  std::copy(okm.begin() + 32, okm.end(), keys.mac.begin());
  secure_wipe(okm);
}

void xor_stream(const AencKeys& keys, ByteView in, std::span<std::uint8_t> out) {
  if (in.empty()) return;
  detail::shake256({as_bytes(kStreamLabel), keys.enc}, out);
  for (std::size_t i = 0; i < in.size(); ++i) out[i] ^= in[i];
}

ByteArray<kAencTagBytes> mac(const AencKeys& keys, ByteView header, ByteView body) {
  ByteArray<kAencTagBytes> tag{};
  detail::shake256({as_bytes(kMacLabel), keys.mac, header, body}, tag);
  return tag;
}

}  // namespace

Bytes aenc(const EncryptionKey& pk, ByteView msg, Rng& rng) {
  const NonZeroScalar eph = NonZeroScalar::random(rng);
  const GroupPoint e = base_mul(eph);
  const GroupPoint shared = scalar_mul(pk.q, eph);
  AencKeys keys;
  derive(e, shared, pk.q, keys);

  Bytes out;
  out.reserve(msg.size() + kAencOverhead);
  auto header = e.compressed();
  append(out, header);
  out.resize(kCompressedPointBytes + msg.size());
  xor_stream(keys, msg, std::span(out).subspan(kCompressedPointBytes));
  auto tag = mac(keys, header, ByteView(out).subspan(kCompressedPointBytes));
  append(out, tag);
  return out;
}

Bytes adec(const DecryptionKey& sk, ByteView ct) {
  if (ct.size() < kAencOverhead) throw Error(Errc::IntegrityFailure, "short ciphertext");
  const auto header = ct.first(kCompressedPointBytes);
  const auto body = ct.subspan(kCompressedPointBytes,
                               ct.size() - kAencOverhead);
  const auto tag = ct.last(kAencTagBytes);

  GroupPoint e;
  try {
    e = GroupPoint::from_compressed(header);
  } catch (const Error&) {
    throw Error(Errc::IntegrityFailure, "bad ephemeral point");
  }
  if (e.is_identity()) throw Error(Errc::IntegrityFailure, "bad ephemeral point");
  const GroupPoint shared = scalar_mul(e, sk.d);
  AencKeys keys;
  derive(e, shared, base_mul(sk.d), keys);
  auto expected = mac(keys, header, body);
  if (!constant_time_equal(expected, tag)) throw Error(Errc::IntegrityFailure);

  Bytes out(body.size());
  xor_stream(keys, body, out);
  return out;
}

}  // namespace bephap
