#include <gtest/gtest.h>
#include <openssl/core_names.h>
#include <openssl/ec.h>
#include <openssl/evp.h>
#include <openssl/param_build.h>

#include <memory>

#include "bephap/hash.hpp"
#include "bephap/pkc.hpp"
#include "test_util.hpp"

namespace bephap {
namespace {

// Independent route: libcrypto's own ECDSA over the same key, fed the
// SHA-224 digest directly.
struct PkeyDeleter {
  void operator()(EVP_PKEY* p) const { EVP_PKEY_free(p); }
};
struct PctxDeleter {
  void operator()(EVP_PKEY_CTX* p) const { EVP_PKEY_CTX_free(p); }
};
using PkeyPtr = std::unique_ptr<EVP_PKEY, PkeyDeleter>;
using PctxPtr = std::unique_ptr<EVP_PKEY_CTX, PctxDeleter>;

PkeyPtr openssl_key(const SignatureKeyPair& kp, bool with_private) {
  OSSL_PARAM_BLD* bld = OSSL_PARAM_BLD_new();
  OSSL_PARAM_BLD_push_utf8_string(bld, OSSL_PKEY_PARAM_GROUP_NAME, "P-224", 0);
  const auto pub = kp.pk.encode();
  OSSL_PARAM_BLD_push_octet_string(bld, OSSL_PKEY_PARAM_PUB_KEY, pub.data(), pub.size());
  BIGNUM* d = BN_bin2bn(kp.sk.d.bytes().data(), kScalarBytes, nullptr);
  if (with_private) OSSL_PARAM_BLD_push_BN(bld, OSSL_PKEY_PARAM_PRIV_KEY, d);
  OSSL_PARAM* params = OSSL_PARAM_BLD_to_param(bld);
  PctxPtr ctx(EVP_PKEY_CTX_new_from_name(nullptr, "EC", nullptr));
  EVP_PKEY* key = nullptr;
  EVP_PKEY_fromdata_init(ctx.get());
  EVP_PKEY_fromdata(ctx.get(), &key,
                    with_private ? EVP_PKEY_KEYPAIR : EVP_PKEY_PUBLIC_KEY, params);
  OSSL_PARAM_free(params);
  OSSL_PARAM_BLD_free(bld);
  BN_free(d);
  return PkeyPtr(key);
}

Bytes to_der(const Signature& sig) {
  ECDSA_SIG* s = ECDSA_SIG_new();
  ECDSA_SIG_set0(s, BN_bin2bn(sig.r.bytes().data(), kScalarBytes, nullptr),
                 BN_bin2bn(sig.s.bytes().data(), kScalarBytes, nullptr));
  unsigned char* der = nullptr;
  const int len = i2d_ECDSA_SIG(s, &der);
  Bytes out(der, der + len);
  OPENSSL_free(der);
  ECDSA_SIG_free(s);
  return out;
}

Signature from_der(ByteView der) {
  const unsigned char* p = der.data();
  ECDSA_SIG* s = d2i_ECDSA_SIG(nullptr, &p, static_cast<long>(der.size()));
  ByteArray<kScalarBytes> r{}, ss{};
  BN_bn2binpad(ECDSA_SIG_get0_r(s), r.data(), kScalarBytes);
  BN_bn2binpad(ECDSA_SIG_get0_s(s), ss.data(), kScalarBytes);
  ECDSA_SIG_free(s);
  return Signature{Scalar::from_bytes(r), Scalar::from_bytes(ss)};
}

TEST(Ecdsa, SignVerify) {
  Rng rng(20);
  const auto kp = keygen_sig(rng);
  const auto msg = as_bytes("id||CH||T_Exp");
  const auto sig = sign(kp.sk, msg);
  EXPECT_TRUE(verify(kp.pk, sig, msg));
  EXPECT_EQ(sign(kp.sk, msg), sig);  // deterministic nonce
  EXPECT_FALSE(verify(keygen_sig(rng).pk, sig, msg));
}

TEST(Ecdsa, AnyFlippedByteFails) {
  Rng rng(21);
  const auto kp = keygen_sig(rng);
  Bytes msg(104);
  rng.fill(msg);
  const auto sig = sign(kp.sk, msg);
  for (std::size_t i = 0; i < msg.size(); ++i) {
    auto m = msg;
    m[i] ^= 0x01;
    ASSERT_FALSE(verify(kp.pk, sig, m)) << i;
  }
  const auto enc = sig.encode();
  for (std::size_t i = 0; i < enc.size(); ++i) {
    auto e = enc;
    e[i] ^= 0x80;
    try {
      ASSERT_FALSE(verify(kp.pk, Signature::decode(e), msg)) << i;
    } catch (const Error& err) {
      ASSERT_EQ(err.code(), Errc::NonCanonicalScalar);
    }
  }
}

TEST(Ecdsa, AgreesWithLibcrypto) {
  Rng rng(22);
  for (int i = 0; i < 50; ++i) {
    const auto kp = keygen_sig(rng);
    Bytes msg(1 + rng.uniform(200));
    rng.fill(msg);
    const auto digest = sha224(msg);

    const auto pub = openssl_key(kp, false);
    ASSERT_TRUE(pub);
    PctxPtr vctx(EVP_PKEY_CTX_new(pub.get(), nullptr));
    ASSERT_EQ(EVP_PKEY_verify_init(vctx.get()), 1);
    const auto der = to_der(sign(kp.sk, msg));
    EXPECT_EQ(EVP_PKEY_verify(vctx.get(), der.data(), der.size(), digest.data(),
                              digest.size()),
              1);

    const auto priv = openssl_key(kp, true);
    ASSERT_TRUE(priv);
    PctxPtr sctx(EVP_PKEY_CTX_new(priv.get(), nullptr));
    ASSERT_EQ(EVP_PKEY_sign_init(sctx.get()), 1);
    Bytes out(128);
    std::size_t out_len = out.size();
    ASSERT_EQ(EVP_PKEY_sign(sctx.get(), out.data(), &out_len, digest.data(),
                            digest.size()),
              1);
    out.resize(out_len);
    EXPECT_TRUE(verify(kp.pk, from_der(out), msg));
  }
}

TEST(Ecdsa, SignatureEncoding) {
  Rng rng(23);
  const auto kp = keygen_sig(rng);
  const auto sig = sign(kp.sk, as_bytes("x"));
  EXPECT_EQ(Signature::decode(sig.encode()), sig);
  Bytes short_enc(55, 0);
  EXPECT_ERRC(Signature::decode(short_enc), Errc::WrongLength);
  Bytes big(56, 0xff);
  EXPECT_ERRC(Signature::decode(big), Errc::NonCanonicalScalar);
  EXPECT_EQ(VerifyingKey::decode(kp.pk.encode()), kp.pk);
}

TEST(Aenc, RoundTrip) {
  Rng rng(24);
  const auto kp = keygen_enc(rng);
  for (std::size_t n : {0u, 1u, 45u, 200u, 4096u}) {
    Bytes msg(n);
    rng.fill(msg);
    const auto ct = aenc(kp.pk, msg, rng);
    EXPECT_EQ(ct.size(), n + kAencOverhead);
    EXPECT_EQ(adec(kp.sk, ct), msg);
  }
}

TEST(Aenc, TamperIsIntegrityFailure) {
  Rng rng(25);
  const auto kp = keygen_enc(rng);
  Bytes msg(45);
  rng.fill(msg);
  const auto ct = aenc(kp.pk, msg, rng);
  for (std::size_t i = 0; i < ct.size(); ++i) {
    auto bad = ct;
    bad[i] ^= 0x04;
    ASSERT_EQ(testing::error_of([&] { adec(kp.sk, bad); }),
              std::optional(Errc::IntegrityFailure))
        << i;
  }
  EXPECT_ERRC(adec(kp.sk, ByteView(ct).first(kAencOverhead - 1)),
              Errc::IntegrityFailure);
  EXPECT_ERRC(adec(keygen_enc(rng).sk, ct), Errc::IntegrityFailure);
}

TEST(Aenc, FreshEphemeralPerCall) {
  Rng rng(26);
  const auto kp = keygen_enc(rng);
  const auto msg = as_bytes("same");
  EXPECT_NE(aenc(kp.pk, msg, rng), aenc(kp.pk, msg, rng));
}

}  // namespace
}  // namespace bephap
