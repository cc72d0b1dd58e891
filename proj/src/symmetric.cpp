#include "bephap/symmetric.hpp"

#include <openssl/evp.h>

#include <memory>

#include "bephap/error.hpp"
#include "ossl.hpp"

namespace bephap {

namespace {

constexpr std::string_view kStreamLabel = "bephap.sym.stream";
constexpr std::string_view kPidLabel = "bephap.pid.subkey";

Bytes keystream_xor(const SymKey& key, ByteView in, std::string_view context) {
  Bytes out(in.size());
  if (in.empty()) return out;
  Bytes lens;
  append_u32(lens, static_cast<std::uint32_t>(key.view().size()));
  append_u32(lens, static_cast<std::uint32_t>(context.size()));
  detail::shake256({as_bytes(kStreamLabel), lens, key.view(), as_bytes(context)},
                   out);
  for (std::size_t i = 0; i < in.size(); ++i) out[i] ^= in[i];
  return out;
}

struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* c) const { EVP_CIPHER_CTX_free(c); }
};

ByteArray<16> aes_block(const Scalar& b, const ByteArray<16>& in, bool encrypt) {
  ByteArray<16> subkey{};
  detail::shake256({as_bytes(kPidLabel), b.bytes()}, subkey);
  std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter> ctx(EVP_CIPHER_CTX_new());
  if (!ctx) detail::fail("EVP_CIPHER_CTX_new");
  if (EVP_CipherInit_ex(ctx.get(), EVP_aes_128_ecb(), nullptr, subkey.data(),
                        nullptr, encrypt ? 1 : 0) != 1)
    detail::fail("EVP_CipherInit_ex");
  secure_wipe(subkey);
  EVP_CIPHER_CTX_set_padding(ctx.get(), 0);
  ByteArray<16> out{};
  int len = 0;
  if (EVP_CipherUpdate(ctx.get(), out.data(), &len, in.data(),
                       static_cast<int>(in.size())) != 1 ||
      len != 16)
    detail::fail("EVP_CipherUpdate");
  return out;
}

}  // namespace

SymKey SymKey::from(ByteView raw) {
  if (raw.size() != kLambdaBytes) throw Error(Errc::WrongLength, "sym key");
  Digest d{};
  std::copy(raw.begin(), raw.end(), d.begin());
  return SymKey(d);
}

Bytes sym_encrypt(const SymKey& key, ByteView plaintext, std::string_view context) {
  return keystream_xor(key, plaintext, context);
}

Bytes sym_decrypt(const SymKey& key, ByteView ciphertext, std::string_view context) {
  return keystream_xor(key, ciphertext, context);
}

Pid pid_encrypt(const Scalar& b, const PseudoData& pd) {
  return aes_block(b, pd, true);
}

PseudoData pid_decrypt(const Scalar& b, const Pid& pid) {
  return aes_block(b, pid, false);
}

}  // namespace bephap
