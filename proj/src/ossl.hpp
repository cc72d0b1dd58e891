#pragma once

// Thin RAII helpers over libcrypto, private to the library.

#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/evp.h>

#include <memory>

#include "bephap/bytes.hpp"

namespace bephap::detail {

struct BnDeleter {
  void operator()(BIGNUM* b) const { BN_clear_free(b); }
};
using BnPtr = std::unique_ptr<BIGNUM, BnDeleter>;

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* c) const { EVP_MD_CTX_free(c); }
};
using MdCtxPtr = std::unique_ptr<EVP_MD_CTX, MdCtxDeleter>;

const EC_GROUP* group();
const BIGNUM* order();
BN_CTX* bn_ctx();  // thread-local

BnPtr bn_from(ByteView be);
BnPtr bn_new();
// Left-pads to `out.size()`; the value must fit.
void bn_to(const BIGNUM* bn, std::span<std::uint8_t> out);

[[noreturn]] void fail(const char* what);

// One-shot XOF helper: SHAKE256 over the concatenation of `parts`.
void shake256(std::initializer_list<ByteView> parts, std::span<std::uint8_t> out);

}  // namespace bephap::detail
