#include "bephap/curve.hpp"

#include <openssl/obj_mac.h>

#include <cassert>
#include <stdexcept>
#include <string>

#include "bephap/error.hpp"
#include "ossl.hpp"
#include "p224_sqrt.hpp"

namespace bephap {

namespace detail {

[[noreturn]] void fail(const char* what) {
  throw std::runtime_error(std::string("libcrypto failure: ") + what);
}

namespace {

struct GroupHolder {
  EC_GROUP* group = nullptr;
  BIGNUM* order = nullptr;
  GroupHolder() {
    group = EC_GROUP_new_by_curve_name(NID_secp224r1);
    if (group == nullptr) fail("EC_GROUP_new_by_curve_name");
    order = BN_dup(EC_GROUP_get0_order(group));
  }
  ~GroupHolder() {
    BN_free(order);
    EC_GROUP_free(group);
  }
};

const GroupHolder& holder() {
  static const GroupHolder h;
  return h;
}

struct CtxHolder {
  BN_CTX* ctx = BN_CTX_new();
  ~CtxHolder() { BN_CTX_free(ctx); }
};

}  // namespace

const EC_GROUP* group() { return holder().group; }
const BIGNUM* order() { return holder().order; }

BN_CTX* bn_ctx() {
  thread_local CtxHolder h;
  if (h.ctx == nullptr) fail("BN_CTX_new");
  return h.ctx;
}

BnPtr bn_from(ByteView be) {
  BnPtr bn(BN_bin2bn(be.data(), static_cast<int>(be.size()), nullptr));
  if (!bn) fail("BN_bin2bn");
  return bn;
}

BnPtr bn_new() {
  BnPtr bn(BN_new());
  if (!bn) fail("BN_new");
  return bn;
}

void bn_to(const BIGNUM* bn, std::span<std::uint8_t> out) {
  if (BN_bn2binpad(bn, out.data(), static_cast<int>(out.size())) < 0)
    fail("BN_bn2binpad");
}

void shake256(std::initializer_list<ByteView> parts,
              std::span<std::uint8_t> out) {
  MdCtxPtr ctx(EVP_MD_CTX_new());
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_shake256(), nullptr) != 1)
    fail("EVP_DigestInit_ex(shake256)");
  for (auto part : parts) {
    if (EVP_DigestUpdate(ctx.get(), part.data(), part.size()) != 1)
      fail("EVP_DigestUpdate");
  }
  if (EVP_DigestFinalXOF(ctx.get(), out.data(), out.size()) != 1)
    fail("EVP_DigestFinalXOF");
}

}  // namespace detail

using detail::bn_ctx;
using detail::bn_from;
using detail::bn_new;
using detail::bn_to;
using detail::fail;
using detail::group;
using detail::order;

const CurveParams& curve_params() {
  static const CurveParams params = [] {
    CurveParams c{};
    c.name = "secp224r1";
    auto p = bn_new();
    auto a = bn_new();
    auto b = bn_new();
    if (EC_GROUP_get_curve(group(), p.get(), a.get(), b.get(), bn_ctx()) != 1)
      fail("EC_GROUP_get_curve");
    bn_to(p.get(), c.p);
    bn_to(a.get(), c.a);
    bn_to(b.get(), c.b);
    bn_to(order(), c.q);
    const EC_POINT* g = EC_GROUP_get0_generator(group());
    auto gx = bn_new();
    auto gy = bn_new();
    if (EC_POINT_get_affine_coordinates(group(), g, gx.get(), gy.get(),
                                        bn_ctx()) != 1)
      fail("EC_POINT_get_affine_coordinates");
    bn_to(gx.get(), c.gx);
    bn_to(gy.get(), c.gy);
    c.lambda_bits = 8 * kLambdaBytes;
    return c;
  }();
  return params;
}

// ---------------------------------------------------------------- Scalar

namespace {

Scalar scalar_from_bn(const BIGNUM* bn);

}  // namespace

Scalar Scalar::from_u64(std::uint64_t v) {
  Bytes be;
  append_u64(be, v);
  return reduce(be);
}

std::optional<Scalar> Scalar::try_from_bytes(ByteView be) {
  if (be.size() != kScalarBytes) return std::nullopt;
  auto bn = bn_from(be);
  if (BN_cmp(bn.get(), order()) >= 0) return std::nullopt;
  Scalar s;
  std::copy(be.begin(), be.end(), s.bytes_.begin());
  return s;
}

Scalar Scalar::from_bytes(ByteView be) {
  if (be.size() != kScalarBytes) throw Error(Errc::WrongLength, "scalar");
  auto s = try_from_bytes(be);
  if (!s) throw Error(Errc::NonCanonicalScalar);
  return *s;
}

Scalar Scalar::reduce(ByteView be) {
  auto bn = bn_from(be);
  auto r = bn_new();
  if (BN_nnmod(r.get(), bn.get(), order(), bn_ctx()) != 1) fail("BN_nnmod");
  return scalar_from_bn(r.get());
}

Scalar Scalar::random(Rng& rng) {
  for (;;) {
    auto candidate = rng.bytes<kScalarBytes>();
    if (auto s = try_from_bytes(candidate)) return *s;
  }
}

bool Scalar::is_zero() const {
  std::uint8_t acc = 0;
  for (auto b : bytes_) acc |= b;
  return acc == 0;
}

Scalar Scalar::operator+(const Scalar& o) const {
  auto x = bn_from(bytes_);
  auto y = bn_from(o.bytes_);
  auto r = bn_new();
  if (BN_mod_add(r.get(), x.get(), y.get(), order(), bn_ctx()) != 1)
    fail("BN_mod_add");
  return scalar_from_bn(r.get());
}

Scalar Scalar::operator-(const Scalar& o) const {
  auto x = bn_from(bytes_);
  auto y = bn_from(o.bytes_);
  auto r = bn_new();
  if (BN_mod_sub(r.get(), x.get(), y.get(), order(), bn_ctx()) != 1)
    fail("BN_mod_sub");
  return scalar_from_bn(r.get());
}

Scalar Scalar::operator*(const Scalar& o) const {
  auto x = bn_from(bytes_);
  auto y = bn_from(o.bytes_);
  auto r = bn_new();
  if (BN_mod_mul(r.get(), x.get(), y.get(), order(), bn_ctx()) != 1)
    fail("BN_mod_mul");
  return scalar_from_bn(r.get());
}

Scalar Scalar::operator-() const { return Scalar{} - *this; }

Scalar Scalar::inverse() const {
  if (is_zero()) return {};
  auto x = bn_from(bytes_);
  auto r = bn_new();
  if (BN_mod_inverse(r.get(), x.get(), order(), bn_ctx()) == nullptr)
    fail("BN_mod_inverse");
  return scalar_from_bn(r.get());
}

namespace {

Scalar scalar_from_bn(const BIGNUM* bn) {
  ByteArray<kScalarBytes> buf{};
  bn_to(bn, buf);
  auto s = Scalar::try_from_bytes(buf);
  secure_wipe(buf);
  assert(s.has_value());
  return *s;
}

}  // namespace

std::optional<NonZeroScalar> NonZeroScalar::from(const Scalar& s) {
  if (s.is_zero()) return std::nullopt;
  return NonZeroScalar(s);
}

NonZeroScalar NonZeroScalar::random(Rng& rng) {
  for (;;) {
    if (auto s = from(Scalar::random(rng))) return *s;
  }
}

NonZeroScalar NonZeroScalar::one() { return NonZeroScalar(Scalar::from_u64(1)); }

// ------------------------------------------------------------ GroupPoint

void GroupPoint::Deleter::operator()(ec_point_st* p) const {
  EC_POINT_clear_free(p);
}

namespace {

EC_POINT* new_point() {
  EC_POINT* p = EC_POINT_new(group());
  if (p == nullptr) fail("EC_POINT_new");
  return p;
}

}  // namespace

GroupPoint::GroupPoint() : point_(new_point()) {
  if (EC_POINT_set_to_infinity(group(), point_.get()) != 1)
    fail("EC_POINT_set_to_infinity");
}

GroupPoint::GroupPoint(const GroupPoint& o) : point_(new_point()) {
  if (EC_POINT_copy(point_.get(), o.point_.get()) != 1) fail("EC_POINT_copy");
}

GroupPoint::GroupPoint(GroupPoint&& o) noexcept : point_(std::move(o.point_)) {}

GroupPoint& GroupPoint::operator=(const GroupPoint& o) {
  if (this != &o) {
    if (!point_) point_.reset(new_point());
    if (EC_POINT_copy(point_.get(), o.point_.get()) != 1)
      fail("EC_POINT_copy");
  }
  return *this;
}

GroupPoint& GroupPoint::operator=(GroupPoint&& o) noexcept {
  point_.swap(o.point_);
  return *this;
}

GroupPoint::~GroupPoint() = default;

const GroupPoint& GroupPoint::generator() {
  static const GroupPoint g = [] {
    GroupPoint p(new_point());
    if (EC_POINT_copy(p.point_.get(), EC_GROUP_get0_generator(group())) != 1)
      fail("EC_POINT_copy");
    return p;
  }();
  return g;
}

std::optional<GroupPoint> GroupPoint::from_affine(ByteView x, ByteView y) {
  if (x.size() != kFieldBytes || y.size() != kFieldBytes) return std::nullopt;
  auto bx = bn_from(x);
  auto by = bn_from(y);
  GroupPoint p(new_point());
  // Rejects coordinates >= p and points off the curve.
  if (EC_POINT_set_affine_coordinates(group(), p.point_.get(), bx.get(),
                                      by.get(), bn_ctx()) != 1) {
    return std::nullopt;
  }
  return p;
}

std::optional<GroupPoint> GroupPoint::from_x_even(ByteView x) {
  auto y = detail::p224_even_y(x);
  if (!y) return std::nullopt;
  return from_affine(x, *y);
}

GroupPoint GroupPoint::from_compressed(ByteView enc) {
  if (enc.size() != kCompressedPointBytes)
    throw Error(Errc::WrongLength, "compressed point");
  if (enc[0] == 0x00) {
    for (auto b : enc)
      if (b != 0) throw Error(Errc::NotOnCurve, "bad identity encoding");
    return GroupPoint();
  }
  if (enc[0] != 0x02 && enc[0] != 0x03)
    throw Error(Errc::NotOnCurve, "bad point prefix");
  auto x = enc.subspan(1);
  auto y = detail::p224_even_y(x);
  if (!y) throw Error(Errc::NotOnCurve);
  if (enc[0] == 0x03) {
    // Odd representative: p - y.
    auto py = bn_from(*y);
    auto prime = bn_from(curve_params().p);
    if (BN_sub(py.get(), prime.get(), py.get()) != 1) fail("BN_sub");
    bn_to(py.get(), *y);
  }
  auto p = from_affine(x, *y);
  if (!p) throw Error(Errc::NotOnCurve);
  return std::move(*p);
}

bool GroupPoint::is_identity() const {
  return EC_POINT_is_at_infinity(group(), point_.get()) == 1;
}

namespace {

void affine(const EC_POINT* p, BIGNUM* x, BIGNUM* y) {
  if (EC_POINT_get_affine_coordinates(group(), p, x, y, bn_ctx()) != 1)
    fail("EC_POINT_get_affine_coordinates");
}

}  // namespace

bool GroupPoint::has_even_y() const {
  assert(!is_identity());
  auto x = bn_new();
  auto y = bn_new();
  affine(point_.get(), x.get(), y.get());
  return BN_is_odd(y.get()) == 0;
}

ByteArray<kFieldBytes> GroupPoint::x_bytes() const {
  assert(!is_identity());
  auto x = bn_new();
  auto y = bn_new();
  affine(point_.get(), x.get(), y.get());
  ByteArray<kFieldBytes> out{};
  bn_to(x.get(), out);
  return out;
}

ByteArray<kFieldBytes> GroupPoint::y_bytes() const {
  assert(!is_identity());
  auto x = bn_new();
  auto y = bn_new();
  affine(point_.get(), x.get(), y.get());
  ByteArray<kFieldBytes> out{};
  bn_to(y.get(), out);
  return out;
}

ByteArray<kCompressedPointBytes> GroupPoint::compressed() const {
  ByteArray<kCompressedPointBytes> out{};
  if (is_identity()) return out;
  auto x = bn_new();
  auto y = bn_new();
  affine(point_.get(), x.get(), y.get());
  out[0] = BN_is_odd(y.get()) ? 0x03 : 0x02;
  bn_to(x.get(), std::span<std::uint8_t>(out).subspan(1));
  return out;
}

GroupPoint GroupPoint::operator+(const GroupPoint& o) const {
  GroupPoint r;
  if (EC_POINT_add(group(), r.point_.get(), point_.get(), o.point_.get(),
                   bn_ctx()) != 1)
    fail("EC_POINT_add");
  return r;
}

GroupPoint GroupPoint::operator-() const {
  GroupPoint r(*this);
  if (EC_POINT_invert(group(), r.point_.get(), bn_ctx()) != 1)
    fail("EC_POINT_invert");
  return r;
}

bool GroupPoint::operator==(const GroupPoint& o) const {
  int c = EC_POINT_cmp(group(), point_.get(), o.point_.get(), bn_ctx());
  if (c < 0) fail("EC_POINT_cmp");
  return c == 0;
}

GroupPoint scalar_mul(const GroupPoint& point, const Scalar& s) {
  auto k = bn_from(s.bytes());
  BN_set_flags(k.get(), BN_FLG_CONSTTIME);
  GroupPoint r(new_point());
  if (EC_POINT_mul(group(), r.point_.get(), nullptr, point.point_.get(),
                   k.get(), bn_ctx()) != 1)
    fail("EC_POINT_mul");
  return r;
}

GroupPoint base_mul(const Scalar& s) {
  auto k = bn_from(s.bytes());
  BN_set_flags(k.get(), BN_FLG_CONSTTIME);
  GroupPoint r(new_point());
  if (EC_POINT_mul(group(), r.point_.get(), k.get(), nullptr, nullptr,
                   bn_ctx()) != 1)
    fail("EC_POINT_mul");
  return r;
}

GroupPoint msm2(const Scalar& m, const Scalar& gamma, const GroupPoint& a) {
  auto bm = bn_from(m.bytes());
  auto bg = bn_from(gamma.bytes());
  GroupPoint r(new_point());
  if (EC_POINT_mul(group(), r.point_.get(), bm.get(), a.point_.get(), bg.get(),
                   bn_ctx()) != 1)
    fail("EC_POINT_mul");
  return r;
}

}  // namespace bephap
