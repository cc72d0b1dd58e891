#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>

#include "bephap/bytes.hpp"
#include "bephap/rng.hpp"

struct ec_point_st;

namespace bephap {

/// Domain parameters of the prime-order group (NIST P-224 / secp224r1).
struct CurveParams {
  std::string_view name;
  ByteArray<kFieldBytes> p;
  ByteArray<kFieldBytes> a;
  ByteArray<kFieldBytes> b;
  ByteArray<kFieldBytes> gx;
  ByteArray<kFieldBytes> gy;
  ByteArray<kScalarBytes> q;
  unsigned lambda_bits;
};

const CurveParams& curve_params();

/// Element of Z_q, stored as its canonical 28-byte big-endian encoding.
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Scalar&) = default;
  Scalar& operator=(const Scalar&) = default;
  ~Scalar() { secure_wipe(bytes_); }

  static Scalar from_u64(std::uint64_t v);
  /// Throws Error(WrongLength) or Error(NonCanonicalScalar).
  static Scalar from_bytes(ByteView be);
  static std::optional<Scalar> try_from_bytes(ByteView be);
  /// Interprets an arbitrary-length big-endian integer mod q.
  static Scalar reduce(ByteView be);
  static Scalar random(Rng& rng);

  const ByteArray<kScalarBytes>& bytes() const { return bytes_; }
  bool is_zero() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  /// Multiplicative inverse mod q; the zero scalar maps to zero.
  Scalar inverse() const;

  bool operator==(const Scalar& o) const { return bytes_ == o.bytes_; }
  auto operator<=>(const Scalar& o) const { return bytes_ <=> o.bytes_; }

 private:
  ByteArray<kScalarBytes> bytes_{};
};

/// Element of Z_q^*. Construction from zero is impossible.
class NonZeroScalar {
 public:
  static std::optional<NonZeroScalar> from(const Scalar& s);
  static NonZeroScalar random(Rng& rng);
  static NonZeroScalar one();

  const Scalar& value() const { return value_; }
  operator const Scalar&() const { return value_; }  // NOLINT
  const ByteArray<kScalarBytes>& bytes() const { return value_.bytes(); }

  bool operator==(const NonZeroScalar& o) const = default;

 private:
  explicit NonZeroScalar(const Scalar& s) : value_(s) {}
  Scalar value_;
};

/// A point of the curve group, including the identity O.
class GroupPoint {
 public:
  GroupPoint();  // identity
  GroupPoint(const GroupPoint& o);
  GroupPoint(GroupPoint&&) noexcept;
  GroupPoint& operator=(const GroupPoint& o);
  GroupPoint& operator=(GroupPoint&&) noexcept;
  ~GroupPoint();

  static const GroupPoint& generator();
  static std::optional<GroupPoint> from_affine(ByteView x, ByteView y);
  /// The point with the given x-coordinate and even y, if one exists.
  static std::optional<GroupPoint> from_x_even(ByteView x);
  /// SEC1 compressed form; the all-zero encoding denotes O.
  /// Throws Error(NotOnCurve).
  static GroupPoint from_compressed(ByteView enc);

  bool is_identity() const;
  /// Preconditions for the accessors below: !is_identity().
  bool has_even_y() const;
  ByteArray<kFieldBytes> x_bytes() const;
  ByteArray<kFieldBytes> y_bytes() const;

  ByteArray<kCompressedPointBytes> compressed() const;

  GroupPoint operator+(const GroupPoint& o) const;
  GroupPoint operator-() const;
  GroupPoint operator-(const GroupPoint& o) const { return *this + (-o); }
  bool operator==(const GroupPoint& o) const;

  const ec_point_st* raw() const { return point_.get(); }

 private:
  struct Deleter {
    void operator()(ec_point_st* p) const;
  };
  explicit GroupPoint(ec_point_st* owned) : point_(owned) {}
  friend GroupPoint scalar_mul(const GroupPoint&, const Scalar&);
  friend GroupPoint base_mul(const Scalar&);
  friend GroupPoint msm2(const Scalar&, const Scalar&, const GroupPoint&);

  std::unique_ptr<ec_point_st, Deleter> point_;
};

/// s·P. Constant-time in s.
GroupPoint scalar_mul(const GroupPoint& point, const Scalar& s);
/// s·G for the group generator G, using the precomputed generator table.
GroupPoint base_mul(const Scalar& s);
/// m·G + gamma·A.
GroupPoint msm2(const Scalar& m, const Scalar& gamma, const GroupPoint& a);

}  // namespace bephap
