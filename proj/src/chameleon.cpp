#include "bephap/chameleon.hpp"

#include <cassert>

namespace bephap {

ChameleonKeys ch_keygen(Rng& rng) {
  const Scalar r_star = NonZeroScalar::random(rng);
  return ch_keygen(rng, r_star);
}

ChameleonKeys ch_keygen(Rng& rng, const Scalar& r_star) {
  const NonZeroScalar x = NonZeroScalar::random(rng);
  const Scalar m_star = NonZeroScalar::random(rng);
  GroupPoint y = base_mul(x);
  // Both terms through the constant-time path; m* and r* are secret.
  GroupPoint ch = base_mul(m_star) + scalar_mul(y, r_star);
  Scalar k = m_star + r_star * x.value();
  return ChameleonKeys{
      ChameleonTrapdoor{std::move(k), x},
      ChameleonHashKey{std::move(y), std::move(ch)},
      m_star,
      r_star,
  };
}

GroupPoint ch_commit(const GroupPoint& y, const Scalar& m, const Scalar& r) {
  assert(!y.is_identity());
  return msm2(m, r, y);
}

Scalar ch_collide(const ChameleonTrapdoor& td, const NonZeroScalar& r_new) {
  return td.k - r_new.value() * td.x.value();
}

}  // namespace bephap
