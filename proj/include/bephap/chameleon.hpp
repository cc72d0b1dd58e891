#pragma once

#include "bephap/curve.hpp"
#include "bephap/rng.hpp"

namespace bephap {

/// Trapdoor (k, x) with k = m* + r*·x mod q.
struct ChameleonTrapdoor {
  Scalar k;
  NonZeroScalar x;
};

/// Public half: Y = x·P and the commitment CH = m*·P + r*·Y.
struct ChameleonHashKey {
  GroupPoint y;
  GroupPoint ch;
};

struct ChameleonKeys {
  ChameleonTrapdoor trapdoor;
  ChameleonHashKey key;
  Scalar m_star;
  Scalar r_star;
};

/// Draws x and m* from `rng`; r* is random as well.
ChameleonKeys ch_keygen(Rng& rng);
/// Same, with a caller-supplied r* (the registration flow derives it with h0).
ChameleonKeys ch_keygen(Rng& rng, const Scalar& r_star);

/// CH_Y(m, r) = m·P + r·Y. Precondition: Y is not the identity.
GroupPoint ch_commit(const GroupPoint& y, const Scalar& m, const Scalar& r);

/// m' = k - r'·x, so that ch_commit(Y, m', r') equals CH.
Scalar ch_collide(const ChameleonTrapdoor& td, const NonZeroScalar& r_new);

}  // namespace bephap
