// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "exactnn/network.hpp"

namespace exactnn {

/// One member of the spike witness family: a (1, 3, 1) ReLU hat of height
/// 2^(-k) and half-width 2^(-2k-1) centered at 1/2. Sup norms shrink while
/// the slopes 2^(k+1) -- and with them every representation's weights --
/// blow up.
struct SpikeFamilyMember {
  int k = 0;
  Network network;
  Rational exact_sup;  // 2^(-k)
  Rational exact_lip;  // 2^(k+1)
};

/// Builds the k-th member from three ReLU units with slopes +s, -2s, +s at
/// the breakpoints 1/2 - w, 1/2, 1/2 + w, where s = height/half-width.
SpikeFamilyMember build_spike(int k);

/// Lower bound every network with this architecture and activation that
/// realizes the same function must obey: its layerwise max-entry product
/// is at least exact_lip / (Lip(sigma)^(L-1) * prod sqrt(N_l N_{l-1})_ub),
/// and for depth 2 the scaling norm is at least the root of that product
/// (rounded down to stay a certified bound).
Rational scaling_norm_lower_bound(const SpikeFamilyMember& member);

}  // namespace exactnn
