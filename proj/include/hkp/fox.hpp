#pragma once

#include "hkp/group_ring.hpp"
#include "hkp/presentation.hpp"

namespace hkp {

/// Free derivative ∂w/∂g, determined by ∂g/∂g = 1, ∂g⁻¹/∂g = −g⁻¹,
/// ∂h^{±1}/∂g = 0 for h ≠ g and ∂(uv)/∂g = ∂u/∂g + u·∂v/∂g.
/// Throws InputError when `generator` is outside [0, generator_count).
GroupRingElement fox_derivative(const Word& w, int generator, int generator_count);

/// Jacobian (∂rⱼ/∂gᵢ): one row per relator, one column per generator.
/// Requires at least one relator.
GroupRingMatrix fox_jacobian(const Presentation& p);

/// Σ_g (∂w/∂g)(g − 1), which equals w − 1 for every word.
GroupRingElement fox_expansion(const Word& w, int generator_count);

}  // namespace hkp
