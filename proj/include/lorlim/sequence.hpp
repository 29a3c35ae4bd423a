#pragma once

#include <span>

namespace lorlim {

/// limsup of a finite sequence, estimated as the maximum over its tail half.
double finite_limsup(std::span<const double> values);

/// Richardson extrapolation of v_k -> lim for k -> infinity.
///
/// The convergence order p in v = lim + c k^-p + ... is detected from the
/// last three terms of a geometric index ladder and snapped to a multiple of
/// 1/2; a Neville table in h = k^-p over up to six tail terms then gives the
/// k -> infinity value. Degenerate (constant) tails return the last value.
double extrapolate_limit(std::span<const double> indices, std::span<const double> values);

}  // namespace lorlim
