#pragma once

#include "pointnls/types.hpp"

namespace pointnls {

/// Faddeeva function w(z) = exp(-z^2) erfc(-i z).
///
/// Closed upper half plane: Weideman's rational expansion (48 terms) for |z| < 8 and
/// the Laplace continued fraction beyond. The lower half plane uses the reflection
/// w(z) = 2 exp(-z^2) - w(-z), which overflows for large |Im z|. Relative accuracy in
/// the upper half plane is about 1e-14.
cplx faddeeva(cplx z);

/// Complementary error function of a complex argument, erfc(z) = exp(-z^2) w(iz).
cplx erfc_complex(cplx z);

}  // namespace pointnls
