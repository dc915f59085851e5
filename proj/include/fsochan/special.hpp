#pragma once

namespace fsochan::special {

/// Exponentially scaled modified Bessel functions e^{-|x|} I_0(x) and
/// e^{-|x|} I_1(x). Power series below x = 30, Hankel asymptotic expansion
/// above; relative error stays near 1e-15 on the whole real line.
double bessel_i0e(double x);
double bessel_i1e(double x);

}  // namespace fsochan::special
