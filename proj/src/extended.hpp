#ifndef KOSC_SRC_EXTENDED_HPP
#define KOSC_SRC_EXTENDED_HPP

// binary128 helpers shared by the polynomial evaluators. Internal to the library.

#include <cmath>

namespace kosc::detail
{

using quad = __float128;

inline quad to_quad(double x) { return static_cast<quad>(x); }
inline double to_double(quad x) { return static_cast<double>(x); }

inline quad abs_q(quad x) { return x < 0 ? -x : x; }

// Two Newton steps from the double estimate reach full binary128 accuracy.
inline quad sqrt_q(quad x)
{
    if (x <= 0)
        return 0;
    quad s = std::sqrt(to_double(x));
    s      = (s + x / s) / 2;
    s      = (s + x / s) / 2;
    return s;
}

inline quad pow_q(quad base, int k)
{
    quad out = 1;
    for (int i = 0; i < k; ++i)
        out *= base;
    return out;
}

inline quad binomial_q(int n, int k)
{
    quad out = 1;
    for (int i = 1; i <= k; ++i)
        out = out * (n - k + i) / i;
    return out;
}

} // namespace kosc::detail

#endif // KOSC_SRC_EXTENDED_HPP
