#ifndef KOSC_POLYNOMIALS_HPP
#define KOSC_POLYNOMIALS_HPP

#include "kosc/numerics.hpp"

#include <string_view>

namespace kosc
{

/// The pair (p, N) that fixes the whole model. The state space has dimension N + 1.
class OscillatorParams
{
public:
    /// Throws std::invalid_argument unless 0 < p < 1 and N >= 1.
    OscillatorParams(double p, int n);

    double p() const { return p_; }
    double q() const { return 1.0 - p_; }
    int    N() const { return n_; }
    int    dim() const { return n_ + 1; }

    friend bool operator==(const OscillatorParams&, const OscillatorParams&) = default;

private:
    double p_;
    int    n_;
};

/// Symmetric Jacobi matrix of the renormalized family:
///   a_n = p(N - n) + n(1 - p),            n = 0..N
///   b_n = -sqrt(p(1 - p)(n + 1)(N - n)),  n = 0..N-1
struct RecurrenceCoefficients
{
    RealVector a;
    RealVector b;

    SymTridiagonal jacobi() const { return {a, b}; }
};

RecurrenceCoefficients recurrence_coefficients(const OscillatorParams& params);

enum class PolynomialFamily
{
    plain,        // K_n
    renormalized, // sqrt(rho(n) / rho(0)) K_n
    auxiliary,    // zero-diagonal family, K~(0)_0 = 1
    psi           // monic rescaling of the auxiliary family
};

std::string_view to_string(PolynomialFamily family);

/// values(n, i) is the degree-n member evaluated at points[i].
struct PolynomialTable
{
    PolynomialFamily family;
    RealVector       points;
    RealMatrix       values;
};

/// The integer lattice 0..N.
RealVector lattice(const OscillatorParams& params);

/// (a)_k = a (a + 1) ... (a + k - 1), (a)_0 = 1.
double pochhammer(double a, int k);

/// Terminating hypergeometric sum 2F1(-n, -x; -N; 1/p).
///
/// Accumulated in binary128: the alternating terms cancel by up to thirty
/// decimal digits near N = 64, far beyond what double or compensated double
/// summation can absorb.
double krawtchouk(int n, double x, const OscillatorParams& params);

/// Binomial weight C(N, n) p^n (1 - p)^(N - n).
double weight(int n, const OscillatorParams& params);

PolynomialTable krawtchouk_table(const OscillatorParams& params, const RealVector& points);

/// K~_n(x) = sqrt(C(N,n) (p/(1-p))^n) K_n(x) = sqrt(rho(n) / rho(0)) K_n(x) from the direct
/// hypergeometric sum. K~_0 = 1 and the rows are orthonormal under rho(x).
PolynomialTable renormalized_table(const OscillatorParams& params, const RealVector& points);

/// The same family generated by the symmetric three-term recurrence
///   x K~_n = b_n K~_{n+1} + a_n K~_n + b_{n-1} K~_{n-1},  K~_0 = 1.
/// Runs in binary128 with rational-exact a_n and Newton-refined b_n; the forward
/// recurrence amplifies rounding by ~1e13 at N = 32, p = 0.1.
PolynomialTable recurrence_table(const OscillatorParams& params, const RealVector& points);

/// n K~_n(x) + p(N - x) K~_n(x + 1) - [p(N - x) + x(1 - p)] K~_n(x) + x(1 - p) K~_n(x - 1)
/// Terms whose coefficient vanishes (x = 0, x = N) are dropped.
double difference_residual(int n, int x, const OscillatorParams& params);

/// max over (n, x) of |difference_residual| / max_x |K~_n(x)|.
double max_difference_residual(const OscillatorParams& params);

struct GramPair
{
    RealMatrix gram; // sum_x rho(x) K~_m(x) K~_n(x)
    RealMatrix dual; // sqrt(rho(x) rho(y)) sum_n K~_n(x) K~_n(y)
};

GramPair orthogonality_gram(const OscillatorParams& params);

/// Zero-diagonal family x K_n = b_n K_{n+1} + b_{n-1} K_{n-1}, K_0 = 1, degrees 0..max_degree.
/// max_degree = N + 1 would divide by b_N = 0 and is rejected; use psi_table for that degree.
PolynomialTable auxiliary_table(const OscillatorParams& params, const RealVector& points, int max_degree);

/// psi~_n(y) = prod_{k<n}(sqrt(2) b_k) * K~(0)_n(y / sqrt(2)); monic, degrees 0..max_degree <= N + 1.
PolynomialTable psi_table(const OscillatorParams& params, const RealVector& points, int max_degree);

/// prod_{k=0}^{l-1} sqrt(2) b_k, with the empty product equal to 1.
double psi_normalization(int l, const OscillatorParams& params);

/// Roots of psi~_{N+1}: spectrum of the zero-diagonal Jacobi matrix with off-diagonal sqrt(2) b_n.
SpectralData psi_roots(const OscillatorParams& params);

/// Roots of the degree-(N+1) auxiliary polynomial: same matrix without the sqrt(2).
SpectralData auxiliary_roots(const OscillatorParams& params);

} // namespace kosc

#endif // KOSC_POLYNOMIALS_HPP
