#include "kosc/polynomials.hpp"

#include "extended.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kosc
{

using detail::quad;

OscillatorParams::OscillatorParams(double p, int n) : p_(p), n_(n)
{
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("p must lie in (0,1)");
    if (n < 1)
        throw std::invalid_argument("N must be at least 1");
}

RecurrenceCoefficients recurrence_coefficients(const OscillatorParams& params)
{
    const int    N = params.N();
    const double p = params.p();
    const double q = params.q();

    RecurrenceCoefficients rc;
    rc.a.resize(N + 1);
    rc.b.resize(N);
    for (int n = 0; n <= N; ++n)
        rc.a[n] = p * (N - n) + n * q;
    for (int n = 0; n < N; ++n)
        rc.b[n] = -std::sqrt(p * q * (n + 1) * (N - n));
    return rc;
}

std::string_view to_string(PolynomialFamily family)
{
    switch (family)
    {
    case PolynomialFamily::plain: return "plain";
    case PolynomialFamily::renormalized: return "renormalized";
    case PolynomialFamily::auxiliary: return "auxiliary";
    case PolynomialFamily::psi: return "psi";
    }
    return "unknown";
}

RealVector lattice(const OscillatorParams& params)
{
    return RealVector::LinSpaced(params.dim(), 0.0, static_cast<double>(params.N()));
}

double pochhammer(double a, int k)
{
    if (k < 0)
        throw std::invalid_argument("pochhammer: k must be nonnegative");
    double out = 1.0;
    for (int i = 0; i < k; ++i)
        out *= a + i;
    return out;
}

namespace
{

void require_degree(int n, const OscillatorParams& params, const char* where)
{
    if (n < 0 || n > params.N())
        throw std::invalid_argument(std::string(where) + ": degree " + std::to_string(n) + " outside 0.." +
                                    std::to_string(params.N()));
}

// Terminating 2F1(-n, -x; -N; 1/p), summed term by term.
quad hypergeometric_q(int n, quad x, quad p, int N)
{
    const quad inv_p = quad(1) / p;
    quad       sum   = 0;
    quad       term  = 1;
    for (int k = 0; k <= n; ++k)
    {
        sum += term;
        if (k == n)
            break;
        // k < n <= N keeps (-N + k) nonzero
        term = term * quad(k - n) * (quad(k) - x) / (quad(k + 1) * quad(k - N)) * inv_p;
    }
    return sum;
}

// C(N, n) (p / (1 - p))^n = rho(n) / rho(0); makes K~_0 = 1 and the family orthonormal
// under rho(x).
quad renormalization_q(int n, quad p, int N)
{
    return detail::binomial_q(N, n) * detail::pow_q(p / (quad(1) - p), n);
}

quad renormalization_q(int n, const OscillatorParams& params)
{
    return renormalization_q(n, detail::to_quad(params.p()), params.N());
}

// The direct sum cancels badly once p > 1/2 or n + x > N. Two exact symmetries move
// every evaluation out of that region:
//   K~_n(x; p) = (-1)^n K~_n(N - x; 1 - p)                                  (any real x)
//   K~_n(x; p) = (-1)^{n+x+N} (p/q)^{(N-2x)/2} K~_{N-n}(N - x; p)           (integer x)
quad renormalized_q(int n, quad x, const OscillatorParams& params)
{
    const int N    = params.N();
    quad      p    = detail::to_quad(params.p());
    quad      sign = 1;
    if (params.p() > 0.5)
    {
        p = quad(1) - p;
        x = quad(N) - x;
        if (n % 2)
            sign = -sign;
    }

    const double xd = detail::to_double(x);
    if (xd == std::round(xd) && xd >= 0 && xd <= N && n + static_cast<int>(xd) > N)
    {
        const int  xi    = static_cast<int>(xd);
        const quad ratio = p / (quad(1) - p);
        const int  e     = N - 2 * xi;
        const quad scale = e >= 0 ? detail::sqrt_q(detail::pow_q(ratio, e))
                                  : quad(1) / detail::sqrt_q(detail::pow_q(ratio, -e));
        if ((n + xi + N) % 2)
            sign = -sign;
        const int m = N - n;
        return sign * scale * detail::sqrt_q(renormalization_q(m, p, N)) * hypergeometric_q(m, quad(N - xi), p, N);
    }
    return sign * detail::sqrt_q(renormalization_q(n, p, N)) * hypergeometric_q(n, x, p, N);
}

quad krawtchouk_q(int n, quad x, const OscillatorParams& params)
{
    if (n == 0)
        return 1;
    return renormalized_q(n, x, params) / detail::sqrt_q(renormalization_q(n, params));
}

quad weight_q(int n, const OscillatorParams& params)
{
    const int N = params.N();
    return detail::binomial_q(N, n) * detail::pow_q(detail::to_quad(params.p()), n) *
           detail::pow_q(quad(1) - detail::to_quad(params.p()), N - n);
}

} // namespace

double krawtchouk(int n, double x, const OscillatorParams& params)
{
    require_degree(n, params, "krawtchouk");
    return detail::to_double(krawtchouk_q(n, detail::to_quad(x), params));
}

double weight(int n, const OscillatorParams& params)
{
    require_degree(n, params, "weight");
    return detail::to_double(weight_q(n, params));
}

PolynomialTable krawtchouk_table(const OscillatorParams& params, const RealVector& points)
{
    PolynomialTable t{PolynomialFamily::plain, points, RealMatrix(params.dim(), points.size())};
    for (int n = 0; n <= params.N(); ++n)
        for (Eigen::Index i = 0; i < points.size(); ++i)
            t.values(n, i) = detail::to_double(krawtchouk_q(n, detail::to_quad(points[i]), params));
    return t;
}

PolynomialTable renormalized_table(const OscillatorParams& params, const RealVector& points)
{
    PolynomialTable t{PolynomialFamily::renormalized, points, RealMatrix(params.dim(), points.size())};
    for (int n = 0; n <= params.N(); ++n)
    {
        for (Eigen::Index i = 0; i < points.size(); ++i)
            t.values(n, i) = detail::to_double(renormalized_q(n, detail::to_quad(points[i]), params));
    }
    return t;
}

PolynomialTable recurrence_table(const OscillatorParams& params, const RealVector& points)
{
    const int  N = params.N();
    const quad p = detail::to_quad(params.p());
    const quad q = quad(1) - p;

    std::vector<quad> a(N + 1), b(N);
    for (int n = 0; n <= N; ++n)
        a[n] = p * (N - n) + quad(n) * q;
    for (int n = 0; n < N; ++n)
        b[n] = -detail::sqrt_q(p * q * quad(n + 1) * quad(N - n));

    PolynomialTable t{PolynomialFamily::renormalized, points, RealMatrix(params.dim(), points.size())};
    std::vector<quad> col(N + 1);
    for (Eigen::Index i = 0; i < points.size(); ++i)
    {
        const quad x = detail::to_quad(points[i]);
        col[0]       = 1;
        for (int n = 0; n < N; ++n)
        {
            const quad down = n > 0 ? b[n - 1] * col[n - 1] : quad(0);
            col[n + 1]      = ((x - a[n]) * col[n] - down) / b[n];
        }
        for (int n = 0; n <= N; ++n)
            t.values(n, i) = detail::to_double(col[n]);
    }
    return t;
}

double difference_residual(int n, int x, const OscillatorParams& params)
{
    require_degree(n, params, "difference_residual");
    const int N = params.N();
    if (x < 0 || x > N)
        throw std::invalid_argument("difference_residual: x outside 0..N");
    const double p = params.p();
    const double q = params.q();

    const auto ktilde = [&](int at) {
        return detail::to_double(renormalized_q(n, quad(at), params));
    };

    const double up   = p * (N - x);
    const double down = x * q;
    // written with differences so that a constant row gives exactly zero
    const double here = ktilde(x);
    double       res  = n * here;
    if (x < N)
        res += up * (ktilde(x + 1) - here);
    if (x > 0)
        res += down * (ktilde(x - 1) - here);
    return res;
}

double max_difference_residual(const OscillatorParams& params)
{
    const int    N     = params.N();
    const auto   table = renormalized_table(params, lattice(params));
    const double p     = params.p();
    const double q     = params.q();

    double worst = 0.0;
    for (int n = 0; n <= N; ++n)
    {
        const auto   row   = table.values.row(n);
        const double scale = row.cwiseAbs().maxCoeff();
        for (int x = 0; x <= N; ++x)
        {
            const double up   = p * (N - x);
            const double down = x * q;
            double       res  = n * row[x];
            if (x < N)
                res += up * (row[x + 1] - row[x]);
            if (x > 0)
                res += down * (row[x - 1] - row[x]);
            worst = std::max(worst, std::abs(res) / scale);
        }
    }
    return worst;
}

GramPair orthogonality_gram(const OscillatorParams& params)
{
    const int  dim   = params.dim();
    const auto table = renormalized_table(params, lattice(params));

    // U(n, x) = sqrt(rho(x)) K~_n(x) is orthogonal; both relations are statements about it.
    RealMatrix u = table.values;
    for (int x = 0; x < dim; ++x)
        u.col(x) *= std::sqrt(weight(x, params));

    return GramPair{u * u.transpose(), u.transpose() * u};
}

PolynomialTable auxiliary_table(const OscillatorParams& params, const RealVector& points, int max_degree)
{
    if (max_degree < 0)
        throw std::invalid_argument("auxiliary_table: negative degree");
    const auto rc = recurrence_coefficients(params);
    if (max_degree > params.N())
        throw std::invalid_argument("auxiliary_table: degree " + std::to_string(max_degree) +
                                    " needs b_" + std::to_string(params.N()) +
                                    " = 0 in the denominator; use psi_table for degree N+1");

    PolynomialTable t{PolynomialFamily::auxiliary, points, RealMatrix(max_degree + 1, points.size())};
    for (Eigen::Index i = 0; i < points.size(); ++i)
    {
        const double x = points[i];
        t.values(0, i) = 1.0;
        for (int n = 0; n < max_degree; ++n)
        {
            const double down  = n > 0 ? rc.b[n - 1] * t.values(n - 1, i) : 0.0;
            t.values(n + 1, i) = (x * t.values(n, i) - down) / rc.b[n];
        }
    }
    return t;
}

PolynomialTable psi_table(const OscillatorParams& params, const RealVector& points, int max_degree)
{
    if (max_degree < 0 || max_degree > params.N() + 1)
        throw std::invalid_argument("psi_table: degree must lie in 0..N+1");
    const auto rc = recurrence_coefficients(params);

    PolynomialTable t{PolynomialFamily::psi, points, RealMatrix(max_degree + 1, points.size())};
    for (Eigen::Index i = 0; i < points.size(); ++i)
    {
        const double y = points[i];
        t.values(0, i) = 1.0;
        for (int n = 0; n < max_degree; ++n)
        {
            // monic: psi_{n+1} = y psi_n - (sqrt(2) b_{n-1})^2 psi_{n-1}
            const double down  = n > 0 ? 2.0 * rc.b[n - 1] * rc.b[n - 1] * t.values(n - 1, i) : 0.0;
            t.values(n + 1, i) = y * t.values(n, i) - down;
        }
    }
    return t;
}

double psi_normalization(int l, const OscillatorParams& params)
{
    if (l < 0 || l > params.N() + 1)
        throw std::invalid_argument("psi_normalization: index must lie in 0..N+1");
    const auto rc  = recurrence_coefficients(params);
    double     out = 1.0;
    for (int k = 0; k < l; ++k)
        out *= std::sqrt(2.0) * (k < params.N() ? rc.b[k] : 0.0);
    return out;
}

SpectralData psi_roots(const OscillatorParams& params)
{
    const auto rc = recurrence_coefficients(params);
    return eigh_tridiagonal({RealVector::Zero(params.dim()), std::sqrt(2.0) * rc.b});
}

SpectralData auxiliary_roots(const OscillatorParams& params)
{
    const auto rc = recurrence_coefficients(params);
    return eigh_tridiagonal({RealVector::Zero(params.dim()), rc.b});
}

} // namespace kosc
