#include "kosc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace kosc
{

SymTridiagonal::SymTridiagonal(RealVector d, RealVector e) : diag(std::move(d)), offdiag(std::move(e))
{
    if (diag.size() == 0)
        throw std::invalid_argument("SymTridiagonal: empty diagonal");
    if (offdiag.size() != diag.size() - 1)
        throw std::invalid_argument("SymTridiagonal: off-diagonal length must be " + std::to_string(diag.size() - 1) +
                                    ", got " + std::to_string(offdiag.size()));
}

RealMatrix SymTridiagonal::dense() const
{
    const auto m = size();
    RealMatrix out = RealMatrix::Zero(m, m);
    out.diagonal() = diag;
    for (Eigen::Index i = 0; i + 1 < m; ++i)
    {
        out(i, i + 1) = offdiag[i];
        out(i + 1, i) = offdiag[i];
    }
    return out;
}

namespace
{

void require_finite(const RealVector& v, const char* what)
{
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i]))
            throw std::invalid_argument(std::string("eigh_tridiagonal: non-finite ") + what + " entry at index " +
                                        std::to_string(i));
}

constexpr int max_ql_sweeps = 60;

} // namespace

SpectralData eigh_tridiagonal(const SymTridiagonal& t)
{
    const Eigen::Index n = t.size();
    if (n == 0)
        throw std::invalid_argument("eigh_tridiagonal: empty matrix");
    if (t.offdiag.size() != n - 1)
        throw std::invalid_argument("eigh_tridiagonal: inconsistent off-diagonal length");
    require_finite(t.diag, "diagonal");
    require_finite(t.offdiag, "off-diagonal");

    RealVector d = t.diag;
    RealVector e = RealVector::Zero(n);
    e.head(n - 1) = t.offdiag;
    RealMatrix z = RealMatrix::Identity(n, n);

    const double eps = std::numeric_limits<double>::epsilon();

    for (Eigen::Index l = 0; l < n; ++l)
    {
        int           iter = 0;
        Eigen::Index  m    = l;
        do
        {
            for (m = l; m < n - 1; ++m)
            {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd)
                    break;
            }
            if (m == l)
                break;
            if (iter++ == max_ql_sweeps)
                throw std::runtime_error("eigh_tridiagonal: no convergence for eigenvalue " + std::to_string(l));

            // Wilkinson shift from the leading 2x2 block
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g        = d[m] - d[l] + e[l] / (g + std::copysign(r, g));

            double s = 1.0, c = 1.0, p = 0.0;
            bool   deflated = false;
            for (Eigen::Index i = m - 1; i >= l; --i)
            {
                const double f = s * e[i];
                const double b = c * e[i];
                r              = std::hypot(f, g);
                e[i + 1]       = r;
                if (r == 0.0)
                {
                    d[i + 1] -= p;
                    e[m]     = 0.0;
                    deflated = true;
                    break;
                }
                s        = f / r;
                c        = g / r;
                g        = d[i + 1] - p;
                r        = (d[i] - g) * s + 2.0 * c * b;
                p        = s * r;
                d[i + 1] = g + p;
                g        = c * r - b;
                for (Eigen::Index k = 0; k < n; ++k)
                {
                    const double zk1 = z(k, i + 1);
                    z(k, i + 1)      = s * z(k, i) + c * zk1;
                    z(k, i)          = c * z(k, i) - s * zk1;
                }
            }
            if (deflated)
                continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        } while (m != l);
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return d[a] < d[b]; });

    SpectralData out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k)
    {
        const auto src       = order[static_cast<std::size_t>(k)];
        out.eigenvalues[k]   = d[src];
        auto col             = out.eigenvectors.col(k);
        col                  = z.col(src);
        col.normalize();
        for (Eigen::Index i = 0; i < n; ++i)
        {
            if (col[i] != 0.0)
            {
                if (col[i] < 0.0)
                    col = -col;
                break;
            }
        }
    }
    return out;
}

ComplexMatrix expm_skew_hermitian(const ComplexMatrix& g)
{
    if (g.rows() != g.cols())
        throw std::invalid_argument("expm_skew_hermitian: matrix must be square");
    const double scale = max_abs(g);
    const double skew  = max_abs(ComplexMatrix(g + g.adjoint()));
    if (!(skew <= 1e-10 * scale))
        throw std::invalid_argument("expm_skew_hermitian: matrix is not skew-Hermitian (max |G + G^H| = " +
                                    std::to_string(skew) + ")");
    if (g.rows() == 0 || scale == 0.0)
        return ComplexMatrix::Identity(g.rows(), g.cols());

    // iG is Hermitian; symmetrize away the rounding-level anti-Hermitian part.
    const ComplexMatrix h = complex_t(0.0, 0.5) * (g - g.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("expm_skew_hermitian: Hermitian eigensolver failed");

    const RealVector&    lambda = solver.eigenvalues();
    const ComplexMatrix& v      = solver.eigenvectors();
    ComplexVector phases(lambda.size());
    for (Eigen::Index k = 0; k < lambda.size(); ++k)
        phases[k] = std::polar(1.0, -lambda[k]);
    return v * phases.asDiagonal() * v.adjoint();
}

RealVector eigvalsh(const ComplexMatrix& h)
{
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigvalsh: Hermitian eigensolver failed");
    return solver.eigenvalues();
}

double max_abs(const ComplexMatrix& m)
{
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs(const RealMatrix& m)
{
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& m)
{
    return max_abs(ComplexMatrix(m - m.adjoint()));
}

double unitarity_defect(const ComplexMatrix& u)
{
    return max_abs(ComplexMatrix(u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols())));
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b)
{
    return a * b - b * a;
}

} // namespace kosc
