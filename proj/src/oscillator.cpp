#include "kosc/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kosc
{

FockVector::FockVector(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {}

FockVector FockVector::basis(int dim, int n)
{
    if (n < 0 || n >= dim)
        throw std::invalid_argument("FockVector::basis: index out of range");
    ComplexVector v = ComplexVector::Zero(dim);
    v[n]            = 1.0;
    return FockVector(std::move(v));
}

OperatorMatrix::OperatorMatrix(ComplexMatrix entries, bool hermitian) : entries_(std::move(entries)), hermitian_(hermitian)
{
    if (entries_.rows() != entries_.cols())
        throw std::invalid_argument("OperatorMatrix: matrix must be square");
    if (hermitian_)
    {
        const double defect = hermiticity_defect(entries_);
        if (!(defect < 1e-12))
            throw std::invalid_argument("OperatorMatrix: not Hermitian (defect " + std::to_string(defect) + ")");
    }
}

CoordinateMomentum build_xp(const OscillatorParams& params)
{
    const int  dim = params.dim();
    const auto rc  = recurrence_coefficients(params);
    const complex_t i{0.0, 1.0};

    ComplexMatrix x = ComplexMatrix::Zero(dim, dim);
    ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n)
    {
        x(n, n) = rc.a[n];
        p(n, n) = rc.a[n];
    }
    // column n holds the image of |n>: b_n |n+1> and b_{n-1} |n-1>
    for (int n = 0; n + 1 < dim; ++n)
    {
        x(n + 1, n) = rc.b[n];
        x(n, n + 1) = rc.b[n];
        p(n + 1, n) = -i * rc.b[n];
        p(n, n + 1) = i * rc.b[n];
    }
    return {OperatorMatrix(std::move(x), true), OperatorMatrix(std::move(p), true)};
}

TildeOperators build_tilde_operators(const OscillatorParams& params)
{
    const auto [x, p] = build_xp(params);
    const ComplexMatrix diff = x.entries() - p.entries();
    const complex_t     i{0.0, 1.0};

    ComplexMatrix xt = diff.real().cast<complex_t>();
    ComplexMatrix pt = -i * diff.imag().cast<complex_t>();
    ComplexMatrix h  = (xt * xt + pt * pt) / (4.0 * params.p() * params.q());
    // products of Hermitian matrices are Hermitian only up to rounding
    h = 0.5 * (h + h.adjoint()).eval();
    return {OperatorMatrix(std::move(xt), true), OperatorMatrix(std::move(pt), true), OperatorMatrix(std::move(h), true)};
}

LadderOperators build_ladder(const OscillatorParams& params)
{
    const int N   = params.N();
    const int dim = params.dim();

    ComplexMatrix up  = ComplexMatrix::Zero(dim, dim);
    ComplexMatrix num = ComplexMatrix::Zero(dim, dim);
    for (int n = 0; n < N; ++n)
        up(n + 1, n) = -std::sqrt(static_cast<double>((n + 1) * (N - n)));
    for (int n = 0; n < dim; ++n)
        num(n, n) = n;
    ComplexMatrix down = up.adjoint();
    return {OperatorMatrix(std::move(up), false), OperatorMatrix(std::move(down), false),
            OperatorMatrix(std::move(num), true)};
}

LadderOperators ladder_from_tilde(const OscillatorParams& params)
{
    const auto      t = build_tilde_operators(params);
    const complex_t i{0.0, 1.0};
    const double    s = 2.0 * std::sqrt(params.p() * params.q());

    ComplexMatrix num = ComplexMatrix::Zero(params.dim(), params.dim());
    for (int n = 0; n < params.dim(); ++n)
        num(n, n) = n;
    return {OperatorMatrix((t.x.entries() + i * t.p.entries()) / s, false),
            OperatorMatrix((t.x.entries() - i * t.p.entries()) / s, false), OperatorMatrix(std::move(num), true)};
}

double hamiltonian_eigenvalue(int n, const OscillatorParams& params)
{
    const double N = params.N();
    return N * (n + 0.5) - static_cast<double>(n) * n;
}

double SpectrumComparison::max_deviation() const
{
    RealVector sorted = formula;
    std::sort(sorted.begin(), sorted.end());
    return (computed - sorted).cwiseAbs().maxCoeff();
}

SpectrumComparison spectrum_check(const OscillatorParams& params)
{
    const auto t = build_tilde_operators(params);

    SpectrumComparison out;
    out.computed = eigvalsh(t.h.entries());
    out.formula.resize(params.dim());
    for (int n = 0; n < params.dim(); ++n)
        out.formula[n] = hamiltonian_eigenvalue(n, params);
    out.diagonal = t.h.entries().diagonal().real();

    ComplexMatrix off = t.h.entries();
    off.diagonal().setZero();
    out.off_diagonal = max_abs(off);
    return out;
}

double CommutatorComparison::max_deviation() const
{
    return std::max(off_diagonal, (diagonal - expected).cwiseAbs().maxCoeff());
}

CommutatorComparison commutator_check(const OscillatorParams& params)
{
    const auto          ladder = build_ladder(params);
    const ComplexMatrix c      = commutator(ladder.lowering.entries(), ladder.raising.entries());

    CommutatorComparison out;
    out.diagonal = c.diagonal().real();
    out.expected.resize(params.dim());
    out.printed_formula.resize(params.dim());
    for (int n = 0; n < params.dim(); ++n)
    {
        out.expected[n]        = params.N() - 2.0 * n;
        out.printed_formula[n] = (params.N() - 1.0) - 2.0 * n;
    }
    ComplexMatrix off = c;
    off.diagonal().setZero();
    out.off_diagonal = max_abs(off);
    return out;
}

} // namespace kosc
