#include "kosc/as_oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kosc
{

ASGrid ASGrid::make(const OscillatorParams& params)
{
    const int    N = params.N();
    const double p = params.p();

    ASGrid g;
    g.h = std::sqrt(2.0 * N * p * params.q());
    g.offsets.resize(params.dim());
    g.nodes.resize(params.dim());
    for (int j = 0; j <= N; ++j)
    {
        g.offsets[j] = j - p * N;
        g.nodes[j]   = g.h * g.offsets[j];
    }
    return g;
}

double as_alpha(double xi_over_h, const OscillatorParams& params)
{
    const int    N        = params.N();
    const double p        = params.p();
    const double radicand = (params.q() * N - xi_over_h) * (p * N + 1.0 + xi_over_h);
    // j - pN evaluated in floating point leaves the top-node radicand at rounding level
    const double tolerance = 1e-9 * (N + 1.0) * (N + 1.0);
    if (radicand < -tolerance)
        throw std::domain_error("as_alpha: negative radicand " + std::to_string(radicand) + " at xi/h = " +
                                std::to_string(xi_over_h));
    return radicand <= 0.0 ? 0.0 : std::sqrt(radicand);
}

RealMatrix krawtchouk_functions(const OscillatorParams& params)
{
    const int  dim   = params.dim();
    const auto table = renormalized_table(params, lattice(params));

    RealMatrix psi(dim, dim);
    for (int n = 0; n < dim; ++n)
    {
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        for (int j = 0; j < dim; ++j)
            psi(n, j) = sign * std::sqrt(weight(j, params)) * table.values(n, j);
    }
    return psi;
}

namespace
{

SymTridiagonal h_as_tridiagonal(const OscillatorParams& params)
{
    const int    N    = params.N();
    const double p    = params.p();
    const double root = std::sqrt(p * params.q());
    const auto   grid = ASGrid::make(params);

    RealVector diag(N + 1), off(N);
    for (int j = 0; j <= N; ++j)
        diag[j] = 2.0 * p * params.q() * N + 0.5 + (1.0 - 2.0 * p) * grid.offsets[j];
    for (int j = 0; j < N; ++j)
        off[j] = -root * as_alpha(grid.offsets[j], params);

    // closure at the top node: no upward shift out of the grid
    if (as_alpha(grid.offsets[N], params) != 0.0)
        throw std::logic_error("build_h_as: alpha does not vanish at the top node");
    return {std::move(diag), std::move(off)};
}

} // namespace

OperatorMatrix build_h_as(const OscillatorParams& params)
{
    const auto t = h_as_tridiagonal(params);
    return OperatorMatrix(t.dense().cast<complex_t>(), true);
}

ASLadder build_as_ladder(const OscillatorParams& params)
{
    const int    N    = params.N();
    const int    dim  = params.dim();
    const double p    = params.p();
    const double q    = params.q();
    const double root = std::sqrt(p * q);
    const auto   grid = ASGrid::make(params);

    RealMatrix up   = RealMatrix::Zero(dim, dim);
    RealMatrix down = RealMatrix::Zero(dim, dim);
    for (int j = 0; j <= N; ++j)
    {
        const double d = root * ((2.0 * p - 1.0) * N + 2.0 * grid.offsets[j]);
        up(j, j)       = d;
        down(j, j)     = d;
    }
    for (int j = 0; j < N; ++j)
    {
        const double a = as_alpha(grid.offsets[j], params);
        // (A+ f)_j = (1-p) alpha_{j-1} f_{j-1} - p alpha_j f_{j+1} + ...
        up(j + 1, j) = q * a;
        up(j, j + 1) = -p * a;
        // (A- f)_j = (1-p) alpha_j f_{j+1} - p alpha_{j-1} f_{j-1} + ...
        down(j, j + 1) = q * a;
        down(j + 1, j) = -p * a;
    }

    ComplexMatrix plus  = up.cast<complex_t>();
    ComplexMatrix minus = down.cast<complex_t>();
    ComplexMatrix zero  = 0.5 * commutator(plus, minus);
    zero                = 0.5 * (zero + zero.adjoint()).eval();
    return {OperatorMatrix(std::move(plus), false), OperatorMatrix(std::move(minus), false),
            OperatorMatrix(std::move(zero), true)};
}

OperatorMatrix build_intertwiner(const OscillatorParams& params)
{
    const auto spectral = eigh_tridiagonal(h_as_tridiagonal(params));
    const auto psi      = krawtchouk_functions(params);

    RealMatrix t = spectral.eigenvectors;
    for (int n = 0; n < params.dim(); ++n)
        if (t.col(n).dot(psi.row(n).transpose()) < 0.0)
            t.col(n) = -t.col(n);
    return OperatorMatrix(t.cast<complex_t>(), false);
}

double RelationReport::max_residual() const
{
    return std::max({unitarity, diagonal, matrix_relation, scalar_relation, closed_form_match});
}

RelationReport relation_check(const OscillatorParams& params)
{
    const int  dim = params.dim();
    const auto t   = build_intertwiner(params).entries();
    const auto h   = build_h_as(params).entries();
    const auto ht  = build_tilde_operators(params).h.entries();
    const auto psi = krawtchouk_functions(params);

    // T is unitary, so T^-1 = T^H
    const ComplexMatrix h_as_tilde = t.adjoint() * h * t;
    const ComplexMatrix identity   = ComplexMatrix::Identity(dim, dim);

    RelationReport r;
    r.unitarity = unitarity_defect(t);

    ComplexMatrix expected = ComplexMatrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n)
        expected(n, n) = n + 0.5;
    r.diagonal    = max_abs(ComplexMatrix(h_as_tilde - expected));
    r.as_spectrum = h_as_tilde.diagonal().real();

    const ComplexMatrix shifted = h_as_tilde - 0.5 * identity;
    r.matrix_relation           = max_abs(ComplexMatrix(ht + shifted * shifted - double(params.N()) * h_as_tilde));

    for (int n = 0; n < dim; ++n)
    {
        const double lambda = n + 0.5;
        const double rhs    = -(lambda - 0.5) * (lambda - 0.5) + params.N() * lambda;
        r.scalar_relation   = std::max(r.scalar_relation, std::abs(hamiltonian_eigenvalue(n, params) - rhs));
    }

    r.closed_form_match = max_abs(RealMatrix(t.real() - psi.transpose()));
    return r;
}

} // namespace kosc
