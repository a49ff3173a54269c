#include "kosc/as_oscillator.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace kosc;

namespace
{

// H_AS assembled directly from the difference-operator definition on the grid delta basis.
RealMatrix h_as_reference(const OscillatorParams& params)
{
    const int    N = params.N();
    const double p = params.p(), q = params.q();
    RealMatrix   h = RealMatrix::Zero(N + 1, N + 1);
    for (int j = 0; j <= N; ++j)
    {
        h(j, j) = 2 * p * q * N + 0.5 + (1 - 2 * p) * (j - p * N);
        if (j < N)
        {
            const double alpha = std::sqrt((N - j) * (j + 1.0)); // alpha(xi_j)
            h(j, j + 1)        = -std::sqrt(p * q) * alpha;
            h(j + 1, j)        = -std::sqrt(p * q) * alpha;
        }
    }
    return h;
}

} // namespace

TEST(Grid, UniformNodes)
{
    for (double p : fixture::sweep_p())
        for (int N : fixture::sweep_n(64))
        {
            const OscillatorParams params(p, N);
            const auto             g = ASGrid::make(params);
            EXPECT_NEAR(g.h, std::sqrt(2.0 * N * p * (1 - p)), 1e-15 * g.h);
            for (int j = 0; j <= N; ++j)
            {
                EXPECT_NEAR(p * N + g.offsets[j], j, 1e-12);
                EXPECT_NEAR(p * N + g.nodes[j] / g.h, j, 1e-12);
                if (j > 0)
                {
                    EXPECT_NEAR(g.nodes[j] - g.nodes[j - 1], g.h, 1e-12 * std::max(1.0, g.h * N));
                }
            }
        }
}

TEST(Alpha, BoundaryAndDomain)
{
    const OscillatorParams params(0.3, 10);
    const double           pN = 0.3 * 10;
    EXPECT_EQ(as_alpha(10 - pN, params), 0.0);
    EXPECT_NEAR(as_alpha(4 - pN, params), std::sqrt(6.0 * 5.0), 1e-13);
    EXPECT_THROW(as_alpha(12 - pN, params), std::domain_error);
}

TEST(KrawtchoukFunctions, OrthonormalAndGroundState)
{
    for (double p : fixture::sweep_p())
        for (int N : fixture::sweep_n(64))
        {
            const OscillatorParams params(p, N);
            const RealMatrix       psi = krawtchouk_functions(params);
            EXPECT_LT(fixture::identity_defect(psi * psi.transpose()), 1e-10);
            EXPECT_LT(fixture::identity_defect(psi.transpose() * psi), 1e-10);
            for (int j = 0; j <= N; ++j)
                EXPECT_NEAR(psi(0, j), std::sqrt(weight(j, params)), 1e-15);
        }
}

TEST(HAS, MatchesDefinitionAndSpectrum)
{
    for (double p : fixture::sweep_p())
        for (int N : fixture::sweep_n(64))
        {
            const OscillatorParams params(p, N);
            const auto             h = build_h_as(params);
            EXPECT_LT(hermiticity_defect(h.entries()), 1e-11);
            EXPECT_LT(fixture::max_abs_diff(RealMatrix(h.entries().real()), h_as_reference(params)), 1e-12 * N);
            EXPECT_EQ(h.entries().imag().cwiseAbs().maxCoeff(), 0.0);

            const RealVector ev = eigvalsh(h.entries());
            for (int n = 0; n <= N; ++n)
                EXPECT_NEAR(ev[n], n + 0.5, 1e-9) << p << " " << N;

            const RealMatrix psi = krawtchouk_functions(params);
            for (int n = 0; n <= N; ++n)
            {
                const RealVector v = psi.row(n).transpose();
                EXPECT_LT((h.entries().real() * v - (n + 0.5) * v).cwiseAbs().maxCoeff(), 1e-9);
            }
        }
}

TEST(ASLadder, ActionAlgebraAndFactorization)
{
    for (double p : fixture::sweep_p())
        for (int N : fixture::sweep_n(64))
        {
            const OscillatorParams params(p, N);
            const auto             l   = build_as_ladder(params);
            const ComplexMatrix&   ap  = l.raising.entries();
            const ComplexMatrix&   am  = l.lowering.entries();
            const ComplexMatrix&   a0  = l.zero.entries();
            const RealMatrix       psi = krawtchouk_functions(params);

            EXPECT_LT((am * psi.row(0).transpose().cast<complex_t>()).cwiseAbs().maxCoeff(), 1e-9);
            for (int n = 0; n <= N; ++n)
            {
                const ComplexVector v = psi.row(n).transpose().cast<complex_t>();
                ComplexVector       up_want = ComplexVector::Zero(N + 1), down_want = ComplexVector::Zero(N + 1);
                if (n < N)
                    up_want = std::sqrt((n + 1.0) * (N - n)) * psi.row(n + 1).transpose().cast<complex_t>();
                if (n > 0)
                    down_want = std::sqrt(n * (N - n + 1.0)) * psi.row(n - 1).transpose().cast<complex_t>();
                EXPECT_LT((ap * v - up_want).cwiseAbs().maxCoeff(), 1e-9) << p << " " << N << " " << n;
                EXPECT_LT((am * v - down_want).cwiseAbs().maxCoeff(), 1e-9);
                EXPECT_NEAR((v.adjoint() * a0 * v)(0, 0).real(), n - N / 2.0, 1e-10);
            }

            EXPECT_LT(fixture::max_abs_diff(commutator(a0, ap), ap), 1e-10);
            EXPECT_LT(fixture::max_abs_diff(commutator(a0, am), -am), 1e-10);
            EXPECT_LT(fixture::max_abs_diff(commutator(ap, am), 2.0 * a0), 1e-10);
            const ComplexMatrix rhs =
                0.5 * commutator(ap, am) + 0.5 * (N + 1) * ComplexMatrix::Identity(N + 1, N + 1);
            EXPECT_LT(fixture::max_abs_diff(build_h_as(params).entries(), rhs), 1e-10);
        }
}

TEST(Intertwiner, UnitaryDiagonalizingAndClosedForm)
{
    for (double p : fixture::sweep_p())
        for (int N : fixture::sweep_n(64))
        {
            const OscillatorParams params(p, N);
            const ComplexMatrix    t = build_intertwiner(params).entries();
            EXPECT_LT(unitarity_defect(t), 1e-10);
            const ComplexMatrix d = t.adjoint() * build_h_as(params).entries() * t;
            for (int n = 0; n <= N; ++n)
                EXPECT_NEAR(d(n, n).real(), n + 0.5, 1e-9);
            const ComplexMatrix off = d - ComplexMatrix(d.diagonal().asDiagonal());
            EXPECT_LT(off.cwiseAbs().maxCoeff(), 1e-9);

            const RealMatrix psi = krawtchouk_functions(params);
            EXPECT_LT((t.real() - psi.transpose()).cwiseAbs().maxCoeff(), 1e-10) << p << " " << N;

            // H~ = -(H~_AS - I/2)^2 + N H~_AS with H~_AS = T^-1 H_AS T
            const ComplexMatrix id  = ComplexMatrix::Identity(N + 1, N + 1);
            const ComplexMatrix ht  = build_tilde_operators(params).h.entries();
            const ComplexMatrix rhs = -(d - 0.5 * id) * (d - 0.5 * id) + static_cast<double>(N) * d;
            EXPECT_LT(fixture::max_abs_diff(ht, rhs), 1e-8);
        }
}

TEST(Relation, ScalarExamplesAndReport)
{
    const OscillatorParams four(0.5, 4);
    EXPECT_EQ(hamiltonian_eigenvalue(2, four), 6.0);
    EXPECT_EQ(-(2.5 - 0.5) * (2.5 - 0.5) + 4 * 2.5, 6.0);

    for (double p : fixture::sweep_p())
        for (int N : fixture::sweep_n(64))
        {
            const auto r = relation_check(OscillatorParams(p, N));
            EXPECT_LT(r.unitarity, 1e-10);
            EXPECT_LT(r.diagonal, 1e-9);
            EXPECT_LT(r.matrix_relation, 1e-8);
            EXPECT_LT(r.scalar_relation, 1e-9);
            EXPECT_LT(r.closed_form_match, 1e-10);
            EXPECT_NEAR(r.as_spectrum[0], 0.5, 1e-9);
            EXPECT_NEAR(r.as_spectrum[N], N + 0.5, 1e-9);
        }
}
