#ifndef KOSC_AS_OSCILLATOR_HPP
#define KOSC_AS_OSCILLATOR_HPP

#include "kosc/oscillator.hpp"

namespace kosc
{

/// Uniform grid xi_j = h (j - pN), j = 0..N, with h = sqrt(2Np(1-p)).
struct ASGrid
{
    double     h = 0.0;
    RealVector nodes;
    RealVector offsets; // xi_j / h = j - pN, computed directly rather than by division

    static ASGrid make(const OscillatorParams& params);
};

/// alpha(xi) = sqrt(((1-p)N - xi/h)(pN + 1 + xi/h)), taking xi/h as argument.
/// Throws std::domain_error for a radicand below rounding level.
double as_alpha(double xi_over_h, const OscillatorParams& params);

/// Rows n = 0..N hold Psi_n sampled on the grid:
///   Psi_n(xi_j) = (-1)^n sqrt(C(N,n) (p/(1-p))^n rho(j)) K_n(j).
RealMatrix krawtchouk_functions(const OscillatorParams& params);

/// Difference Hamiltonian in the grid delta basis. The shifts e^{+-h d/dxi} are
/// truncated at the grid ends, where alpha vanishes.
OperatorMatrix build_h_as(const OscillatorParams& params);

struct ASLadder
{
    OperatorMatrix raising;  // A+
    OperatorMatrix lowering; // A-
    OperatorMatrix zero;     // A0 = [A+, A-] / 2
};

/// e^{-h d/dxi} alpha(xi) acts as f(xi) -> alpha(xi - h) f(xi - h): multiply first, then shift.
ASLadder build_as_ladder(const OscillatorParams& params);

/// Unitary T with T e_n = Psi_n. Columns are the eigenvectors of H_AS from the
/// tridiagonal solver, each signed to agree with the closed-form Psi_n.
OperatorMatrix build_intertwiner(const OscillatorParams& params);

struct RelationReport
{
    double unitarity         = 0.0; // max|T^H T - I|
    double diagonal          = 0.0; // max|T^-1 H_AS T - diag(n + 1/2)|
    double matrix_relation   = 0.0; // max|H~ + (H~_AS - I/2)^2 - N H~_AS|
    double scalar_relation   = 0.0; // max_n |N(n+1/2) - n^2 - (-(lambda_n - 1/2)^2 + N lambda_n)|
    double closed_form_match = 0.0; // max|T - Psi^T|
    RealVector as_spectrum;         // diagonal of T^-1 H_AS T

    double max_residual() const;
};

RelationReport relation_check(const OscillatorParams& params);

} // namespace kosc

#endif // KOSC_AS_OSCILLATOR_HPP
