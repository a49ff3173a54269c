#ifndef KOSC_NUMERICS_HPP
#define KOSC_NUMERICS_HPP

#include <Eigen/Dense>

#include <complex>

namespace kosc
{

using complex_t     = std::complex<double>;
using RealVector    = Eigen::VectorXd;
using RealMatrix    = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Real symmetric tridiagonal matrix stored as its diagonal and first off-diagonal.
struct SymTridiagonal
{
    RealVector diag;
    RealVector offdiag; // length diag.size() - 1

    SymTridiagonal() = default;
    SymTridiagonal(RealVector d, RealVector e);

    Eigen::Index size() const { return diag.size(); }
    RealMatrix   dense() const;
};

/// Eigenpairs of a real symmetric matrix.
///
/// Eigenvalues ascend; column k of `eigenvectors` belongs to eigenvalue k and
/// its first nonzero component is positive.
struct SpectralData
{
    RealVector eigenvalues;
    RealMatrix eigenvectors;
};

// Implicit QL with Wilkinson shifts. Throws std::invalid_argument on an empty
// or non-finite input and std::runtime_error if an eigenvalue fails to converge.
SpectralData eigh_tridiagonal(const SymTridiagonal& t);

// exp(G) for skew-Hermitian G, evaluated as V exp(-i L) V^H where iG = V L V^H.
ComplexMatrix expm_skew_hermitian(const ComplexMatrix& g);

// Ascending eigenvalues of a dense Hermitian matrix.
RealVector eigvalsh(const ComplexMatrix& h);

double max_abs(const ComplexMatrix& m);
double max_abs(const RealMatrix& m);

/// max |M - M^H|
double hermiticity_defect(const ComplexMatrix& m);

/// max |U^H U - I|
double unitarity_defect(const ComplexMatrix& u);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

} // namespace kosc

#endif // KOSC_NUMERICS_HPP
