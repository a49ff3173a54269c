#ifndef KOSC_OSCILLATOR_HPP
#define KOSC_OSCILLATOR_HPP

#include "kosc/numerics.hpp"
#include "kosc/polynomials.hpp"

namespace kosc
{

/// State in the Fock basis |0>, ..., |N>, identified with the renormalized polynomials.
class FockVector
{
public:
    FockVector() = default;
    explicit FockVector(ComplexVector amplitudes);

    static FockVector basis(int dim, int n);

    const ComplexVector& amplitudes() const { return amplitudes_; }
    int                  dim() const { return static_cast<int>(amplitudes_.size()); }
    double               norm() const { return amplitudes_.norm(); }
    complex_t            operator[](int n) const { return amplitudes_[n]; }

private:
    ComplexVector amplitudes_;
};

/// Dense operator on the (N+1)-dimensional space.
class OperatorMatrix
{
public:
    OperatorMatrix() = default;
    /// With `hermitian` set, throws std::invalid_argument if max|M - M^H| >= 1e-12.
    OperatorMatrix(ComplexMatrix entries, bool hermitian);

    const ComplexMatrix& entries() const { return entries_; }
    bool                 hermitian() const { return hermitian_; }
    Eigen::Index         dim() const { return entries_.rows(); }

    FockVector apply(const FockVector& v) const { return FockVector(entries_ * v.amplitudes()); }

private:
    ComplexMatrix entries_;
    bool          hermitian_ = false;
};

struct CoordinateMomentum
{
    OperatorMatrix x;
    OperatorMatrix p;
};

struct TildeOperators
{
    OperatorMatrix x; // Re(X - P)
    OperatorMatrix p; // -i Im(X - P)
    OperatorMatrix h; // (X~^2 + P~^2) / (4p(1-p))
};

struct LadderOperators
{
    OperatorMatrix raising;  // a+|n> = -sqrt((n+1)(N-n)) |n+1>
    OperatorMatrix lowering; // a-|n> = -sqrt(n(N-n+1)) |n-1>
    OperatorMatrix number;
};

CoordinateMomentum build_xp(const OscillatorParams& params);

TildeOperators build_tilde_operators(const OscillatorParams& params);

/// The ladder matrices do not depend on p.
LadderOperators build_ladder(const OscillatorParams& params);

/// (X~ +/- i P~) / (2 sqrt(p(1-p))), the defining combination of the ladder operators.
LadderOperators ladder_from_tilde(const OscillatorParams& params);

struct SpectrumComparison
{
    RealVector computed;  // eigenvalues of H~, ascending
    RealVector formula;   // N(n + 1/2) - n^2 in Fock order
    RealVector diagonal;  // <n|H~|n>
    double     off_diagonal = 0.0; // max off-diagonal |H~_mn|

    /// max difference between `computed` and sorted `formula`
    double max_deviation() const;
};

SpectrumComparison spectrum_check(const OscillatorParams& params);

/// Diagonal of [a-, a+] = N - 2n computed by matrix products.
struct CommutatorComparison
{
    RealVector diagonal;
    RealVector expected;        // N - 2n
    RealVector printed_formula; // (N - 1) - 2n, for the report
    double     off_diagonal = 0.0;

    double max_deviation() const;
};

CommutatorComparison commutator_check(const OscillatorParams& params);

/// N(n + 1/2) - n^2
double hamiltonian_eigenvalue(int n, const OscillatorParams& params);

} // namespace kosc

#endif // KOSC_OSCILLATOR_HPP
