#ifndef KOSC_COHERENT_HPP
#define KOSC_COHERENT_HPP

#include "kosc/as_oscillator.hpp"
#include "kosc/oscillator.hpp"

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace kosc
{

class CoherentLabel
{
public:
    explicit CoherentLabel(complex_t z);

    complex_t                z() const { return z_; }
    double                   modulus() const { return modulus_; }
    /// z / |z|; empty at z = 0.
    std::optional<complex_t> phase() const { return phase_; }

private:
    complex_t                z_;
    double                   modulus_;
    std::optional<complex_t> phase_;
};

enum class CoherentFamily
{
    displacement, // exp(z a+ - conj(z) a-) |0>
    root_sum,     // explicit sum over the roots of the zero-diagonal family
    spin,
    phase
};

std::string_view to_string(CoherentFamily family);

struct CoherentState
{
    CoherentLabel  label;
    FockVector     vector;
    CoherentFamily family;
};

/// The N + 1 phase states |theta_n> = (N+1)^{-1/2} sum_k e^{i k theta_n} |k>,
/// theta_n = theta_0 + 2 pi n / (N + 1).
struct PhaseBasis
{
    double                  theta0 = 0.0;
    std::vector<FockVector> states;
};

CoherentState displacement_state(complex_t z, const OscillatorParams& params);

/// <l| G^n |0> for G = z a+ - conj(z) a- factors as z^{(n+l)/2} (-conj z)^{(n-l)/2} e_{n,l}.
/// The coefficients are extracted at two values of z and compared.
struct PowerExpansion
{
    RealMatrix coefficients;         // e_{n,l}, rows n = 0..n_max, zero where unreachable
    double     z_discrepancy   = 0.; // max relative difference between the two extractions
    double     parity_residual = 0.; // max |<l|G^n|0>| / |G^n|0>| over n - l odd or l > n
    double     imag_residual   = 0.; // max |Im e_{n,l}| / |e_{n,l}|
};

/// Throws std::invalid_argument if either extraction point is zero or n_max < 0.
PowerExpansion power_expansion_coefficients(const OscillatorParams& params, int n_max,
                                            complex_t z1 = std::polar(0.7, 0.3),
                                            complex_t z2 = std::polar(1.3, -1.1));

/// Which root set feeds the phase factor e^{i|z| x_k}.
enum class RootScaling
{
    psi,       // roots of psi~_{N+1}
    auxiliary, // roots of the zero-diagonal family, psi~ roots / sqrt(2)
    ladder     // psi~ roots / sqrt(2p(1-p)): spectrum in the ladder-operator normalization
};

/// Quadrature weight attached to each root.
enum class RootWeights
{
    christoffel, // 1 / (psi~_N(x_k) psi~'_{N+1}(x_k)), the Gauss weights of the zero-diagonal Jacobi matrix
    printed      // 1 / psi~_N(x_k)^2, exact only when psi~'_{N+1} is proportional to psi~_N
};

std::string_view to_string(RootScaling scaling);
std::string_view to_string(RootWeights weights);

struct RootSumCalibration
{
    RootScaling           chosen = RootScaling::ladder;
    std::array<double, 3> distance{}; // N = 1 closed-form mismatch per RootScaling value
};

/// Coherent states from the explicit root sum
///   c_l = (-i z/|z|)^l / prod_{k<l}(sqrt(2) b_k) * sum_k w_k psi~_l(x_k) e^{i|z| s x_k},
/// normalized after assembly. The scale s is fixed by calibration against the
/// two-level closed form cos|z| |0> - (z/|z|) sin|z| |1> at the same p.
class RootSumEvaluator
{
public:
    explicit RootSumEvaluator(const OscillatorParams& params, RootWeights weights = RootWeights::christoffel);
    RootSumEvaluator(const OscillatorParams& params, RootScaling scaling, RootWeights weights);

    /// Unnormalized amplitudes; z = 0 yields |0>.
    ComplexVector amplitudes(complex_t z) const;
    CoherentState state(complex_t z) const;

    const OscillatorParams&   params() const { return params_; }
    RootScaling               scaling() const { return calibration_.chosen; }
    RootWeights               weights() const { return weights_; }
    const RootSumCalibration& calibration() const { return calibration_; }
    const RealVector&         roots() const { return roots_; }
    const RealVector&         root_weights() const { return quadrature_; }

private:
    void prepare();

    OscillatorParams   params_;
    RootWeights        weights_;
    RootSumCalibration calibration_;
    RealVector         roots_;       // psi~_{N+1} roots
    RealMatrix         normalized_;  // psi~_l(x_k) / prod_{j<l} sqrt(2) b_j, rows l
    RealVector         quadrature_;  // w_k, summing to 1
    double             phase_scale_ = 1.0;
};

/// Calibrated root-sum state with Christoffel weights.
CoherentState root_sum_state(complex_t z, const OscillatorParams& params);

/// <x|xi> = (1 + |xi|^2)^{-N/2} sum_n sqrt(C(N,n)) xi^n Psi_n(x) on the grid.
ComplexVector spin_grid_function(complex_t xi, const OscillatorParams& params);

/// The spin coherent state carried to the Fock basis by the intertwiner.
CoherentState spin_state(complex_t xi, const OscillatorParams& params);

PhaseBasis phase_basis(double theta0, const OscillatorParams& params);

/// (1 + |w|^2)^{-N/2} sum_n sqrt(C(N,n)) w^n |theta_n>, w = 2 pi z / (N + 1).
CoherentState phase_coherent_state(complex_t z, double theta0, const OscillatorParams& params);

/// <s1|s2>; throws std::invalid_argument on a dimension mismatch.
complex_t overlap(const CoherentState& s1, const CoherentState& s2);

/// Both vectors rotated by the phase of their component at the largest entry of `a`.
double aligned_distance(const ComplexVector& a, const ComplexVector& b);

} // namespace kosc

#endif // KOSC_COHERENT_HPP
