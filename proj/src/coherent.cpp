#include "kosc/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kosc
{

CoherentLabel::CoherentLabel(complex_t z) : z_(z), modulus_(std::abs(z))
{
    if (modulus_ > 0.0)
        phase_ = z / modulus_;
}

std::string_view to_string(CoherentFamily family)
{
    switch (family)
    {
    case CoherentFamily::displacement: return "displacement";
    case CoherentFamily::root_sum: return "root_sum";
    case CoherentFamily::spin: return "spin";
    case CoherentFamily::phase: return "phase";
    }
    return "unknown";
}

std::string_view to_string(RootScaling scaling)
{
    switch (scaling)
    {
    case RootScaling::psi: return "psi_roots";
    case RootScaling::auxiliary: return "auxiliary_roots";
    case RootScaling::ladder: return "ladder_normalized_roots";
    }
    return "unknown";
}

std::string_view to_string(RootWeights weights)
{
    switch (weights)
    {
    case RootWeights::christoffel: return "christoffel";
    case RootWeights::printed: return "inverse_square_psi_N";
    }
    return "unknown";
}

namespace
{

double binomial(int n, int k)
{
    double out = 1.0;
    for (int i = 1; i <= k; ++i)
        out = out * (n - k + i) / i;
    return out;
}

ComplexVector binomial_amplitudes(complex_t w, int N)
{
    ComplexVector c(N + 1);
    const double  norm = std::pow(1.0 + std::norm(w), -0.5 * N);
    complex_t     power{1.0, 0.0};
    for (int n = 0; n <= N; ++n)
    {
        c[n] = norm * std::sqrt(binomial(N, n)) * power;
        power *= w;
    }
    return c;
}

// Two-level closed form used to calibrate the root scaling.
ComplexVector two_level_closed_form(complex_t z)
{
    const double r = std::abs(z);
    ComplexVector v(2);
    v[0] = std::cos(r);
    v[1] = -(z / r) * std::sin(r);
    return v;
}

const complex_t calibration_point = std::polar(0.8, 0.4);

} // namespace

CoherentState displacement_state(complex_t z, const OscillatorParams& params)
{
    const auto          ladder = build_ladder(params);
    const ComplexMatrix g      = z * ladder.raising.entries() - std::conj(z) * ladder.lowering.entries();
    const ComplexMatrix u      = expm_skew_hermitian(g);
    return {CoherentLabel(z), FockVector(u.col(0)), CoherentFamily::displacement};
}

PowerExpansion power_expansion_coefficients(const OscillatorParams& params, int n_max, complex_t z1, complex_t z2)
{
    if (n_max < 0)
        throw std::invalid_argument("power_expansion_coefficients: n_max must be nonnegative");
    if (std::abs(z1) == 0.0 || std::abs(z2) == 0.0)
        throw std::invalid_argument("power_expansion_coefficients: extraction needs z != 0");

    const int  dim    = params.dim();
    const auto ladder = build_ladder(params);

    PowerExpansion out;
    out.coefficients = RealMatrix::Zero(n_max + 1, dim);

    std::array<ComplexMatrix, 2> extracted;
    const std::array<complex_t, 2> zs{z1, z2};
    for (std::size_t s = 0; s < zs.size(); ++s)
    {
        const complex_t     z = zs[s];
        const ComplexMatrix g = z * ladder.raising.entries() - std::conj(z) * ladder.lowering.entries();
        extracted[s]          = ComplexMatrix::Zero(n_max + 1, dim);

        ComplexVector power = ComplexVector::Zero(dim); // G^n |0>
        power[0]            = 1.0;
        for (int n = 0; n <= n_max; ++n)
        {
            const double scale = power.norm();
            for (int l = 0; l < dim; ++l)
            {
                if ((n - l) % 2 != 0 || l > n)
                {
                    out.parity_residual = std::max(out.parity_residual, std::abs(power[l]) / scale);
                    continue;
                }
                const complex_t factor = std::pow(z, (n + l) / 2) * std::pow(-std::conj(z), (n - l) / 2);
                extracted[s](n, l)     = power[l] / factor;
            }
            power = g * power;
        }
    }

    for (int n = 0; n <= n_max; ++n)
    {
        for (int l = 0; l < dim; ++l)
        {
            const complex_t a = extracted[0](n, l);
            const complex_t b = extracted[1](n, l);
            const double    m = std::max(std::abs(a), std::abs(b));
            if (m == 0.0)
                continue;
            out.z_discrepancy      = std::max(out.z_discrepancy, std::abs(a - b) / m);
            out.imag_residual      = std::max(out.imag_residual, std::abs(a.imag()) / m);
            out.coefficients(n, l) = a.real();
        }
    }
    return out;
}

RootSumEvaluator::RootSumEvaluator(const OscillatorParams& params, RootWeights weights)
    : params_(params), weights_(weights)
{
    const OscillatorParams two_level(params.p(), 1);
    const ComplexVector    target = two_level_closed_form(calibration_point);

    const std::array<RootScaling, 3> candidates{RootScaling::psi, RootScaling::auxiliary, RootScaling::ladder};
    std::size_t                      best = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i)
    {
        const RootSumEvaluator trial(two_level, candidates[i], weights);
        calibration_.distance[i] = aligned_distance(target, trial.state(calibration_point).vector.amplitudes());
        if (calibration_.distance[i] < calibration_.distance[best])
            best = i;
    }
    if (!(calibration_.distance[best] < 1e-10))
        throw std::runtime_error("RootSumEvaluator: no root scaling reproduces the two-level closed form");
    calibration_.chosen = candidates[best];
    prepare();
}

RootSumEvaluator::RootSumEvaluator(const OscillatorParams& params, RootScaling scaling, RootWeights weights)
    : params_(params), weights_(weights)
{
    calibration_.chosen = scaling;
    calibration_.distance.fill(std::nan(""));
    prepare();
}

void RootSumEvaluator::prepare()
{
    const int  N   = params_.N();
    const int  dim = params_.dim();
    const auto rc  = recurrence_coefficients(params_);
    const RealVector beta = std::sqrt(2.0) * rc.b;

    roots_ = psi_roots(params_).eigenvalues;

    // Orthonormal-scaled values P_l(y) = psi~_l(y) / prod_{j<l} beta_j and their derivatives;
    // the monic polynomials themselves overflow quickly with N.
    normalized_.resize(dim, dim);
    RealMatrix deriv(dim, dim);
    quadrature_.resize(dim);
    for (int k = 0; k < dim; ++k)
    {
        const double y    = roots_[k];
        normalized_(0, k) = 1.0;
        deriv(0, k)       = 0.0;
        for (int l = 0; l < N; ++l)
        {
            const double down  = l > 0 ? beta[l - 1] * normalized_(l - 1, k) : 0.0;
            const double ddown = l > 0 ? beta[l - 1] * deriv(l - 1, k) : 0.0;
            normalized_(l + 1, k) = (y * normalized_(l, k) - down) / beta[l];
            deriv(l + 1, k)       = (normalized_(l, k) + y * deriv(l, k) - ddown) / beta[l];
        }
        const double last = normalized_(N, k);
        if (weights_ == RootWeights::christoffel)
        {
            // d/dy of psi~_{N+1} / prod_{j<N} beta_j
            const double top_deriv = last + y * deriv(N, k) - beta[N - 1] * deriv(N - 1, k);
            quadrature_[k]         = 1.0 / (last * top_deriv);
        }
        else
        {
            quadrature_[k] = 1.0 / (last * last);
        }
    }
    quadrature_ /= quadrature_.sum();

    switch (calibration_.chosen)
    {
    case RootScaling::psi: phase_scale_ = 1.0; break;
    case RootScaling::auxiliary: phase_scale_ = 1.0 / std::sqrt(2.0); break;
    case RootScaling::ladder: phase_scale_ = 1.0 / std::sqrt(2.0 * params_.p() * params_.q()); break;
    }
}

ComplexVector RootSumEvaluator::amplitudes(complex_t z) const
{
    const int dim = params_.dim();
    const double r = std::abs(z);
    if (r == 0.0)
        return FockVector::basis(dim, 0).amplitudes();

    ComplexVector oscillation(dim);
    for (int k = 0; k < dim; ++k)
        oscillation[k] = quadrature_[k] * std::polar(1.0, r * phase_scale_ * roots_[k]);

    const complex_t rotation = complex_t(0.0, -1.0) * z / r;
    ComplexVector   c(dim);
    complex_t       power{1.0, 0.0};
    for (int l = 0; l < dim; ++l)
    {
        c[l] = power * (normalized_.row(l).cast<complex_t>() * oscillation)(0, 0);
        power *= rotation;
    }
    return c;
}

CoherentState RootSumEvaluator::state(complex_t z) const
{
    ComplexVector c = amplitudes(z);
    c.normalize();
    return {CoherentLabel(z), FockVector(std::move(c)), CoherentFamily::root_sum};
}

CoherentState root_sum_state(complex_t z, const OscillatorParams& params)
{
    return RootSumEvaluator(params).state(z);
}

ComplexVector spin_grid_function(complex_t xi, const OscillatorParams& params)
{
    const ComplexVector c   = binomial_amplitudes(xi, params.N());
    const RealMatrix    psi = krawtchouk_functions(params);
    return psi.transpose().cast<complex_t>() * c;
}

CoherentState spin_state(complex_t xi, const OscillatorParams& params)
{
    const ComplexMatrix t = build_intertwiner(params).entries();
    return {CoherentLabel(xi), FockVector(t.adjoint() * spin_grid_function(xi, params)), CoherentFamily::spin};
}

PhaseBasis phase_basis(double theta0, const OscillatorParams& params)
{
    const int    dim  = params.dim();
    const double norm = 1.0 / std::sqrt(static_cast<double>(dim));

    PhaseBasis basis;
    basis.theta0 = theta0;
    basis.states.reserve(static_cast<std::size_t>(dim));
    for (int n = 0; n < dim; ++n)
    {
        const double  theta = theta0 + 2.0 * std::numbers::pi * n / dim;
        ComplexVector v(dim);
        for (int k = 0; k < dim; ++k)
            v[k] = norm * std::polar(1.0, k * theta);
        basis.states.emplace_back(std::move(v));
    }
    return basis;
}

CoherentState phase_coherent_state(complex_t z, double theta0, const OscillatorParams& params)
{
    const int           dim   = params.dim();
    const complex_t     w     = 2.0 * std::numbers::pi * z / static_cast<double>(dim);
    const ComplexVector coeff = binomial_amplitudes(w, params.N());
    const PhaseBasis    basis = phase_basis(theta0, params);

    ComplexVector v = ComplexVector::Zero(dim);
    for (int n = 0; n < dim; ++n)
        v += coeff[n] * basis.states[static_cast<std::size_t>(n)].amplitudes();
    return {CoherentLabel(z), FockVector(std::move(v)), CoherentFamily::phase};
}

complex_t overlap(const CoherentState& s1, const CoherentState& s2)
{
    if (s1.vector.dim() != s2.vector.dim())
        throw std::invalid_argument("overlap: dimension mismatch (" + std::to_string(s1.vector.dim()) + " vs " +
                                    std::to_string(s2.vector.dim()) + ")");
    return s1.vector.amplitudes().dot(s2.vector.amplitudes());
}

double aligned_distance(const ComplexVector& a, const ComplexVector& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("aligned_distance: dimension mismatch");
    Eigen::Index pivot = 0;
    a.cwiseAbs().maxCoeff(&pivot);
    const auto unit = [](complex_t c) { return std::abs(c) == 0.0 ? complex_t(1.0) : std::conj(c) / std::abs(c); };
    return (a * unit(a[pivot]) - b * unit(b[pivot])).norm();
}

} // namespace kosc
