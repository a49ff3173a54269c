#ifndef KOSC_TESTS_SUPPORT_HPP
#define KOSC_TESTS_SUPPORT_HPP

#include "kosc/numerics.hpp"

#include <random>
#include <vector>

namespace kosc::fixture
{

inline const std::vector<double>& sweep_p()
{
    static const std::vector<double> ps{0.1, 0.3, 0.5, 0.7, 0.9};
    return ps;
}

inline std::vector<int> sweep_n(int max_n)
{
    std::vector<int> out;
    for (int n : {1, 2, 4, 8, 16, 32, 64})
        if (n <= max_n)
            out.push_back(n);
    return out;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }
inline double max_abs_diff(const RealMatrix& a, const RealMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

inline double identity_defect(const RealMatrix& m)
{
    return (m - RealMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

inline ComplexMatrix random_skew_hermitian(std::mt19937_64& rng, int m, double scale)
{
    std::normal_distribution<double> g(0.0, scale);
    ComplexMatrix a(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            a(i, j) = {g(rng), g(rng)};
    return (a - a.adjoint()) / 2.0;
}

} // namespace kosc::fixture

#endif
