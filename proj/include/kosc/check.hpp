#ifndef KOSC_CHECK_HPP
#define KOSC_CHECK_HPP

#include "kosc/polynomials.hpp"

#include <string>
#include <vector>

namespace kosc
{

struct CheckEntry
{
    std::string name;
    double      residual  = 0.0;
    double      tolerance = 0.0;
    bool        pass      = false;
    std::string note;
};

/// Every invariant suite evaluated at one parameter point. Passes iff every entry passes.
struct CheckReport
{
    double                   p = 0.0;
    int                      N = 0;
    std::vector<CheckEntry>  entries;
    std::vector<std::string> notes;

    bool              passed() const;
    const CheckEntry* find(const std::string& name) const;
};

/// Fixed informational notes attached to every report.
std::vector<std::string> standing_notes();

/// The largest N for which the forward-recurrence cross-check is meaningful.
inline constexpr int recurrence_check_max_n = 32;

CheckReport run_checks(const OscillatorParams& params);

/// Points are evaluated concurrently; the result keeps the order p-major, then N.
std::vector<CheckReport> run_sweep(const std::vector<double>& ps, const std::vector<int>& ns);

std::vector<double> default_sweep_p();
std::vector<int>    default_sweep_n();

} // namespace kosc

#endif // KOSC_CHECK_HPP
