#ifndef MBZETA_CORE_HPP
#define MBZETA_CORE_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mbzeta
{

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Minimum complex distance from a pole at which functions are evaluated.
inline constexpr double default_pole_guard = 1e-6;

enum class ErrorKind
{
    PoleProximity,
    SectorViolation,
    IndexBeyondTable,
    DomainViolation,
    OverflowRegime,
    ToleranceUnreachable,
    PoleOnPath,
    PoleOnBoundary,
    PoleOnCircle,
    NotAPole,
    UnknownCaseKind,
    ConfigError,
    UsageError,
};

std::string_view error_name(ErrorKind kind) noexcept;

// All failures raised by the library carry a kind so callers (the CLI, the
// suite runner) can map them without parsing messages.
class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind), detail_(what)
    {}

    ErrorKind kind() const noexcept
    {
        return kind_;
    }

    // The message without the kind prefix.
    const std::string &detail() const noexcept
    {
        return detail_;
    }

private:
    ErrorKind kind_;
    std::string detail_;
};

inline bool is_finite(Complex z) noexcept
{
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// sin(pi x) and cos(pi x) with exact zeros at the integers and half-integers.
double sin_pi(double x) noexcept;
double cos_pi(double x) noexcept;
Complex sin_pi(Complex z) noexcept;
Complex cos_pi(Complex z) noexcept;

// Neumaier-compensated accumulator for complex sums.
class CompensatedSum
{
public:
    void add(Complex v) noexcept
    {
        accumulate(sum_re_, comp_re_, v.real());
        accumulate(sum_im_, comp_im_, v.imag());
    }

    CompensatedSum &operator+=(Complex v) noexcept
    {
        add(v);
        return *this;
    }

    Complex value() const noexcept
    {
        return {sum_re_ + comp_re_, sum_im_ + comp_im_};
    }

private:
    static void accumulate(double &sum, double &comp, double x) noexcept
    {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }

    double sum_re_ = 0.0, comp_re_ = 0.0;
    double sum_im_ = 0.0, comp_im_ = 0.0;
};

} // namespace mbzeta

#endif
