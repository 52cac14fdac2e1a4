#include <cmath>

#include <mbzeta/core.hpp>

namespace mbzeta
{

std::string_view error_name(ErrorKind kind) noexcept
{
    switch (kind) {
        case ErrorKind::PoleProximity:
            return "PoleProximity";
        case ErrorKind::SectorViolation:
            return "SectorViolation";
        case ErrorKind::IndexBeyondTable:
            return "IndexBeyondTable";
        case ErrorKind::DomainViolation:
            return "DomainViolation";
        case ErrorKind::OverflowRegime:
            return "OverflowRegime";
        case ErrorKind::ToleranceUnreachable:
            return "ToleranceUnreachable";
        case ErrorKind::PoleOnPath:
            return "PoleOnPath";
        case ErrorKind::PoleOnBoundary:
            return "PoleOnBoundary";
        case ErrorKind::PoleOnCircle:
            return "PoleOnCircle";
        case ErrorKind::NotAPole:
            return "NotAPole";
        case ErrorKind::UnknownCaseKind:
            return "UnknownCaseKind";
        case ErrorKind::ConfigError:
            return "ConfigError";
        case ErrorKind::UsageError:
            return "UsageError";
    }
    return "Unknown";
}

namespace
{

// Quarter-period decomposition x = n/2 + y with |y| <= 1/4; returns
// sin(pi (n/2 + y + shift/2)) using only sin/cos on the reduced argument.
double sin_pi_shifted(double x, int shift) noexcept
{
    if (!std::isfinite(x)) {
        return std::nan("");
    }
    const double r = std::remainder(x, 2.0);
    const double n = std::nearbyint(2.0 * r);
    const double y = r - 0.5 * n;
    int quadrant = (static_cast<int>(n) + shift) % 4;
    if (quadrant < 0) {
        quadrant += 4;
    }
    switch (quadrant) {
        case 0:
            return std::sin(pi * y);
        case 1:
            return std::cos(pi * y);
        case 2:
            return -std::sin(pi * y);
        default:
            return -std::cos(pi * y);
    }
}

} // namespace

double sin_pi(double x) noexcept
{
    return sin_pi_shifted(x, 0);
}

double cos_pi(double x) noexcept
{
    return sin_pi_shifted(x, 1);
}

Complex sin_pi(Complex z) noexcept
{
    const double b = pi * z.imag();
    return {sin_pi(z.real()) * std::cosh(b), cos_pi(z.real()) * std::sinh(b)};
}

Complex cos_pi(Complex z) noexcept
{
    const double b = pi * z.imag();
    return {cos_pi(z.real()) * std::cosh(b), -sin_pi(z.real()) * std::sinh(b)};
}

} // namespace mbzeta
