#ifndef MBZETA_CONTOUR_HPP
#define MBZETA_CONTOUR_HPP

#include <array>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include <mbzeta/core.hpp>
#include <mbzeta/quadrature.hpp>
#include <mbzeta/zeta.hpp>

namespace mbzeta
{

enum class FamilyTag
{
    // Gamma(z) Gamma(s - z) u^{-z}
    GammaPower,
    // zeta(z) zeta(s - z) Gamma(z) Gamma(s - z)
    ZetaZetaGamma,
    // zeta(z) Gamma(z) Gamma(s - z) (a - 1)^{z - s}
    ZetaGammaPower,
};

std::string_view family_name(FamilyTag tag) noexcept;
std::optional<FamilyTag> parse_family(std::string_view name) noexcept;

struct IntegrandFamily
{
    FamilyTag tag = FamilyTag::GammaPower;
    Complex s{};
    // GammaPower only, in (0, 1].
    double u = 1.0;
    // ZetaGammaPower only, >= 2.
    double a = 2.0;

    static IntegrandFamily gamma_power(Complex s, double u);
    static IntegrandFamily zeta_zeta_gamma(Complex s);
    static IntegrandFamily zeta_gamma_power(Complex s, double a);

    void validate() const;

    bool has_zeta() const noexcept
    {
        return tag != FamilyTag::GammaPower;
    }
};

struct VerticalLineSpec
{
    double c = 0.0;
    double tol = 1e-8;
};

// Counterclockwise rectangle with right edge at c, left edge at c - k and
// horizontal edges at +-T.
struct RectangleSpec
{
    double c = 0.0;
    double k = 1.0;
    double T = 1.0;

    double left() const noexcept
    {
        return c - k;
    }

    void validate() const;

    // Oriented edges: up the right side, left along the top, down the left
    // side, right along the bottom.
    std::array<std::pair<Complex, Complex>, 4> edges() const;
};

/// All singular points of the family with real part in [re_min, re_max].
/// Even negative integers are omitted for the zeta families because the
/// trivial zeros of zeta(z) cancel the Gamma poles there.
std::vector<Complex> singular_points(const IntegrandFamily &f, double re_min, double re_max);

// Distance from the closed segment [z0, z1] to the nearest singular point.
double distance_to_singularities(const IntegrandFamily &f, Complex z0, Complex z1);

Complex integrand_eval(const IntegrandFamily &f, Complex z, const QuadratureConfig &qcfg = {});

/// Throws DomainViolation unless the abscissa is admissible for the family.
void validate_line(const IntegrandFamily &f, const VerticalLineSpec &line);

/// (1/2 pi i) times the integral of F over Re z = c, upward.
QuadratureResult integrate_vertical(const IntegrandFamily &f, const VerticalLineSpec &line,
                                    const QuadratureConfig &qcfg = {});

/// As integrate_vertical but only requires the line to avoid the poles and,
/// for the zeta families, the zeta factors to be absolutely convergent on it.
/// Used for shifted lines to the left of the poles of Gamma(z).
QuadratureResult integrate_line(const IntegrandFamily &f, double c, double tol, const QuadratureConfig &qcfg = {});

/// (1/2 pi i) times the oriented straight-line integral from z0 to z1.
QuadratureResult integrate_segment(const IntegrandFamily &f, Complex z0, Complex z1, double tol,
                                   const QuadratureConfig &qcfg = {});

QuadratureResult integrate_rectangle(const IntegrandFamily &f, const RectangleSpec &rect, double tol,
                                     const QuadratureConfig &qcfg = {});

/// Integral over (0, inf) of t^{s-1} / (e^t - 1)^2 for Re(s) > 2.
QuadratureResult integrate_real_improper(Complex s, double tol, const QuadratureConfig &qcfg = {});

} // namespace mbzeta

#endif
