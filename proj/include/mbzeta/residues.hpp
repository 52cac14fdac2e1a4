#ifndef MBZETA_RESIDUES_HPP
#define MBZETA_RESIDUES_HPP

#include <cstddef>
#include <string_view>
#include <vector>

#include <mbzeta/contour.hpp>

namespace mbzeta
{

enum class PoleKind
{
    // z = 1, from zeta(z).
    ZetaPole,
    // z = -n, n >= 0, from Gamma(z) (for the zeta families only n = 0).
    GammaPole,
    // z = -(2m + 1) in the zeta families: Gamma pole times zeta(-2m-1).
    OddCombined,
};

std::string_view pole_kind_name(PoleKind kind) noexcept;

struct PoleLocation
{
    int position = 0;
    PoleKind kind = PoleKind::GammaPole;

    Complex point() const noexcept
    {
        return {static_cast<double>(position), 0.0};
    }
};

/// Classifies z = n as a pole of the family's left-hand factors; throws
/// NotAPole otherwise.
PoleLocation pole_at(const IntegrandFamily &f, int n);

struct ResidueTerm
{
    PoleLocation location;
    Complex value;
};

struct TailStudy
{
    std::vector<Complex> terms;
    std::size_t min_index = 0;
    std::size_t growth_onset = 0;
};

/// Poles strictly inside the rectangle, in order of decreasing position
/// (from the right edge leftward). The rectangle must not enclose any pole
/// of the s-dependent factors.
std::vector<PoleLocation> enumerate_poles(const IntegrandFamily &f, const RectangleSpec &rect,
                                          const QuadratureConfig &qcfg = {});

ResidueTerm residue_at(const IntegrandFamily &f, const PoleLocation &p);

/// (1/2 pi i) times the counterclockwise integral over |z - z0| = radius,
/// computed by the periodic trapezoidal rule with successive doubling.
QuadratureResult numerical_residue(const IntegrandFamily &f, Complex z0, double radius = 0.3, double tol = 1e-10,
                                   const QuadratureConfig &qcfg = {});

/// Terms t_m = zeta(-2m-1) zeta(s+2m+1) Gamma(s+2m+1) / (2m+1)! for m = 0..M.
TailStudy asymptotic_tail_terms(Complex s, std::size_t M);

inline constexpr std::size_t max_tail_terms = 30;

} // namespace mbzeta

#endif
