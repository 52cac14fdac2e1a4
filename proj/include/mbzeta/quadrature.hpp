#ifndef MBZETA_QUADRATURE_HPP
#define MBZETA_QUADRATURE_HPP

#include <cstddef>
#include <functional>

#include <mbzeta/core.hpp>

namespace mbzeta
{

struct QuadratureResult
{
    Complex value{};
    // Estimated quadrature error of the finite part.
    double err_estimate = 0.0;
    // Analytic bound on the truncated tails (infinite paths only).
    double tail_bound = 0.0;
    std::size_t evaluations = 0;

    double total_error() const noexcept
    {
        return err_estimate + tail_bound;
    }
};

struct QuadratureConfig
{
    double pole_guard = default_pole_guard;
    std::size_t max_evaluations = 4'000'000;
};

using RealToComplex = std::function<Complex(double)>;

/// Adaptive 7/15-point Gauss-Kronrod integration of a complex-valued function
/// over [a, b]. The interval is first cut into `initial_panels` equal panels;
/// each panel is bisected until |K15 - G7| is below its length-proportional
/// share of `tol` (or hits the rounding floor). Panel contributions are
/// reduced left to right with compensated summation.
QuadratureResult integrate_adaptive(const RealToComplex &f, double a, double b, double tol,
                                    const QuadratureConfig &cfg = {}, std::size_t initial_panels = 1);

} // namespace mbzeta

#endif
