#ifndef MBZETA_ZETA_HPP
#define MBZETA_ZETA_HPP

#include <optional>

#include <mbzeta/core.hpp>
#include <mbzeta/specfun.hpp>

namespace mbzeta
{

/// Euler-Maclaurin parameters shared by the Riemann and Hurwitz evaluators.
struct ZetaEvalConfig
{
    // Directly summed terms; unset selects max(20, ceil(2 |Im s|)).
    std::optional<int> em_terms;
    // Highest Bernoulli index used in the correction (even).
    int correction_order = 12;
    // Below this real part the functional equation is used.
    double reflect_below = 0.5;
    // Largest |Im s| accepted before reporting OverflowRegime.
    double max_imag = 1000.0;

    void validate() const;
    int terms_for(Complex s) const;
};

Complex riemann_zeta(Complex s, const ZetaEvalConfig &cfg = {});

/// Sum_{n>=0} (n + a)^{-s} for Re(s) > 1 and a >= 1.
Complex hurwitz_zeta(Complex s, double a, const ZetaEvalConfig &cfg = {});

/// zeta(-n) = (-1)^n B_{n+1} / (n + 1), exact.
Rational zeta_negative_integer(unsigned n);

/// The factor chi(s) in zeta(s) = chi(s) zeta(1 - s), i.e.
/// 2^s pi^{s-1} sin(pi s / 2) Gamma(1 - s).
Complex zeta_functional_factor(Complex s);

/// Sum_{m,n>=1} (m + n)^{-s} = Sum_{k>=2} (k - 1) k^{-s}, evaluated directly
/// with an Euler-Maclaurin tail and absolute error at most tol. Independent
/// of riemann_zeta.
Complex double_sum_oracle(Complex s, double tol = 1e-13);

} // namespace mbzeta

#endif
