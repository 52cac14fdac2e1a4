#ifndef MBZETA_SPECFUN_HPP
#define MBZETA_SPECFUN_HPP

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include <mbzeta/core.hpp>

namespace mbzeta
{

using Rational = boost::multiprecision::cpp_rational;

/// Principal branch of log Gamma: analytic on the plane cut along (-inf, 0],
/// real for real z > 0, and satisfying logGamma(z+1) = logGamma(z) + log z.
Complex log_gamma(Complex z);

Complex gamma(Complex z);

// Gamma restricted to the real line, returned as a real number.
double gamma(double x);

/// (z - 1/2) log z - z + log sqrt(2 pi). Throws SectorViolation unless
/// |arg z| < pi - sector_margin.
Complex stirling_main_term(Complex z, double sector_margin = 0.1);

/// Residue of Gamma at z = -n, namely (-1)^n / n!.
double gamma_pole_residue(unsigned n);

Complex beta(Complex x, Complex y);

// Distance from z to the nearest non-positive integer.
double distance_to_gamma_pole(Complex z) noexcept;

/// Exact Bernoulli numbers B_0..B_{n_max} with B_1 = -1/2, built from the
/// recurrence sum_{j=0}^{n} binom(n+1, j) B_j = 0.
class BernoulliTable
{
public:
    static constexpr std::size_t default_capacity = 64;

    explicit BernoulliTable(std::size_t n_max = default_capacity);

    std::size_t capacity() const noexcept
    {
        return exact_.size() - 1;
    }

    const Rational &exact(std::size_t n) const;
    double value(std::size_t n) const;

    // The shared default-capacity table; built on first use, read-only after.
    static const BernoulliTable &instance();

private:
    std::vector<Rational> exact_;
    std::vector<double> approx_;
};

inline const Rational &bernoulli(std::size_t n)
{
    return BernoulliTable::instance().exact(n);
}

double to_double(const Rational &q);

} // namespace mbzeta

#endif
