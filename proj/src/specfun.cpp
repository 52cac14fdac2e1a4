#include <algorithm>
#include <array>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <mbzeta/specfun.hpp>

namespace mbzeta
{

namespace
{

// log sqrt(2 pi)
constexpr double log_sqrt_two_pi = 0.91893853320467274178032973640562;

// Below this modulus (or in the left half-plane) the argument is shifted up
// by the recurrence before the asymptotic series is applied.
constexpr double stirling_radius = 15.0;
constexpr int stirling_terms = 10;

std::string describe(Complex z)
{
    std::ostringstream os;
    os.precision(17);
    os << "(" << z.real() << "," << z.imag() << ")";
    return os.str();
}

// B_{2k} / (2k (2k - 1)) for k = 1..stirling_terms.
const std::array<double, stirling_terms> &stirling_coefficients()
{
    static const auto coeffs = [] {
        std::array<double, stirling_terms> c{};
        const auto &table = BernoulliTable::instance();
        for (int k = 1; k <= stirling_terms; ++k) {
            c[k - 1] = table.value(2 * k) / (2.0 * k * (2.0 * k - 1.0));
        }
        return c;
    }();
    return coeffs;
}

Complex stirling_series(Complex z)
{
    const auto &coeffs = stirling_coefficients();
    const Complex inv = 1.0 / z;
    const Complex inv2 = inv * inv;
    // Horner in 1/z^2, highest order first.
    Complex corr = 0.0;
    for (int k = stirling_terms - 1; k >= 0; --k) {
        corr = corr * inv2 + coeffs[k];
    }
    corr *= inv;
    return (z - 0.5) * std::log(z) - z + log_sqrt_two_pi + corr;
}

void check_gamma_pole(Complex z)
{
    if (z.real() < 0.5) {
        const double d = distance_to_gamma_pole(z);
        if (d <= default_pole_guard) {
            const double nearest = std::min(0.0, std::nearbyint(z.real()));
            throw Error(ErrorKind::PoleProximity,
                        "z = " + describe(z) + " is within the pole guard of " + describe(Complex(nearest)));
        }
    }
}

} // namespace

double distance_to_gamma_pole(Complex z) noexcept
{
    const double nearest = std::min(0.0, std::nearbyint(z.real()));
    return std::abs(z - nearest);
}

Complex log_gamma(Complex z)
{
    check_gamma_pole(z);
    if (z.imag() == 0.0 && (z.real() == 1.0 || z.real() == 2.0)) {
        return 0.0;
    }
    CompensatedSum shift;
    while (z.real() < 0.0 || std::abs(z) < stirling_radius) {
        shift += std::log(z);
        z += 1.0;
    }
    return stirling_series(z) - shift.value();
}

Complex gamma(Complex z)
{
    // n! is exact in binary64 up to 22!.
    if (z.imag() == 0.0 && z.real() >= 1.0 && z.real() <= 23.0 && z.real() == std::floor(z.real())) {
        double f = 1.0;
        for (int k = 2; k < static_cast<int>(z.real()); ++k) {
            f *= k;
        }
        return f;
    }
    const Complex lg = log_gamma(z);
    Complex g = std::exp(lg);
    if (z.imag() == 0.0) {
        g = Complex(g.real(), 0.0);
    }
    if (!is_finite(g)) {
        throw Error(ErrorKind::OverflowRegime, "Gamma" + describe(z) + " is not representable");
    }
    return g;
}

double gamma(double x)
{
    const double magnitude = std::exp(log_gamma(Complex(x, 0.0)).real());
    const double sign = (x < 0.0 && static_cast<long long>(std::floor(x)) % 2 != 0) ? -1.0 : 1.0;
    if (!std::isfinite(magnitude)) {
        throw Error(ErrorKind::OverflowRegime, "Gamma(" + std::to_string(x) + ") is not representable");
    }
    return sign * magnitude;
}

Complex stirling_main_term(Complex z, double sector_margin)
{
    if (z == 0.0 || std::abs(std::arg(z)) >= pi - sector_margin) {
        throw Error(ErrorKind::SectorViolation, "arg z too close to pi at z = " + describe(z));
    }
    return (z - 0.5) * std::log(z) - z + log_sqrt_two_pi;
}

double gamma_pole_residue(unsigned n)
{
    double r = 1.0;
    for (unsigned k = 1; k <= n; ++k) {
        r /= static_cast<double>(k);
    }
    return (n % 2 == 0) ? r : -r;
}

Complex beta(Complex x, Complex y)
{
    check_gamma_pole(x);
    check_gamma_pole(y);
    check_gamma_pole(x + y);
    Complex b = std::exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y));
    if (x.imag() == 0.0 && y.imag() == 0.0) {
        b = Complex(b.real(), 0.0);
    }
    if (!is_finite(b)) {
        throw Error(ErrorKind::OverflowRegime, "Beta" + describe(x) + describe(y) + " is not representable");
    }
    return b;
}

double to_double(const Rational &q)
{
    using boost::multiprecision::cpp_bin_float_50;
    const cpp_bin_float_50 num(boost::multiprecision::numerator(q));
    const cpp_bin_float_50 den(boost::multiprecision::denominator(q));
    return static_cast<double>(num / den);
}

BernoulliTable::BernoulliTable(std::size_t n_max)
{
    using boost::multiprecision::cpp_int;
    exact_.reserve(n_max + 1);
    exact_.emplace_back(1);
    for (std::size_t n = 1; n <= n_max; ++n) {
        // binom(n+1, j) built incrementally alongside the partial sum.
        cpp_int binom = 1;
        Rational acc = 0;
        for (std::size_t j = 0; j < n; ++j) {
            acc += Rational(binom) * exact_[j];
            binom = binom * (n + 1 - j) / (j + 1);
        }
        exact_.push_back(-acc / Rational(n + 1));
    }
    approx_.reserve(exact_.size());
    for (const auto &q : exact_) {
        approx_.push_back(to_double(q));
    }
}

const Rational &BernoulliTable::exact(std::size_t n) const
{
    if (n >= exact_.size()) {
        throw Error(ErrorKind::IndexBeyondTable,
                    "B_" + std::to_string(n) + " requested, table holds up to B_" + std::to_string(capacity()));
    }
    return exact_[n];
}

double BernoulliTable::value(std::size_t n) const
{
    if (n >= approx_.size()) {
        throw Error(ErrorKind::IndexBeyondTable,
                    "B_" + std::to_string(n) + " requested, table holds up to B_" + std::to_string(capacity()));
    }
    return approx_[n];
}

const BernoulliTable &BernoulliTable::instance()
{
    static const BernoulliTable table;
    return table;
}

} // namespace mbzeta
