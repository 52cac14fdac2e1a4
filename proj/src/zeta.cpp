#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <mbzeta/zeta.hpp>

namespace mbzeta
{

namespace
{

const double log_two = std::log(2.0);
const double log_pi = std::log(pi);

// Only |s| this close to the origin is evaluated by Euler-Maclaurin on the
// reflected side; reflecting there would hit the pole of zeta(1 - s).
constexpr double reflection_exclusion_radius = 0.25;

std::string describe(Complex z)
{
    std::ostringstream os;
    os.precision(17);
    os << "(" << z.real() << "," << z.imag() << ")";
    return os.str();
}

// B_{2k} / (2k)! for k = 1..32.
const std::vector<double> &em_coefficients()
{
    static const auto coeffs = [] {
        const auto &table = BernoulliTable::instance();
        std::vector<double> c;
        double factorial = 1.0;
        for (std::size_t k = 1; 2 * k <= table.capacity(); ++k) {
            factorial *= static_cast<double>((2 * k - 1) * (2 * k));
            c.push_back(table.value(2 * k) / factorial);
        }
        return c;
    }();
    return coeffs;
}

// Sum_{n>=0} (n + a)^{-s} by direct summation of n_terms terms plus the
// Euler-Maclaurin remainder with corrections up to B_{order}.
Complex euler_maclaurin(Complex s, double a, int n_terms, int order)
{
    CompensatedSum sum;
    for (int n = 0; n < n_terms; ++n) {
        sum += std::exp(-s * std::log(n + a));
    }
    const double x = n_terms + a;
    const double log_x = std::log(x);
    const Complex x_pow = std::exp(-s * log_x);
    sum += x * x_pow / (s - 1.0);
    sum += 0.5 * x_pow;

    const auto &coeffs = em_coefficients();
    const double inv_x2 = 1.0 / (x * x);
    Complex derivative = s * x_pow / x;
    for (int k = 1; 2 * k <= order; ++k) {
        sum += coeffs[k - 1] * derivative;
        derivative *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k) * inv_x2;
    }
    return sum.value();
}

} // namespace

void ZetaEvalConfig::validate() const
{
    if (em_terms && *em_terms < 1) {
        throw Error(ErrorKind::DomainViolation, "em_terms must be >= 1");
    }
    if (correction_order < 0 || correction_order % 2 != 0
        || static_cast<std::size_t>(correction_order) > BernoulliTable::instance().capacity()) {
        throw Error(ErrorKind::DomainViolation, "correction_order must be even and within the Bernoulli table");
    }
    // The default split sits exactly on the critical line.
    if (!(reflect_below <= 0.5)) {
        throw Error(ErrorKind::DomainViolation, "reflect_below must not exceed 1/2");
    }
}

int ZetaEvalConfig::terms_for(Complex s) const
{
    if (em_terms) {
        return *em_terms;
    }
    return std::max(20, static_cast<int>(std::ceil(2.0 * std::abs(s.imag()))));
}

Complex zeta_functional_factor(Complex s)
{
    const Complex log_part = s * log_two + (s - 1.0) * log_pi + log_gamma(1.0 - s);
    return std::exp(log_part) * sin_pi(0.5 * s);
}

Complex riemann_zeta(Complex s, const ZetaEvalConfig &cfg)
{
    cfg.validate();
    if (std::abs(s - 1.0) <= default_pole_guard) {
        throw Error(ErrorKind::PoleProximity, "zeta has a pole at s = 1; s = " + describe(s));
    }
    if (std::abs(s.imag()) > cfg.max_imag) {
        throw Error(ErrorKind::OverflowRegime, "|Im s| beyond the validity window at s = " + describe(s));
    }

    Complex value;
    if (s.real() < cfg.reflect_below && std::abs(s) > reflection_exclusion_radius) {
        if (s.imag() == 0.0 && s.real() < 0.0 && std::fmod(s.real(), 2.0) == 0.0) {
            return 0.0;
        }
        const Complex reflected = 1.0 - s;
        value = zeta_functional_factor(s)
                * euler_maclaurin(reflected, 1.0, cfg.terms_for(reflected), cfg.correction_order);
    } else {
        value = euler_maclaurin(s, 1.0, cfg.terms_for(s), cfg.correction_order);
    }
    if (!is_finite(value)) {
        throw Error(ErrorKind::OverflowRegime, "zeta is not representable at s = " + describe(s));
    }
    if (s.imag() == 0.0) {
        value = Complex(value.real(), 0.0);
    }
    return value;
}

Complex hurwitz_zeta(Complex s, double a, const ZetaEvalConfig &cfg)
{
    cfg.validate();
    if (!(s.real() > 1.0)) {
        throw Error(ErrorKind::DomainViolation, "hurwitz_zeta requires Re(s) > 1; s = " + describe(s));
    }
    if (!(a >= 1.0)) {
        throw Error(ErrorKind::DomainViolation, "hurwitz_zeta requires a >= 1; a = " + std::to_string(a));
    }
    if (std::abs(s.imag()) > cfg.max_imag) {
        throw Error(ErrorKind::OverflowRegime, "|Im s| beyond the validity window at s = " + describe(s));
    }
    Complex value = euler_maclaurin(s, a, cfg.terms_for(s), cfg.correction_order);
    if (s.imag() == 0.0) {
        value = Complex(value.real(), 0.0);
    }
    return value;
}

Rational zeta_negative_integer(unsigned n)
{
    const Rational b = bernoulli(n + 1);
    const Rational v = b / Rational(n + 1);
    return (n % 2 == 0) ? v : Rational(-v);
}

namespace
{

// alpha (alpha - 1) ... (alpha - r + 1)
Complex falling(Complex alpha, int r)
{
    Complex p = 1.0;
    for (int i = 0; i < r; ++i) {
        p *= alpha - static_cast<double>(i);
    }
    return p;
}

// r-th derivative of x^{1-s} - x^{-s}.
Complex pair_derivative(Complex s, double x, int r)
{
    const double lx = std::log(x);
    return falling(1.0 - s, r) * std::exp((1.0 - s - static_cast<double>(r)) * lx)
           - falling(-s, r) * std::exp((-s - static_cast<double>(r)) * lx);
}

} // namespace

Complex double_sum_oracle(Complex s, double tol)
{
    if (!(s.real() > 2.0)) {
        throw Error(ErrorKind::DomainViolation, "double sum requires Re(s) > 2; s = " + describe(s));
    }
    // B_2/2!, B_4/4!, B_6/6!, B_8/8!
    constexpr std::array<double, 4> coeff = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0};

    long long cutoff = 16;
    while (2.0 * std::abs(coeff[3] * pair_derivative(s, static_cast<double>(cutoff), 7)) > tol) {
        cutoff *= 2;
        if (cutoff > (1LL << 26)) {
            throw Error(ErrorKind::ToleranceUnreachable, "double sum cutoff exceeded for s = " + describe(s));
        }
    }

    CompensatedSum sum;
    for (long long k = 2; k < cutoff; ++k) {
        const double lk = std::log(static_cast<double>(k));
        sum += static_cast<double>(k - 1) * std::exp(-s * lk);
    }
    const double x = static_cast<double>(cutoff);
    const double lx = std::log(x);
    sum += std::exp((2.0 - s) * lx) / (s - 2.0) - std::exp((1.0 - s) * lx) / (s - 1.0);
    sum += 0.5 * (x - 1.0) * std::exp(-s * lx);
    for (int j = 0; j < 3; ++j) {
        sum += -coeff[j] * pair_derivative(s, x, 2 * j + 1);
    }
    return sum.value();
}

} // namespace mbzeta
