#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <mbzeta/contour.hpp>
#include <mbzeta/specfun.hpp>

namespace mbzeta
{

namespace
{

std::string describe(Complex z)
{
    std::ostringstream os;
    os.precision(17);
    os << "(" << z.real() << "," << z.imag() << ")";
    return os.str();
}

double segment_distance(Complex p, Complex z0, Complex z1)
{
    const Complex d = z1 - z0;
    const double len2 = std::norm(d);
    if (len2 == 0.0) {
        return std::abs(p - z0);
    }
    const double t = std::clamp(((p - z0) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(p - (z0 + t * d));
}

// Modulus of the factors other than the Gamma pair, bounded on Re z = c.
double line_factor_bound(const IntegrandFamily &f, double c)
{
    const double sigma = f.s.real();
    switch (f.tag) {
        case FamilyTag::GammaPower:
            return std::exp(-c * std::log(f.u));
        case FamilyTag::ZetaZetaGamma:
            return riemann_zeta(c).real() * riemann_zeta(sigma - c).real();
        case FamilyTag::ZetaGammaPower:
            return riemann_zeta(c).real() * std::exp((c - sigma) * std::log(f.a - 1.0));
    }
    return 0.0;
}

// Lower bound on -d/dW log|Gamma(x + iW)| for W >= width.
double gamma_decay_rate(double x, double width)
{
    if (x > 0.0) {
        return std::atan(width / x);
    }
    return 0.5 * pi;
}

} // namespace

std::string_view family_name(FamilyTag tag) noexcept
{
    switch (tag) {
        case FamilyTag::GammaPower:
            return "gammapower";
        case FamilyTag::ZetaZetaGamma:
            return "zetazeta";
        case FamilyTag::ZetaGammaPower:
            return "zetagammapower";
    }
    return "unknown";
}

std::optional<FamilyTag> parse_family(std::string_view name) noexcept
{
    if (name == "gammapower") {
        return FamilyTag::GammaPower;
    }
    if (name == "zetazeta") {
        return FamilyTag::ZetaZetaGamma;
    }
    if (name == "zetagammapower") {
        return FamilyTag::ZetaGammaPower;
    }
    return std::nullopt;
}

IntegrandFamily IntegrandFamily::gamma_power(Complex s, double u)
{
    IntegrandFamily f{FamilyTag::GammaPower, s, u, 2.0};
    f.validate();
    return f;
}

IntegrandFamily IntegrandFamily::zeta_zeta_gamma(Complex s)
{
    IntegrandFamily f{FamilyTag::ZetaZetaGamma, s, 1.0, 2.0};
    f.validate();
    return f;
}

IntegrandFamily IntegrandFamily::zeta_gamma_power(Complex s, double a)
{
    IntegrandFamily f{FamilyTag::ZetaGammaPower, s, 1.0, a};
    f.validate();
    return f;
}

void IntegrandFamily::validate() const
{
    if (!is_finite(s)) {
        throw Error(ErrorKind::DomainViolation, "s must be finite");
    }
    switch (tag) {
        case FamilyTag::GammaPower:
            if (!(u > 0.0 && u <= 1.0)) {
                throw Error(ErrorKind::DomainViolation, "GammaPower requires u in (0, 1]");
            }
            break;
        case FamilyTag::ZetaZetaGamma:
            if (!(s.real() > 2.0)) {
                throw Error(ErrorKind::DomainViolation, "ZetaZetaGamma requires Re(s) > 2");
            }
            break;
        case FamilyTag::ZetaGammaPower:
            if (!(s.real() > 2.0)) {
                throw Error(ErrorKind::DomainViolation, "ZetaGammaPower requires Re(s) > 2");
            }
            if (!(a >= 2.0)) {
                throw Error(ErrorKind::DomainViolation, "ZetaGammaPower requires a >= 2");
            }
            break;
    }
}

void RectangleSpec::validate() const
{
    if (!(k > 0.0) || !(T > 0.0) || !std::isfinite(c) || !std::isfinite(k) || !std::isfinite(T)) {
        throw Error(ErrorKind::DomainViolation, "rectangle requires finite c, k > 0 and T > 0");
    }
}

std::array<std::pair<Complex, Complex>, 4> RectangleSpec::edges() const
{
    const Complex lower_right(c, -T), upper_right(c, T);
    const Complex upper_left(c - k, T), lower_left(c - k, -T);
    return {{{lower_right, upper_right}, {upper_right, upper_left}, {upper_left, lower_left}, {lower_left, lower_right}}};
}

std::vector<Complex> singular_points(const IntegrandFamily &f, double re_min, double re_max)
{
    std::vector<Complex> points;
    // Poles of Gamma(z) and, for the zeta families, zeta(z).
    const double top = f.has_zeta() ? 1.0 : 0.0;
    const double first = std::min(top, std::floor(re_max));
    for (double n = first; n >= std::ceil(re_min); n -= 1.0) {
        const bool removable = f.has_zeta() && n < 0.0 && std::fmod(n, 2.0) == 0.0;
        if (!removable) {
            points.emplace_back(n, 0.0);
        }
    }
    // Poles of Gamma(s - z) at s + n, and of zeta(s - z) at s - 1.
    if (f.tag == FamilyTag::ZetaZetaGamma && f.s.real() - 1.0 >= re_min && f.s.real() - 1.0 <= re_max) {
        points.push_back(f.s - 1.0);
    }
    for (double n = std::max(0.0, std::ceil(re_min - f.s.real())); f.s.real() + n <= re_max; n += 1.0) {
        points.push_back(f.s + n);
    }
    return points;
}

double distance_to_singularities(const IntegrandFamily &f, Complex z0, Complex z1)
{
    const double lo = std::min(z0.real(), z1.real()) - 2.0;
    const double hi = std::max(z0.real(), z1.real()) + 2.0;
    double best = std::numeric_limits<double>::infinity();
    for (const Complex p : singular_points(f, lo, hi)) {
        best = std::min(best, segment_distance(p, z0, z1));
    }
    return best;
}

Complex integrand_eval(const IntegrandFamily &f, Complex z, const QuadratureConfig &qcfg)
{
    if (distance_to_singularities(f, z, z) <= qcfg.pole_guard) {
        throw Error(ErrorKind::PoleProximity, "integrand evaluated at a pole: z = " + describe(z));
    }
    const Complex log_pair = log_gamma(z) + log_gamma(f.s - z);
    Complex value;
    switch (f.tag) {
        case FamilyTag::GammaPower:
            value = std::exp(log_pair - z * std::log(f.u));
            break;
        case FamilyTag::ZetaZetaGamma:
            value = riemann_zeta(z) * riemann_zeta(f.s - z) * std::exp(log_pair);
            break;
        case FamilyTag::ZetaGammaPower:
            value = riemann_zeta(z) * std::exp(log_pair + (z - f.s) * std::log(f.a - 1.0));
            break;
    }
    if (!is_finite(value)) {
        throw Error(ErrorKind::OverflowRegime, "integrand not representable at z = " + describe(z));
    }
    return value;
}

void validate_line(const IntegrandFamily &f, const VerticalLineSpec &line)
{
    f.validate();
    const double right = f.s.real() - line.c;
    if (!(line.tol > 0.0)) {
        throw Error(ErrorKind::DomainViolation, "line tolerance must be positive");
    }
    if (f.tag == FamilyTag::GammaPower) {
        if (!(line.c >= 0.5)) {
            throw Error(ErrorKind::DomainViolation, "c violates c >= 1/2");
        }
        if (!(right >= 0.5)) {
            throw Error(ErrorKind::DomainViolation, "c violates Re(s) - c >= 1/2");
        }
    } else {
        if (!(line.c > 1.0)) {
            throw Error(ErrorKind::DomainViolation, "c violates c > 1");
        }
        if (!(right > 1.0)) {
            throw Error(ErrorKind::DomainViolation, "c violates Re(s) - c > 1");
        }
    }
}

QuadratureResult integrate_vertical(const IntegrandFamily &f, const VerticalLineSpec &line,
                                    const QuadratureConfig &qcfg)
{
    validate_line(f, line);
    return integrate_line(f, line.c, line.tol, qcfg);
}

QuadratureResult integrate_line(const IntegrandFamily &f, double c, double tol, const QuadratureConfig &qcfg)
{
    f.validate();
    if (f.has_zeta() && !(c > 1.0 && f.s.real() - c > 1.0)) {
        throw Error(ErrorKind::DomainViolation, "zeta factors are not absolutely convergent on Re z = c");
    }
    for (const Complex p : singular_points(f, c - 1.0, c + 1.0)) {
        if (std::abs(p.real() - c) <= qcfg.pole_guard) {
            throw Error(ErrorKind::PoleOnPath, "line Re z = " + std::to_string(c) + " passes through " + describe(p));
        }
    }

    const double factor = line_factor_bound(f, c);
    const double im_s = f.s.imag();
    const double x_left = c;
    const double x_right = f.s.real() - c;

    auto pair_modulus = [&](double y) {
        return std::exp((log_gamma(Complex(c, y)) + log_gamma(f.s - Complex(c, y))).real());
    };
    // Sum of both one-sided tail bounds beyond |y| = T.
    auto tail_bound = [&](double T) {
        double total = 0.0;
        for (const double y : {T, -T}) {
            const double w_left = std::abs(y);
            const double w_right = std::abs(y - im_s);
            const double rate = 0.9 * (gamma_decay_rate(x_left, w_left) + gamma_decay_rate(x_right, w_right));
            total += factor * pair_modulus(y) / (two_pi * rate);
        }
        return total;
    };

    const double reference = std::abs(im_s) + 10.0;
    const double envelope =
        factor * std::max(pair_modulus(reference), pair_modulus(-reference)) * std::exp(pi * reference);
    double height = std::max(reference, std::log(envelope / tol) / pi + 5.0);
    double tail = tail_bound(height);
    while (tail > 0.5 * tol) {
        height += 2.0;
        if (height > 4000.0) {
            throw Error(ErrorKind::ToleranceUnreachable, "no truncation height meets the tail tolerance");
        }
        tail = tail_bound(height);
    }

    const RealToComplex integrand = [&](double y) { return integrand_eval(f, Complex(c, y), qcfg); };
    const auto panels = static_cast<std::size_t>(std::ceil(2.0 * height));
    QuadratureResult r = integrate_adaptive(integrand, -height, height, 0.5 * tol * two_pi, qcfg, panels);
    r.value /= two_pi;
    r.err_estimate /= two_pi;
    r.tail_bound = tail;
    return r;
}

QuadratureResult integrate_segment(const IntegrandFamily &f, Complex z0, Complex z1, double tol,
                                   const QuadratureConfig &qcfg)
{
    if (z0 == z1) {
        return {};
    }
    if (distance_to_singularities(f, z0, z1) <= qcfg.pole_guard) {
        throw Error(ErrorKind::PoleOnPath, "segment " + describe(z0) + " -> " + describe(z1) + " meets a pole");
    }
    const Complex h = z1 - z0;
    const double scale = std::abs(h) / two_pi;
    const RealToComplex integrand = [&](double t) { return integrand_eval(f, z0 + t * h, qcfg); };
    const auto panels = static_cast<std::size_t>(std::max(1.0, std::ceil(std::abs(h))));
    QuadratureResult r = integrate_adaptive(integrand, 0.0, 1.0, tol / scale, qcfg, panels);
    r.value *= h / Complex(0.0, two_pi);
    r.err_estimate *= scale;
    return r;
}

QuadratureResult integrate_rectangle(const IntegrandFamily &f, const RectangleSpec &rect, double tol,
                                     const QuadratureConfig &qcfg)
{
    rect.validate();
    QuadratureResult total;
    CompensatedSum sum;
    for (const auto &[from, to] : rect.edges()) {
        const QuadratureResult edge = integrate_segment(f, from, to, 0.25 * tol, qcfg);
        sum += edge.value;
        total.err_estimate += edge.err_estimate;
        total.evaluations += edge.evaluations;
    }
    total.value = sum.value();
    return total;
}

namespace
{

// (e^t - 1)^{-2} - t^{-2} + t^{-1} - 5/12 for small t, from the Bernoulli
// expansion of 1/(e^t - 1) and its derivative.
double small_t_remainder(double t)
{
    const auto &table = BernoulliTable::instance();
    double sum = -t / 12.0;
    double factorial = 2.0;
    for (int n = 3; n <= 24; ++n) {
        factorial *= n;
        const double b = table.value(static_cast<std::size_t>(n));
        if (b == 0.0) {
            continue;
        }
        sum += b / factorial * ((1.0 - n) * std::pow(t, n - 2) - std::pow(t, n - 1));
    }
    return sum;
}

} // namespace

QuadratureResult integrate_real_improper(Complex s, double tol, const QuadratureConfig &qcfg)
{
    if (!(s.real() > 2.0)) {
        throw Error(ErrorKind::DomainViolation, "integral requires Re(s) > 2; s = " + describe(s));
    }
    if (!(tol > 0.0)) {
        throw Error(ErrorKind::DomainViolation, "tolerance must be positive");
    }
    constexpr double split = 1e-3;
    const double log_split = std::log(split);
    const double sigma = s.real();

    // Leading three terms of the expansion at t = 0, integrated exactly.
    Complex head = std::exp((s - 2.0) * log_split) / (s - 2.0) - std::exp((s - 1.0) * log_split) / (s - 1.0)
                   + (5.0 / 12.0) * std::exp(s * log_split) / s;

    const RealToComplex near_zero = [&](double t) {
        return std::exp((s - 1.0) * std::log(t)) * small_t_remainder(t);
    };
    const QuadratureResult remainder = integrate_adaptive(near_zero, 0.0, split, 0.25 * tol, qcfg);

    auto tail_bound = [&](double L) {
        const double q = 1.0 - std::exp(-L);
        return std::exp((sigma - 1.0) * std::log(L) - 2.0 * L) / (q * q * (2.0 - std::max(sigma - 1.0, 0.0) / L));
    };
    double cutoff = std::max(40.0, sigma);
    while (tail_bound(cutoff) > 0.25 * tol) {
        cutoff += 10.0;
    }

    const RealToComplex body = [&](double t) {
        const double d = std::expm1(t);
        return std::exp((s - 1.0) * std::log(t)) / (d * d);
    };
    const auto panels = static_cast<std::size_t>(std::ceil(cutoff));
    const QuadratureResult main = integrate_adaptive(body, split, cutoff, 0.5 * tol, qcfg, panels);

    CompensatedSum sum;
    sum += head;
    sum += remainder.value;
    sum += main.value;
    QuadratureResult r;
    r.value = sum.value();
    r.err_estimate = remainder.err_estimate + main.err_estimate;
    r.tail_bound = tail_bound(cutoff);
    r.evaluations = remainder.evaluations + main.evaluations;
    return r;
}

} // namespace mbzeta
