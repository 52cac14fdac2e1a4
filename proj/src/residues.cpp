#include <algorithm>
#include <cmath>
#include <sstream>

#include <mbzeta/residues.hpp>
#include <mbzeta/specfun.hpp>
#include <mbzeta/zeta.hpp>

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

// Gamma(s + n) / n!, kept in log space until the end.
Complex gamma_ratio(Complex s, int n)
{
    return std::exp(log_gamma(s + static_cast<double>(n)) - log_gamma(Complex(n + 1.0, 0.0)));
}

} // namespace

std::string_view pole_kind_name(PoleKind kind) noexcept
{
    switch (kind) {
        case PoleKind::ZetaPole:
            return "zeta";
        case PoleKind::GammaPole:
            return "gamma";
        case PoleKind::OddCombined:
            return "odd_combined";
    }
    return "unknown";
}

PoleLocation pole_at(const IntegrandFamily &f, int n)
{
    if (f.tag == FamilyTag::GammaPower) {
        if (n <= 0) {
            return {n, PoleKind::GammaPole};
        }
    } else {
        if (n == 1) {
            return {n, PoleKind::ZetaPole};
        }
        if (n == 0) {
            return {n, PoleKind::GammaPole};
        }
        if (n < 0 && (-n) % 2 == 1) {
            return {n, PoleKind::OddCombined};
        }
    }
    throw Error(ErrorKind::NotAPole,
                "z = " + std::to_string(n) + " is not a pole of the " + std::string(family_name(f.tag)) + " integrand");
}

std::vector<PoleLocation> enumerate_poles(const IntegrandFamily &f, const RectangleSpec &rect,
                                          const QuadratureConfig &qcfg)
{
    f.validate();
    rect.validate();
    const double left = rect.left();
    const double right = rect.c;
    const double guard = qcfg.pole_guard;

    std::vector<PoleLocation> poles;
    for (const Complex p : singular_points(f, left - 1.0, right + 1.0)) {
        const bool on_vertical = std::abs(p.real() - left) <= guard || std::abs(p.real() - right) <= guard;
        const bool within_height = std::abs(p.imag()) <= rect.T + guard;
        const bool on_horizontal = std::abs(std::abs(p.imag()) - rect.T) <= guard && p.real() >= left - guard
                                   && p.real() <= right + guard;
        if ((on_vertical && within_height) || on_horizontal) {
            throw Error(ErrorKind::PoleOnBoundary, "pole " + describe(p) + " lies on the rectangle boundary");
        }
        const bool inside = p.real() > left && p.real() < right && std::abs(p.imag()) < rect.T;
        if (!inside) {
            continue;
        }
        const double top = f.has_zeta() ? 1.0 : 0.0;
        const bool left_factor = p.imag() == 0.0 && p.real() == std::nearbyint(p.real()) && p.real() <= top;
        if (!left_factor) {
            throw Error(ErrorKind::DomainViolation,
                        "rectangle encloses the pole " + describe(p) + " of the s-dependent factors");
        }
        poles.push_back(pole_at(f, static_cast<int>(p.real())));
    }
    return poles;
}

ResidueTerm residue_at(const IntegrandFamily &f, const PoleLocation &p)
{
    f.validate();
    const PoleLocation checked = pole_at(f, p.position);
    if (checked.kind != p.kind) {
        throw Error(ErrorKind::NotAPole, "pole kind does not match position " + std::to_string(p.position));
    }
    const Complex s = f.s;
    Complex value;
    switch (f.tag) {
        case FamilyTag::GammaPower: {
            const int n = -p.position;
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            value = sign * gamma_ratio(s, n) * std::pow(f.u, n);
            break;
        }
        case FamilyTag::ZetaZetaGamma:
            if (p.kind == PoleKind::ZetaPole) {
                value = riemann_zeta(s - 1.0) * gamma(s - 1.0);
            } else if (p.kind == PoleKind::GammaPole) {
                value = -0.5 * riemann_zeta(s) * gamma(s);
            } else {
                const int n = -p.position;
                const double z_neg = to_double(zeta_negative_integer(static_cast<unsigned>(n)));
                value = -z_neg * riemann_zeta(s + static_cast<double>(n)) * gamma_ratio(s, n);
            }
            break;
        case FamilyTag::ZetaGammaPower: {
            const double log_base = std::log(f.a - 1.0);
            if (p.kind == PoleKind::ZetaPole) {
                value = gamma(s - 1.0) * std::exp((1.0 - s) * log_base);
            } else if (p.kind == PoleKind::GammaPole) {
                value = -0.5 * gamma(s) * std::exp(-s * log_base);
            } else {
                const int n = -p.position;
                const double z_neg = to_double(zeta_negative_integer(static_cast<unsigned>(n)));
                value = -z_neg * gamma_ratio(s, n) * std::exp((-s - static_cast<double>(n)) * log_base);
            }
            break;
        }
    }
    return {p, value};
}

QuadratureResult numerical_residue(const IntegrandFamily &f, Complex z0, double radius, double tol,
                                   const QuadratureConfig &qcfg)
{
    f.validate();
    if (!(radius > 0.0) || !(tol > 0.0)) {
        throw Error(ErrorKind::DomainViolation, "radius and tolerance must be positive");
    }
    for (const Complex p : singular_points(f, z0.real() - radius - 1.0, z0.real() + radius + 1.0)) {
        const double d = std::abs(p - z0);
        if (std::abs(d - radius) <= qcfg.pole_guard) {
            throw Error(ErrorKind::PoleOnCircle, "circle of radius " + std::to_string(radius) + " about "
                                                     + describe(z0) + " passes through " + describe(p));
        }
        if (d < radius && d > qcfg.pole_guard) {
            throw Error(ErrorKind::DomainViolation, "disk about " + describe(z0) + " contains the further pole "
                                                        + describe(p));
        }
    }

    // (1/2 pi i) oint F dz = (1/N) sum_j F(z_j) (z_j - z0) on equally spaced nodes.
    auto trapezoid = [&](std::size_t n) {
        CompensatedSum sum;
        for (std::size_t j = 0; j < n; ++j) {
            const Complex offset = std::polar(radius, two_pi * static_cast<double>(j) / static_cast<double>(n));
            sum += integrand_eval(f, z0 + offset, qcfg) * offset;
        }
        return sum.value() / static_cast<double>(n);
    };

    std::size_t n = 32;
    std::size_t evaluations = n;
    Complex previous = trapezoid(n);
    while (true) {
        n *= 2;
        evaluations += n;
        if (evaluations > qcfg.max_evaluations || n > (1u << 20)) {
            throw Error(ErrorKind::ToleranceUnreachable, "circle quadrature did not converge about " + describe(z0));
        }
        const Complex current = trapezoid(n);
        const double change = std::abs(current - previous);
        if (change <= tol || change <= 1e-15 * std::abs(current)) {
            return {current, change, 0.0, evaluations};
        }
        previous = current;
    }
}

TailStudy asymptotic_tail_terms(Complex s, std::size_t M)
{
    if (!(s.real() > 2.0)) {
        throw Error(ErrorKind::DomainViolation, "tail study requires Re(s) > 2");
    }
    if (M > max_tail_terms) {
        throw Error(ErrorKind::DomainViolation, "tail study is capped at M = " + std::to_string(max_tail_terms));
    }
    TailStudy study;
    for (std::size_t m = 0; m <= M; ++m) {
        const int n = static_cast<int>(2 * m + 1);
        const double z_neg = to_double(zeta_negative_integer(static_cast<unsigned>(n)));
        study.terms.push_back(z_neg * riemann_zeta(s + static_cast<double>(n)) * gamma_ratio(s, n));
    }

    double smallest = std::abs(study.terms.front());
    for (std::size_t m = 1; m < study.terms.size(); ++m) {
        if (std::abs(study.terms[m]) < smallest) {
            smallest = std::abs(study.terms[m]);
            study.min_index = m;
        }
    }
    // growth_onset: first index from which every later step strictly grows.
    study.growth_onset = study.terms.size() - 1;
    while (study.growth_onset > 0
           && std::abs(study.terms[study.growth_onset]) > std::abs(study.terms[study.growth_onset - 1])) {
        --study.growth_onset;
    }
    return study;
}

} // namespace mbzeta
