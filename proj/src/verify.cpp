#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>

#include <mbzeta/specfun.hpp>
#include <mbzeta/verify.hpp>
#include <mbzeta/zeta.hpp>

namespace mbzeta
{

namespace
{

constexpr double unbounded_error = std::numeric_limits<double>::max();

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string fmt(Complex z)
{
    if (z.imag() == 0.0) {
        return fmt(z.real());
    }
    return fmt(z.real()) + (z.imag() < 0.0 ? "" : "+") + fmt(z.imag()) + "i";
}

ReportEntry error_entry(std::string id, double tolerance, const std::string &message)
{
    ReportEntry e;
    e.id = std::move(id);
    e.tolerance = tolerance;
    e.abs_err = unbounded_error;
    e.rel_err = unbounded_error;
    e.pass = false;
    e.error = message;
    return e;
}

// Absolute quadrature target that leaves headroom under the comparison
// tolerance; floored so unreachable comparison tolerances still terminate.
double quadrature_target(double tolerance, Complex rhs)
{
    const double scale = std::max(1.0, std::abs(rhs));
    return std::max(0.1 * tolerance, 1e-13) * scale;
}

Complex gamma_closed_form(Complex s, Complex base)
{
    return std::exp(log_gamma(s) - s * std::log(base));
}

std::vector<double> linspace(Range r, std::size_t n)
{
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = (n == 1) ? r.lo : r.lo + (r.hi - r.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return v;
}

// Rough size of (1/2 pi) int |F| along a path, from a handful of samples.
double path_scale(const IntegrandFamily &f, Complex z0, Complex z1, const QuadratureConfig &qcfg)
{
    double peak = 0.0;
    for (int i = 0; i <= 8; ++i) {
        peak = std::max(peak, std::abs(integrand_eval(f, z0 + (z1 - z0) * (i / 8.0), qcfg)));
    }
    return std::max(peak * std::abs(z1 - z0) / two_pi, std::numeric_limits<double>::min());
}

IntegrandFamily family_of(const IdentityCase &c)
{
    IntegrandFamily f{c.family, c.s, c.u, c.a};
    f.validate();
    return f;
}

} // namespace

std::string_view case_kind_name(CaseKind kind) noexcept
{
    switch (kind) {
        case CaseKind::MbPower:
            return "mb_power";
        case CaseKind::BinomialSeries:
            return "binomial_series";
        case CaseKind::TwoTerm:
            return "two_term";
        case CaseKind::DoubleSum:
            return "double_sum";
        case CaseKind::HurwitzKernel:
            return "hurwitz_kernel";
        case CaseKind::AppIntegral:
            return "app_integral";
        case CaseKind::CothExpansion:
            return "coth_expansion";
        case CaseKind::Rectangle:
            return "rectangle";
        case CaseKind::DecayHorizontal:
            return "decay_horizontal";
        case CaseKind::DecayVerticalShift:
            return "decay_vertical_shift";
        case CaseKind::Envelope:
            return "envelope";
        case CaseKind::TailStudy:
            return "tail_study";
    }
    return "unknown";
}

std::optional<CaseKind> parse_case_kind(std::string_view name) noexcept
{
    for (int k = 0; k <= static_cast<int>(CaseKind::TailStudy); ++k) {
        const auto kind = static_cast<CaseKind>(k);
        if (case_kind_name(kind) == name) {
            return kind;
        }
    }
    return std::nullopt;
}

bool is_identity_kind(CaseKind kind) noexcept
{
    return static_cast<int>(kind) <= static_cast<int>(CaseKind::CothExpansion);
}

std::string_view envelope_kind_name(EnvelopeKind kind) noexcept
{
    switch (kind) {
        case EnvelopeKind::GammaExp:
            return "gamma_exp";
        case EnvelopeKind::ZetaLeft:
            return "zeta_left";
        case EnvelopeKind::ZetaStrip:
            return "zeta_strip";
    }
    return "unknown";
}

std::optional<EnvelopeKind> parse_envelope_kind(std::string_view name) noexcept
{
    for (auto kind : {EnvelopeKind::GammaExp, EnvelopeKind::ZetaLeft, EnvelopeKind::ZetaStrip}) {
        if (envelope_kind_name(kind) == name) {
            return kind;
        }
    }
    return std::nullopt;
}

EnvelopeRanges default_envelope_ranges(EnvelopeKind kind)
{
    switch (kind) {
        case EnvelopeKind::GammaExp:
            return {{0.5, 3.0}, {1.0, 10.0}, {10.0, 40.0}, 0.25, 20};
        case EnvelopeKind::ZetaLeft:
            return {{-2.0, -0.5}, {5.0, 20.0}, {20.0, 60.0}, 0.25, 20};
        case EnvelopeKind::ZetaStrip:
            return {{0.25, 0.75}, {5.0, 20.0}, {20.0, 60.0}, 0.25, 20};
    }
    return {};
}

ReportEntry make_entry(std::string id, Complex lhs, Complex rhs, double tolerance)
{
    ReportEntry e;
    e.id = std::move(id);
    e.lhs = lhs;
    e.rhs = rhs;
    e.tolerance = tolerance;
    e.abs_err = std::abs(lhs - rhs);
    if (std::abs(rhs) > 0.0) {
        e.rel_err = e.abs_err / std::abs(rhs);
    } else {
        e.rel_err = (e.abs_err == 0.0) ? 0.0 : unbounded_error;
    }
    if (!std::isfinite(e.abs_err)) {
        e.abs_err = unbounded_error;
        e.rel_err = unbounded_error;
    }
    e.pass = e.abs_err <= tolerance || e.rel_err <= tolerance;
    return e;
}

ReportEntry check_identity(const IdentityCase &c, const SuiteSettings &settings)
{
    const auto &qcfg = settings.quadrature;
    if (!(c.tolerance > 0.0)) {
        throw Error(ErrorKind::DomainViolation, "case " + c.id + " has a non-positive tolerance");
    }
    switch (c.kind) {
        case CaseKind::MbPower: {
            const auto f = IntegrandFamily::gamma_power(c.s, c.u);
            const Complex rhs = gamma_closed_form(c.s, 1.0 + c.u);
            const auto lhs = integrate_vertical(f, {c.c, quadrature_target(c.tolerance, rhs)}, qcfg);
            return make_entry(c.id, lhs.value, rhs, c.tolerance);
        }
        case CaseKind::BinomialSeries: {
            if (!(c.u > 0.0 && c.u < 1.0)) {
                throw Error(ErrorKind::DomainViolation, "binomial series requires u in (0, 1)");
            }
            Complex term = gamma(c.s);
            CompensatedSum sum;
            for (std::size_t k = 0; k < c.terms; ++k) {
                sum += term;
                term *= (c.s + static_cast<double>(k)) / static_cast<double>(k + 1) * (-c.u);
            }
            return make_entry(c.id, sum.value(), gamma_closed_form(c.s, 1.0 + c.u), c.tolerance);
        }
        case CaseKind::TwoTerm: {
            if (!(c.a > 0.0 && c.b > 0.0)) {
                throw Error(ErrorKind::DomainViolation, "two_term requires a, b > 0");
            }
            const Complex rhs = gamma_closed_form(c.s, c.a + c.b);
            // a^{-z} b^{z-s} = b^{-s} (a/b)^{-z}; with a > b, z -> s - z swaps the roles.
            const bool swap = c.a > c.b;
            const double small = swap ? c.b : c.a;
            const double large = swap ? c.a : c.b;
            const double abscissa = swap ? c.s.real() - c.c : c.c;
            const auto f = IntegrandFamily::gamma_power(c.s, small / large);
            const Complex prefactor = std::exp(-c.s * std::log(large));
            const double target = quadrature_target(c.tolerance, rhs) / std::abs(prefactor);
            const auto line = integrate_vertical(f, {abscissa, target}, qcfg);
            return make_entry(c.id, prefactor * line.value, rhs, c.tolerance);
        }
        case CaseKind::DoubleSum: {
            const auto f = IntegrandFamily::zeta_zeta_gamma(c.s);
            const Complex rhs = gamma(c.s) * double_sum_oracle(c.s);
            const auto lhs = integrate_vertical(f, {c.c, quadrature_target(c.tolerance, rhs)}, qcfg);
            return make_entry(c.id, lhs.value, rhs, c.tolerance);
        }
        case CaseKind::HurwitzKernel: {
            const auto f = IntegrandFamily::zeta_gamma_power(c.s, c.a);
            const Complex rhs = gamma(c.s) * hurwitz_zeta(c.s, c.a);
            const auto lhs = integrate_vertical(f, {c.c, quadrature_target(c.tolerance, rhs)}, qcfg);
            return make_entry(c.id, lhs.value, rhs, c.tolerance);
        }
        case CaseKind::AppIntegral: {
            const Complex rhs = gamma(c.s) * (riemann_zeta(c.s - 1.0) - riemann_zeta(c.s));
            const auto lhs = integrate_real_improper(c.s, quadrature_target(c.tolerance, rhs), qcfg);
            return make_entry(c.id, lhs.value, rhs, c.tolerance);
        }
        case CaseKind::CothExpansion: {
            const auto &table = BernoulliTable::instance();
            if (2 * (c.terms - 1) > table.capacity()) {
                throw Error(ErrorKind::IndexBeyondTable, "coth expansion needs more Bernoulli numbers than tabulated");
            }
            CompensatedSum sum;
            double power_over_factorial = 1.0;
            for (std::size_t n = 0; n < c.terms; ++n) {
                if (n > 0) {
                    power_over_factorial *= c.x * c.x / static_cast<double>((2 * n - 1) * (2 * n));
                }
                sum += table.value(2 * n) * power_over_factorial;
            }
            const double rhs = 0.5 * c.x / std::tanh(0.5 * c.x);
            return make_entry(c.id, sum.value(), rhs, c.tolerance);
        }
        default:
            throw Error(ErrorKind::UnknownCaseKind,
                        std::string(case_kind_name(c.kind)) + " is not an identity case kind");
    }
}

ReportEntry check_rectangle(const IntegrandFamily &f, const RectangleSpec &rect, double tol,
                            const QuadratureConfig &qcfg, std::string id)
{
    CompensatedSum residues;
    for (const auto &p : enumerate_poles(f, rect, qcfg)) {
        residues += residue_at(f, p).value;
    }
    const Complex rhs = residues.value();
    const auto contour = integrate_rectangle(f, rect, quadrature_target(tol, rhs), qcfg);
    return make_entry(std::move(id), contour.value, rhs, tol);
}

DecayStudy decay_study(DecayKind kind, const IntegrandFamily &f, double c, const std::vector<double> &sweep,
                       double k, double tol, const QuadratureConfig &qcfg)
{
    DecayStudy study;
    for (const double step : sweep) {
        double magnitude = 0.0;
        if (kind == DecayKind::Horizontal) {
            const Complex from(c, step), to(c - k, step);
            const double target = tol * path_scale(f, from, to, qcfg);
            magnitude = std::abs(integrate_segment(f, from, to, target, qcfg).value);
        } else {
            if (f.tag != FamilyTag::GammaPower) {
                throw Error(ErrorKind::DomainViolation, "vertical shift decay is defined for GammaPower only");
            }
            const double abscissa = c - step;
            const double target = tol * path_scale(f, Complex(abscissa, -5.0), Complex(abscissa, 5.0), qcfg);
            magnitude = std::abs(integrate_line(f, abscissa, target, qcfg).value);
        }
        study.magnitudes.push_back(magnitude);
    }
    study.strictly_decreasing = true;
    for (std::size_t i = 1; i < study.magnitudes.size(); ++i) {
        const double prev = study.magnitudes[i - 1];
        const double ratio = prev > 0.0 ? study.magnitudes[i] / prev : unbounded_error;
        study.worst_ratio = std::max(study.worst_ratio, ratio);
        if (!(study.magnitudes[i] < prev)) {
            study.strictly_decreasing = false;
        }
    }
    return study;
}

EnvelopeFit fit_envelope(EnvelopeKind kind, const EnvelopeRanges &ranges)
{
    const auto &r = ranges;
    if (!(r.fit.lo < r.fit.hi) || !(r.test.lo < r.test.hi) || !(r.test.lo >= r.fit.hi) || r.grid < 2
        || !(r.sigma.lo <= r.sigma.hi) || !(r.fit.lo > 0.0)) {
        throw Error(ErrorKind::DomainViolation, "envelope ranges must be ordered with the test range above the fit range");
    }
    if (kind == EnvelopeKind::ZetaLeft && !(r.sigma.hi < 0.0)) {
        throw Error(ErrorKind::DomainViolation, "zeta_left requires sigma < 0");
    }
    if (kind == EnvelopeKind::ZetaStrip
        && !(r.delta > 0.0 && r.delta < 1.0 && r.sigma.lo >= r.delta && r.sigma.hi < 1.0 && r.fit.lo >= 2.0)) {
        throw Error(ErrorKind::DomainViolation, "zeta_strip requires 0 < delta <= sigma < 1 and |t| >= 2");
    }

    auto ratio = [&](double sigma, double t) {
        switch (kind) {
            case EnvelopeKind::GammaExp:
                return std::exp(log_gamma(Complex(sigma, t)).real() + std::abs(t));
            case EnvelopeKind::ZetaLeft:
                return std::abs(riemann_zeta(Complex(sigma, t))) / std::pow(std::abs(t), 0.5 - sigma);
            case EnvelopeKind::ZetaStrip:
                return std::abs(riemann_zeta(Complex(sigma, t))) / std::pow(std::abs(t), 1.0 - r.delta);
        }
        return 0.0;
    };

    EnvelopeFit fit;
    fit.kind = kind;
    fit.ranges = ranges;
    const auto sigmas = linspace(r.sigma, r.grid);
    for (const double sigma : sigmas) {
        for (const double t : linspace(r.fit, r.grid)) {
            fit.constant = std::max(fit.constant, ratio(sigma, t));
        }
    }
    for (const double sigma : sigmas) {
        for (const double t : linspace(r.test, r.grid)) {
            const double rel = ratio(sigma, t) / fit.constant;
            fit.worst_test_ratio = std::max(fit.worst_test_ratio, rel);
            if (rel > 1.0) {
                ++fit.violations;
            }
        }
    }
    return fit;
}

std::vector<ReportEntry> run_case(const IdentityCase &c, const SuiteSettings &settings)
{
    try {
        if (is_identity_kind(c.kind)) {
            return {check_identity(c, settings)};
        }
        switch (c.kind) {
            case CaseKind::Rectangle: {
                const RectangleSpec rect{c.c, c.c - c.left, c.T};
                return {check_rectangle(family_of(c), rect, c.tolerance, settings.quadrature, c.id)};
            }
            case CaseKind::DecayHorizontal:
            case CaseKind::DecayVerticalShift: {
                const auto kind =
                    c.kind == CaseKind::DecayHorizontal ? DecayKind::Horizontal : DecayKind::VerticalShift;
                const auto study = decay_study(kind, family_of(c), c.c, c.sweep, c.k, 1e-8, settings.quadrature);
                if (study.magnitudes.empty()) {
                    throw Error(ErrorKind::DomainViolation, "decay study needs at least one step");
                }
                // Strict decrease is encoded as "largest consecutive ratio below one".
                return {make_entry(c.id + "/monotone", study.worst_ratio, 0.0, 1.0 - 1e-12),
                        make_entry(c.id + "/final", study.magnitudes.back(), 0.0, c.tolerance)};
            }
            case CaseKind::Envelope: {
                const auto fit = fit_envelope(c.envelope, c.ranges);
                return {make_entry(c.id, fit.worst_test_ratio, 0.0, 1.0)};
            }
            case CaseKind::TailStudy: {
                const auto study = asymptotic_tail_terms(c.s, c.M);
                std::vector<ReportEntry> out;
                for (std::size_t m = 0; m < c.expected.size() && m < study.terms.size(); ++m) {
                    out.push_back(make_entry(c.id + "/t" + std::to_string(m), std::abs(study.terms[m]),
                                             c.expected[m], c.tolerance));
                }
                // Steps at or past the smallest term that fail to grow strictly.
                std::size_t stalls = 0;
                for (std::size_t m = study.min_index; m + 1 < study.terms.size(); ++m) {
                    if (!(std::abs(study.terms[m + 1]) > std::abs(study.terms[m]))) {
                        ++stalls;
                    }
                }
                out.push_back(make_entry(c.id + "/divergence", static_cast<double>(stalls), 0.0, 0.5));
                return out;
            }
            default:
                throw Error(ErrorKind::UnknownCaseKind, std::string(case_kind_name(c.kind)));
        }
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::UnknownCaseKind) {
            throw;
        }
        return {error_entry(c.id, c.tolerance, e.what())};
    }
}

std::vector<IdentityCase> default_cases()
{
    std::vector<IdentityCase> cases;
    auto add = [&](CaseKind kind, double tol, std::string id) -> IdentityCase & {
        IdentityCase c;
        c.kind = kind;
        c.tolerance = tol;
        c.id = std::string(case_kind_name(kind)) + "/" + id;
        cases.push_back(std::move(c));
        return cases.back();
    };
    constexpr double gamma_tol = 1e-8;
    constexpr double zeta_tol = 1e-6;

    const struct
    {
        Complex s;
        double u, c;
    } power_points[] = {{3.0, 0.5, 1.2}, {4.5, 0.25, 1.5}, {{3.0, 1.0}, 0.7, 1.2}};
    for (const auto &p : power_points) {
        auto &c = add(CaseKind::MbPower, gamma_tol, "s=" + fmt(p.s) + ",u=" + fmt(p.u));
        c.s = p.s;
        c.u = p.u;
        c.c = p.c;
    }

    const struct
    {
        Complex s;
        double u;
        std::size_t terms;
    } series_points[] = {{3.0, 0.5, 60}, {4.5, 0.25, 40}, {{3.0, 1.0}, 0.7, 150}};
    for (const auto &p : series_points) {
        auto &c = add(CaseKind::BinomialSeries, gamma_tol, "s=" + fmt(p.s) + ",u=" + fmt(p.u));
        c.s = p.s;
        c.u = p.u;
        c.terms = p.terms;
    }

    const struct
    {
        Complex s;
        double a, b, c;
    } two_term_points[] = {{3.5, 2.0, 3.0, 1.2}, {4.0, 1.0, 1.0, 2.0}, {{3.0, 2.0}, 2.0, 0.5, 1.5}};
    for (const auto &p : two_term_points) {
        auto &c = add(CaseKind::TwoTerm, gamma_tol, "s=" + fmt(p.s) + ",a=" + fmt(p.a) + ",b=" + fmt(p.b));
        c.s = p.s;
        c.a = p.a;
        c.b = p.b;
        c.c = p.c;
    }

    const struct
    {
        Complex s;
        double c;
    } double_sum_points[] = {{3.0, 1.5}, {4.0, 2.0}, {6.5, 3.25}, {{4.0, 2.0}, 2.0}};
    for (const auto &p : double_sum_points) {
        auto &c = add(CaseKind::DoubleSum, zeta_tol, "s=" + fmt(p.s));
        c.s = p.s;
        c.c = p.c;
    }

    const struct
    {
        Complex s;
        double a, c;
    } hurwitz_points[] = {{4.0, 2.0, 1.5}, {3.5, 3.0, 1.25}, {{5.0, 1.0}, 2.5, 2.0}};
    for (const auto &p : hurwitz_points) {
        auto &c = add(CaseKind::HurwitzKernel, zeta_tol, "s=" + fmt(p.s) + ",a=" + fmt(p.a));
        c.s = p.s;
        c.a = p.a;
        c.c = p.c;
    }

    for (const double s : {3.0, 4.0, 10.0}) {
        add(CaseKind::AppIntegral, zeta_tol, "s=" + fmt(s)).s = s;
    }

    const struct
    {
        double x;
        std::size_t terms;
    } coth_points[] = {{0.5, 10}, {1.0, 10}, {2.0, 16}};
    for (const auto &p : coth_points) {
        auto &c = add(CaseKind::CothExpansion, 1e-10, "x=" + fmt(p.x));
        c.x = p.x;
        c.terms = p.terms;
    }

    const struct
    {
        FamilyTag family;
        Complex s;
        double right, left, T;
    } rectangles[] = {
        {FamilyTag::ZetaZetaGamma, 4.0, 1.5, -4.5, 30.0},
        {FamilyTag::GammaPower, 3.0, 0.8, -3.5, 20.0},
        {FamilyTag::ZetaZetaGamma, 4.0, 1.4, 1.2, 5.0},
    };
    for (const auto &r : rectangles) {
        auto &c = add(CaseKind::Rectangle, zeta_tol,
                      std::string(family_name(r.family)) + ",s=" + fmt(r.s) + ",left=" + fmt(r.left));
        c.family = r.family;
        c.s = r.s;
        c.u = 0.5;
        c.c = r.right;
        c.left = r.left;
        c.T = r.T;
    }

    {
        auto &c = add(CaseKind::DecayHorizontal, 1e-6, "zetazeta,s=4");
        c.family = FamilyTag::ZetaZetaGamma;
        c.s = 4.0;
        c.c = 1.5;
        c.k = 8.0;
        c.sweep = {10.0, 20.0, 30.0};
    }
    {
        auto &c = add(CaseKind::DecayHorizontal, 1e-8, "gammapower,s=3,u=0.5");
        c.family = FamilyTag::GammaPower;
        c.s = 3.0;
        c.u = 0.5;
        c.c = 1.2;
        c.k = 8.0;
        c.sweep = {10.0, 20.0, 30.0};
    }
    {
        auto &c = add(CaseKind::DecayVerticalShift, 1e-6, "gammapower,s=3,u=0.5");
        c.family = FamilyTag::GammaPower;
        c.s = 3.0;
        c.u = 0.5;
        c.c = 0.5;
        c.sweep = {10.0, 20.0, 30.0};
    }

    for (auto kind : {EnvelopeKind::GammaExp, EnvelopeKind::ZetaLeft, EnvelopeKind::ZetaStrip}) {
        auto &c = add(CaseKind::Envelope, 1.0, std::string(envelope_kind_name(kind)));
        c.envelope = kind;
        c.ranges = default_envelope_ranges(kind);
    }

    {
        auto &c = add(CaseKind::TailStudy, 1e-4, "s=4");
        c.s = 4.0;
        c.M = 20;
        c.expected = {2.0738555, 1.0083493, 1.3360112};
    }
    return cases;
}

SuiteConfig default_suite_config()
{
    SuiteConfig config;
    config.cases = default_cases();
    return config;
}

VerificationReport run_suite(const SuiteConfig &config)
{
    std::vector<std::vector<ReportEntry>> results(config.cases.size());
    if (config.jobs <= 1) {
        for (std::size_t i = 0; i < config.cases.size(); ++i) {
            results[i] = run_case(config.cases[i], config.settings);
        }
    } else {
        // Bounded fan-out; results land in config order regardless of timing.
        for (std::size_t start = 0; start < config.cases.size(); start += config.jobs) {
            const std::size_t stop = std::min(config.cases.size(), start + config.jobs);
            std::vector<std::future<std::vector<ReportEntry>>> pending;
            for (std::size_t i = start; i < stop; ++i) {
                pending.push_back(std::async(std::launch::async, [&, i] {
                    return run_case(config.cases[i], config.settings);
                }));
            }
            for (std::size_t i = start; i < stop; ++i) {
                results[i] = pending[i - start].get();
            }
        }
    }

    VerificationReport report;
    for (auto &r : results) {
        for (auto &e : r) {
            report.overall_pass = report.overall_pass && e.pass;
            report.entries.push_back(std::move(e));
        }
    }
    report.environment = {
        {"precision", "binary64"},
        {"pole_guard", fmt(config.settings.quadrature.pole_guard)},
        {"max_evaluations", std::to_string(config.settings.quadrature.max_evaluations)},
        {"zeta_correction_order", std::to_string(ZetaEvalConfig{}.correction_order)},
        {"zeta_em_terms", "max(20, ceil(2|Im s|))"},
        {"quadrature_rule", "adaptive Gauss-Kronrod 7/15"},
    };
    return report;
}

} // namespace mbzeta
