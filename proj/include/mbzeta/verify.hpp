#ifndef MBZETA_VERIFY_HPP
#define MBZETA_VERIFY_HPP

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <mbzeta/contour.hpp>
#include <mbzeta/residues.hpp>

namespace mbzeta
{

enum class CaseKind
{
    // Line integral of Gamma(z)Gamma(s-z)u^{-z} against Gamma(s)(1+u)^{-s}.
    MbPower,
    // Partial sums of sum_k Gamma(s+k)/k! (-u)^k against the same closed form.
    BinomialSeries,
    // Two-base Mellin-Barnes integral against Gamma(s)/(a+b)^s.
    TwoTerm,
    // zeta-zeta-Gamma line integral against Gamma(s) times the double sum.
    DoubleSum,
    // zeta-Gamma-power line integral against Gamma(s) zeta(s, a).
    HurwitzKernel,
    // Real-axis integral against Gamma(s)(zeta(s-1) - zeta(s)).
    AppIntegral,
    // Partial sums of (x/2)coth(x/2) = sum B_{2n} x^{2n}/(2n)!.
    CothExpansion,
    Rectangle,
    DecayHorizontal,
    DecayVerticalShift,
    Envelope,
    TailStudy,
};

std::string_view case_kind_name(CaseKind kind) noexcept;
std::optional<CaseKind> parse_case_kind(std::string_view name) noexcept;
bool is_identity_kind(CaseKind kind) noexcept;

enum class EnvelopeKind
{
    // |Gamma(x+iy)| <= C e^{-|y|}
    GammaExp,
    // |zeta(sigma+it)| <= C |t|^{1/2 - sigma}, sigma < 0
    ZetaLeft,
    // |zeta(sigma+it)| <= C |t|^{1 - delta}, delta <= sigma < 1
    ZetaStrip,
};

std::string_view envelope_kind_name(EnvelopeKind kind) noexcept;
std::optional<EnvelopeKind> parse_envelope_kind(std::string_view name) noexcept;

struct Range
{
    double lo = 0.0;
    double hi = 0.0;
};

struct EnvelopeRanges
{
    // Real-part range sampled (x for gamma_exp, sigma for the zeta bounds).
    Range sigma;
    Range fit;
    Range test;
    double delta = 0.25;
    std::size_t grid = 20;
};

EnvelopeRanges default_envelope_ranges(EnvelopeKind kind);

/// One configured check. Only the fields relevant to `kind` are read.
struct IdentityCase
{
    std::string id;
    CaseKind kind = CaseKind::MbPower;
    double tolerance = 1e-8;

    FamilyTag family = FamilyTag::GammaPower;
    Complex s{3.0, 0.0};
    double u = 0.5;
    double a = 2.0;
    double b = 3.0;
    double c = 1.2;
    double x = 1.0;
    std::size_t terms = 10;

    // Rectangle: right edge c, left edge `left`, half-height T.
    double left = 0.0;
    double T = 10.0;

    // Decay studies: horizontal heights or vertical shifts, and the width k
    // of the horizontal segment.
    std::vector<double> sweep;
    double k = 8.0;

    EnvelopeKind envelope = EnvelopeKind::GammaExp;
    EnvelopeRanges ranges = default_envelope_ranges(EnvelopeKind::GammaExp);

    // Tail study: number of terms and reference magnitudes for t_0, t_1, ...
    std::size_t M = 20;
    std::vector<double> expected;
};

struct ReportEntry
{
    std::string id;
    Complex lhs{};
    Complex rhs{};
    double abs_err = 0.0;
    double rel_err = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    // Set when the check raised instead of producing a value.
    std::string error;
};

/// Fills abs_err, rel_err and pass from lhs, rhs and tolerance.
ReportEntry make_entry(std::string id, Complex lhs, Complex rhs, double tolerance);

struct VerificationReport
{
    std::vector<ReportEntry> entries;
    std::map<std::string, std::string> environment;
    bool overall_pass = true;
};

struct EnvelopeFit
{
    EnvelopeKind kind = EnvelopeKind::GammaExp;
    EnvelopeRanges ranges;
    double constant = 0.0;
    // max over test samples of |f| / (C envelope); the bound holds iff <= 1.
    double worst_test_ratio = 0.0;
    std::size_t violations = 0;

    bool pass() const noexcept
    {
        return violations == 0;
    }
};

struct DecayStudy
{
    std::vector<double> magnitudes;
    bool strictly_decreasing = false;
    // Largest ratio of consecutive magnitudes.
    double worst_ratio = 0.0;
};

enum class DecayKind
{
    Horizontal,
    VerticalShift,
};

/// Quadrature and comparison tolerances shared by a suite run.
struct SuiteSettings
{
    QuadratureConfig quadrature;
};

ReportEntry check_identity(const IdentityCase &c, const SuiteSettings &settings = {});

ReportEntry check_rectangle(const IntegrandFamily &f, const RectangleSpec &rect, double tol,
                            const QuadratureConfig &qcfg = {}, std::string id = "rectangle");

/// Horizontal: |integrate_segment| along [c + iT, c - k + iT] for each T in
/// the sweep. VerticalShift: |integrate_line| at abscissa c - k for each k
/// (GammaPower only).
DecayStudy decay_study(DecayKind kind, const IntegrandFamily &f, double c, const std::vector<double> &sweep,
                       double k = 8.0, double tol = 1e-12, const QuadratureConfig &qcfg = {});

EnvelopeFit fit_envelope(EnvelopeKind kind, const EnvelopeRanges &ranges);

/// Entries produced by one configured case; identity kinds yield exactly one.
std::vector<ReportEntry> run_case(const IdentityCase &c, const SuiteSettings &settings = {});

struct SuiteConfig
{
    std::vector<IdentityCase> cases;
    SuiteSettings settings;
    std::size_t jobs = 1;
};

/// The built-in battery: every identity kind at three or more parameter
/// points, three rectangles, both decay studies, three envelope fits and
/// one tail study.
std::vector<IdentityCase> default_cases();

SuiteConfig default_suite_config();

VerificationReport run_suite(const SuiteConfig &config);

} // namespace mbzeta

#endif
