#include <array>
#include <cmath>
#include <limits>

#include <mbzeta/quadrature.hpp>

namespace mbzeta
{

namespace
{

// Kronrod abscissae on [0, 1), descending; odd indices are Gauss nodes.
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};

constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};

constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

constexpr double eps = std::numeric_limits<double>::epsilon();

struct PanelEstimate
{
    Complex kronrod;
    double error;
    double roundoff;
};

class AdaptiveIntegrator
{
public:
    AdaptiveIntegrator(const RealToComplex &f, double tol, double total_length, const QuadratureConfig &cfg)
        : f_(f), tol_(tol), total_length_(total_length), cfg_(cfg)
    {}

    void panel(double a, double b)
    {
        const PanelEstimate est = gauss_kronrod(a, b);
        const double local_tol = tol_ * (b - a) / total_length_;
        const double mid = 0.5 * (a + b);
        const bool too_narrow = (b - a) < 64.0 * eps * std::max(std::abs(a), std::abs(b)) || mid <= a || mid >= b;
        if (est.error <= local_tol || est.error <= est.roundoff || too_narrow) {
            sum_ += est.kronrod;
            error_ += std::max(est.error, est.roundoff);
            return;
        }
        panel(a, mid);
        panel(mid, b);
    }

    QuadratureResult result() const
    {
        return {sum_.value(), error_, 0.0, evaluations_};
    }

private:
    Complex eval(double x)
    {
        if (++evaluations_ > cfg_.max_evaluations) {
            throw Error(ErrorKind::ToleranceUnreachable,
                        "evaluation budget of " + std::to_string(cfg_.max_evaluations) + " exhausted");
        }
        return f_(x);
    }

    PanelEstimate gauss_kronrod(double a, double b)
    {
        const double center = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        const Complex fc = eval(center);
        Complex kronrod = wgk[7] * fc;
        Complex gauss = wg[3] * fc;
        double absolute = wgk[7] * std::abs(fc);
        for (int j = 0; j < 7; ++j) {
            const double dx = half * xgk[j];
            const Complex f1 = eval(center - dx);
            const Complex f2 = eval(center + dx);
            kronrod += wgk[j] * (f1 + f2);
            absolute += wgk[j] * (std::abs(f1) + std::abs(f2));
            if (j % 2 == 1) {
                gauss += wg[j / 2] * (f1 + f2);
            }
        }
        kronrod *= half;
        gauss *= half;
        absolute *= std::abs(half);
        return {kronrod, std::abs(kronrod - gauss), 50.0 * eps * absolute};
    }

    const RealToComplex &f_;
    double tol_;
    double total_length_;
    const QuadratureConfig &cfg_;
    CompensatedSum sum_;
    double error_ = 0.0;
    std::size_t evaluations_ = 0;
};

} // namespace

QuadratureResult integrate_adaptive(const RealToComplex &f, double a, double b, double tol,
                                    const QuadratureConfig &cfg, std::size_t initial_panels)
{
    if (a == b) {
        return {};
    }
    if (!(tol > 0.0)) {
        throw Error(ErrorKind::DomainViolation, "quadrature tolerance must be positive");
    }
    const double sign = (b < a) ? -1.0 : 1.0;
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    const std::size_t panels = std::max<std::size_t>(1, initial_panels);

    AdaptiveIntegrator integrator(f, tol, hi - lo, cfg);
    const double width = (hi - lo) / static_cast<double>(panels);
    for (std::size_t i = 0; i < panels; ++i) {
        const double pa = lo + width * static_cast<double>(i);
        const double pb = (i + 1 == panels) ? hi : lo + width * static_cast<double>(i + 1);
        integrator.panel(pa, pb);
    }
    QuadratureResult r = integrator.result();
    r.value *= sign;
    return r;
}

} // namespace mbzeta
