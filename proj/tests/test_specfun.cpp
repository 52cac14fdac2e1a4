#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <mbzeta/specfun.hpp>

#include "oracles.hpp"

using namespace mbzeta;
using doctest::Approx;

namespace
{

bool near_integer(Complex z, double margin)
{
    return std::abs(z.imag()) < margin && std::abs(z.real() - std::round(z.real())) < margin;
}

ErrorKind kind_of(auto &&f)
{
    try {
        f();
    } catch (const Error &e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::UsageError;
}

} // namespace

TEST_CASE("log_gamma reference values")
{
    CHECK(std::abs(log_gamma(1.0)) < 1e-15);
    CHECK(log_gamma(0.5).real() == Approx(0.5 * std::log(pi)).epsilon(1e-14));
    CHECK(log_gamma(0.5).imag() == 0.0);

    const Complex z{3.0, 4.0};
    const Complex ref = oracle::log_gamma(z);
    CHECK(std::abs(log_gamma(z) - ref) < 1e-10);
    CHECK(std::abs(log_gamma(z) - Complex{-1.7566267846037841, 4.7426644380346579}) < 1e-12);
}

TEST_CASE("log_gamma matches the product oracle off the axis")
{
    for (Complex z : {Complex{0.3, 0.2}, Complex{2.5, -7.0}, Complex{12.0, 1.0}, Complex{0.7, 15.0}}) {
        CAPTURE(z);
        CHECK(std::abs(log_gamma(z) - oracle::log_gamma(z)) < 1e-9);
    }
}

TEST_CASE("log_gamma is a continuous lift satisfying the recurrence")
{
    for (double y = -40.0; y <= 40.0; y += 0.37) {
        for (double x : {-3.3, -0.7, 0.2, 1.9, 6.1}) {
            const Complex z{x, y};
            const Complex r = log_gamma(z + 1.0) - log_gamma(z) - std::log(z);
            CAPTURE(z);
            CHECK(std::abs(r) < 1e-10 * std::max(1.0, std::abs(log_gamma(z))));
        }
    }
    // No jumps along a vertical line in the right half-plane.
    Complex prev = log_gamma(Complex{1.5, -60.0});
    for (double y = -60.0; y <= 60.0; y += 0.05) {
        const Complex cur = log_gamma(Complex{1.5, y});
        CHECK(std::abs(cur.imag() - prev.imag()) < 1.0);
        prev = cur;
    }
}

TEST_CASE("gamma reference values")
{
    CHECK(mbzeta::gamma(1.0) == Approx(1.0).epsilon(1e-15));
    CHECK(mbzeta::gamma(5.0) == Approx(24.0).epsilon(1e-14));
    CHECK(mbzeta::gamma(2.5) == Approx(0.75 * std::sqrt(pi)).epsilon(1e-14));
    CHECK(mbzeta::gamma(-0.5) == Approx(-2.0 * std::sqrt(pi)).epsilon(1e-13));
    CHECK(mbzeta::gamma(-1.5) == Approx(4.0 / 3.0 * std::sqrt(pi)).epsilon(1e-13));
    for (unsigned n = 1; n <= 20; ++n) {
        CAPTURE(n);
        CHECK(mbzeta::gamma(static_cast<double>(n)) == Approx(oracle::factorial(n - 1)).epsilon(1e-13));
    }
    CHECK(mbzeta::gamma(Complex{5.0, 0.0}).imag() == 0.0);
}

TEST_CASE("gamma recurrence on random points")
{
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> r(-50.0, 50.0);
    int checked = 0;
    while (checked < 10000) {
        const Complex z{r(rng), r(rng)};
        if (std::abs(z) > 50.0 || std::abs(z + 1.0) > 50.0 || distance_to_gamma_pole(z) < 1e-3) {
            continue;
        }
        const Complex g1 = mbzeta::gamma(z + 1.0);
        if (std::abs(g1) < 1e-280 || std::abs(g1) > 1e280) {
            continue;
        }
        ++checked;
        const double err = std::abs(g1 - z * mbzeta::gamma(z)) / std::abs(g1);
        if (err >= 1e-11) {
            CAPTURE(z);
            CHECK(err < 1e-11);
        }
    }
    CHECK(checked == 10000);
}

TEST_CASE("gamma reflection and duplication on grids")
{
    for (double x = -4.85; x <= 5.0; x += 0.35) {
        for (double y = -6.0; y <= 6.0; y += 0.75) {
            const Complex z{x, y};
            if (near_integer(z, 1e-3) || near_integer(1.0 - z, 1e-3)) {
                continue;
            }
            CAPTURE(z);
            const Complex refl = mbzeta::gamma(z) * mbzeta::gamma(1.0 - z) * sin_pi(z) / pi;
            CHECK(std::abs(refl - 1.0) < 1e-10);
        }
    }
    for (double x = -2.9; x <= 8.0; x += 0.45) {
        for (double y = -5.0; y <= 5.0; y += 0.8) {
            const Complex z{x, y};
            if (distance_to_gamma_pole(z) < 1e-2 || distance_to_gamma_pole(z + 0.5) < 1e-2 ||
                distance_to_gamma_pole(2.0 * z) < 1e-2) {
                continue;
            }
            CAPTURE(z);
            const Complex lhs = mbzeta::gamma(2.0 * z);
            const Complex rhs = std::pow(Complex{2.0}, 2.0 * z - 1.0) / std::sqrt(pi) * mbzeta::gamma(z) * mbzeta::gamma(z + 0.5);
            CHECK(oracle::rel_err(lhs, rhs) < 1e-10);
        }
    }
}

TEST_CASE("gamma conjugation symmetry")
{
    for (Complex z : {Complex{0.3, 2.0}, Complex{-2.5, 0.7}, Complex{10.0, -30.0}}) {
        CHECK(std::abs(mbzeta::gamma(std::conj(z)) - std::conj(mbzeta::gamma(z))) <= 1e-15 * std::abs(mbzeta::gamma(z)));
        CHECK(std::abs(log_gamma(std::conj(z)) - std::conj(log_gamma(z))) <= 1e-14 * std::abs(log_gamma(z)));
    }
}

TEST_CASE("vertical-strip modulus law")
{
    for (double sigma : {-1.5, 0.25, 1.0, 2.5}) {
        for (double t : {20.0, 40.0, 80.0, -20.0, -80.0}) {
            const double model =
                std::sqrt(two_pi) * std::pow(std::abs(t), sigma - 0.5) * std::exp(-pi * std::abs(t) / 2.0);
            const double ratio = std::abs(mbzeta::gamma(Complex{sigma, t})) / model;
            CAPTURE(sigma);
            CAPTURE(t);
            CHECK(ratio >= 1.0 - 5.0 / std::abs(t));
            CHECK(ratio <= 1.0 + 5.0 / std::abs(t));
        }
    }
}

TEST_CASE("poles are rejected")
{
    CHECK(kind_of([] { log_gamma(0.0); }) == ErrorKind::PoleProximity);
    CHECK(kind_of([] { mbzeta::gamma(Complex{-3.0, 5e-7}); }) == ErrorKind::PoleProximity);
    CHECK(kind_of([] { mbzeta::gamma(-7.0); }) == ErrorKind::PoleProximity);
    CHECK_NOTHROW(mbzeta::gamma(Complex{-3.0, 1e-4}));
    CHECK(distance_to_gamma_pole(Complex{-2.25, 0.0}) == Approx(0.25));
    CHECK(distance_to_gamma_pole(Complex{1.5, 2.0}) == Approx(std::sqrt(1.5 * 1.5 + 4.0)));
}

TEST_CASE("Stirling main term and its defect")
{
    const auto defect = [](Complex z) { return log_gamma(z) - stirling_main_term(z); };
    CHECK(defect(10.0).real() == Approx(0.0083305634333629).epsilon(1e-8));
    CHECK(defect(100.0).real() == Approx(8.3333055563491e-4).epsilon(1e-8));
    CHECK(std::abs(defect(10.0) - (std::log(362880.0) - stirling_main_term(10.0))) < 1e-13);

    const double d50 = std::abs(defect({1.0, 50.0})) * std::abs(Complex{1.0, 50.0});
    const double d100 = std::abs(defect({1.0, 100.0})) * std::abs(Complex{1.0, 100.0});
    CHECK(d50 / d100 < 2.0);
    CHECK(d100 / d50 < 2.0);

    for (double r : {5.0, 20.0, 200.0}) {
        for (double arg = -2.9; arg <= 2.9; arg += 0.29) {
            const Complex z = std::polar(r, arg);
            CHECK(std::abs(defect(z)) * r < 0.2);
        }
    }
    CHECK(kind_of([] { stirling_main_term(std::polar(10.0, pi - 0.05)); }) == ErrorKind::SectorViolation);
    CHECK_NOTHROW(stirling_main_term(std::polar(10.0, pi - 0.05), 0.01));
}

TEST_CASE("Gamma pole residues")
{
    CHECK(gamma_pole_residue(0) == 1.0);
    CHECK(gamma_pole_residue(1) == -1.0);
    CHECK(gamma_pole_residue(3) == Approx(-1.0 / 6.0));
    for (unsigned n = 0; n < 8; ++n) {
        const double h = 1e-5;
        const Complex z{-static_cast<double>(n), h};
        const Complex approx = mbzeta::gamma(z) * Complex{0.0, h};
        CHECK(approx.real() == Approx(gamma_pole_residue(n)).epsilon(1e-8));
    }
}

TEST_CASE("Beta function")
{
    CHECK(beta(1.0, 1.0).real() == Approx(1.0).epsilon(1e-15));
    CHECK(beta(0.5, 0.5).real() == Approx(pi).epsilon(1e-14));
    CHECK(beta(2.0, 3.0).real() ==
          Approx(oracle::factorial(1) * oracle::factorial(2) / oracle::factorial(4)).epsilon(1e-14));
    CHECK(beta(2.0, 3.0).imag() == 0.0);
    const Complex x{0.7, 1.3}, y{2.2, -0.4};
    CHECK(std::abs(beta(x, y) - beta(y, x)) < 1e-15 * std::abs(beta(x, y)));
    CHECK(oracle::rel_err(beta(x, y), mbzeta::gamma(x) * mbzeta::gamma(y) / mbzeta::gamma(x + y)) < 1e-13);
    CHECK(kind_of([] { beta(-1.0, 0.5); }) == ErrorKind::PoleProximity);
    CHECK(kind_of([] { beta(0.5, -1.5); }) == ErrorKind::PoleProximity);
}

TEST_CASE("Bernoulli table")
{
    using R = Rational;
    CHECK(bernoulli(0) == R(1));
    CHECK(bernoulli(1) == R(-1, 2));
    CHECK(bernoulli(2) == R(1, 6));
    CHECK(bernoulli(12) == R(-691, 2730));

    const auto &table = BernoulliTable::instance();
    CHECK(table.capacity() == 64);
    const auto reference = oracle::bernoulli_numbers(64);
    for (std::size_t n = 0; n <= 64; ++n) {
        CAPTURE(n);
        CHECK(table.exact(n) == reference[n]);
        CHECK(table.value(n) == Approx(oracle::to_double(reference[n])).epsilon(1e-15));
        if (n >= 3 && n % 2 == 1) {
            CHECK(table.exact(n) == 0);
        }
    }
    for (std::size_t n = 1; n <= 64; ++n) {
        R sum = 0;
        R binom = 1;
        for (std::size_t j = 0; j <= n; ++j) {
            sum += binom * table.exact(j);
            binom = binom * R(n + 1 - j) / R(j + 1);
        }
        CAPTURE(n);
        CHECK(sum == 0);
    }
    CHECK(kind_of([&] { table.exact(65); }) == ErrorKind::IndexBeyondTable);
    CHECK(kind_of([&] { table.value(100); }) == ErrorKind::IndexBeyondTable);

    const BernoulliTable small(10);
    CHECK(small.capacity() == 10);
    CHECK(small.exact(10) == R(5, 66));
}

TEST_CASE("sin_pi and cos_pi")
{
    for (int n = -10; n <= 10; ++n) {
        CHECK(sin_pi(static_cast<double>(n)) == 0.0);
        CHECK(cos_pi(n + 0.5) == 0.0);
    }
    CHECK(sin_pi(0.5) == 1.0);
    CHECK(sin_pi(1.0 / 6.0) == Approx(0.5).epsilon(1e-15));
    const Complex z{0.3, 0.8};
    CHECK(std::abs(sin_pi(z) - std::sin(pi * z)) < 1e-15 * std::abs(std::sin(pi * z)) * 4);
    CHECK(std::abs(cos_pi(z) - std::cos(pi * z)) < 1e-15 * std::abs(std::cos(pi * z)) * 4);
}
