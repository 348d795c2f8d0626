#include <doctest.h>

#include "fermient/analytic.hpp"
#include "fermient/error.hpp"
#include "fermient/fcs.hpp"

#include <cmath>
#include <numbers>

using namespace fermient;
using namespace fermient::analytic;
using std::numbers::ln2;
using std::numbers::pi;

namespace {

double gaussian_entropy(double c2) { return 0.5 * std::log(2 * pi * std::numbers::e * c2); }

double binomial_coefficient(int n, int k) {
    double c = 1.0;
    for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;
    return c;
}

struct Edge {
    double nx, ny, length;
};

// Four sides of an a x b rectangle with outward normals.
std::vector<Edge> rectangle_edges(double a, double b) {
    return {{1, 0, b}, {-1, 0, b}, {0, 1, a}, {0, -1, a}};
}

} // namespace

TEST_CASE("QPC switch generating function") {
    CHECK(std::abs(qpc_switch_chi({0.0, 50.0}, 1.3) - 1.0) < 1e-15);
    CHECK(qpc_switch_chi({1.0, 100.0}, 1.0).real() == doctest::Approx(0.79194).epsilon(1e-4));
    CHECK(qpc_switch_chi({1.0, 100.0}, 1.0).real() ==
          doctest::Approx(std::exp(-std::log(100.0) / (2 * pi * pi))).epsilon(1e-14));
    CHECK(qpc_counting_angle(0.5, pi) == doctest::Approx(pi / 2).epsilon(1e-14));
    CHECK(qpc_switch_chi({0.5, 300.0}, pi).real() == doctest::Approx(std::pow(300.0, -0.125)).epsilon(1e-13));
    CHECK(qpc_counting_angle(1.0, 0.4 + 2 * pi) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK_THROWS_AS((void)qpc_switch_chi({1.0, 1.0}, 0.1), InvalidInput);
    CHECK_THROWS_AS((void)qpc_counting_angle(1.5, 0.1), InvalidInput);
}

TEST_CASE("QPC switch report examples") {
    const auto unit = qpc_switch_report({1.0, std::exp(pi * pi)});
    CHECK(unit.report.c2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(unit.report.s_a == doctest::Approx(pi * pi / 3).epsilon(1e-12));
    CHECK(unit.report.bound_gaussian_ok);

    const auto closed = qpc_switch_report({0.0, 1e4});
    CHECK(closed.report.s_a == 0.0);
    CHECK(closed.report.s_m == 0.0);
    CHECK_FALSE(closed.gaussian_asymptote.has_value());

    const auto far = qpc_switch_report({1.0, 1e4});
    CHECK(far.report.c2 == doctest::Approx(4 * std::log(10.0) / (pi * pi)).epsilon(1e-12));
    REQUIRE(far.gaussian_asymptote.has_value());
    CHECK(*far.gaussian_asymptote == doctest::Approx(1.38437).epsilon(1e-4));
    CHECK(std::abs(far.report.s_m - *far.gaussian_asymptote) < 0.05);
    CHECK(far.negative_mass < 0.01);

    CHECK_THROWS_AS((void)qpc_switch_report({1.0, 0.5}), InvalidInput);
    CHECK_THROWS_AS((void)qpc_switch_report({-0.1, 10.0}), InvalidInput);
}

TEST_CASE("QPC FFT weights match a direct trapezoid sum") {
    const QpcSwitchParams p{0.6, 500.0};
    const std::size_t grid = 256;
    const auto w = qpc_charge_weights(p, grid);
    REQUIRE(w.size() == grid);
    double total = 0.0;
    for (const double x : w) total += x;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    for (int n : {-7, -1, 0, 1, 3, 12}) {
        std::complex<double> sum = 0.0;
        for (std::size_t k = 0; k < grid; ++k) {
            const double l = -pi + 2 * pi * static_cast<double>(k) / grid;
            sum += qpc_switch_chi(p, l) * std::polar(1.0, -l * n);
        }
        CHECK(w[static_cast<std::size_t>(n + 128)] == doctest::Approx(sum.real() / grid).epsilon(1e-10));
    }
    CHECK_THROWS_AS((void)qpc_charge_weights(p, 7), InvalidInput);
}

TEST_CASE("QPC measurement entropy approaches the Gaussian value") {
    double prev = 1e9;
    for (const double ratio : {1e2, 1e3, 1e4}) {
        const auto r = qpc_switch_report({1.0, ratio});
        const double gap = std::abs(r.report.s_m - *r.gaussian_asymptote);
        CHECK(gap < prev);
        prev = gap;
    }
    for (const double ratio : {1e3, 1e4, 1e5}) {
        const auto r = qpc_switch_report({1.0, ratio});
        CHECK(r.report.s_m <= r.report.delta_s);
        CHECK(r.report.bound_gaussian_ok);
    }
    // At short switching ratios the leading-order chi is not a characteristic
    // function: clipping its negative weights inflates S_m past the bound, and
    // the report says so.
    const auto short_switch = qpc_switch_report({1.0, 1e2});
    CHECK(short_switch.negative_mass > 0.01);
    CHECK(short_switch.report.bound_gaussian_ok == (short_switch.report.s_m <= short_switch.report.delta_s));

    const auto partial = qpc_switch_report({0.5, 1e4});
    CHECK(partial.report.bound_gaussian_ok);
    CHECK(partial.negative_mass < 1e-6);
}

TEST_CASE("binomial examples") {
    const auto one = binomial_report(1, 0.5);
    CHECK(one.report.s_a == doctest::Approx(ln2).epsilon(1e-14));
    CHECK(one.report.s_m == doctest::Approx(ln2).epsilon(1e-14));
    CHECK(std::abs(one.report.s_res) < 1e-14);

    for (const double d : {0.0, 1.0}) {
        const auto r = binomial_report(25, d);
        CHECK(r.report.s_a == 0.0);
        CHECK(r.report.s_m == 0.0);
        CHECK_FALSE(r.asymptote.has_value());
    }

    const auto ten = binomial_report(10, 0.5);
    CHECK(ten.report.s_a == doctest::Approx(6.93147).epsilon(1e-5));
    CHECK(*ten.asymptote == doctest::Approx(1.87707).epsilon(1e-4));
    double exact = 0.0;
    for (int k = 0; k <= 10; ++k) {
        const double p = binomial_coefficient(10, k) / 1024.0;
        exact -= p * std::log(p);
    }
    CHECK(ten.report.s_m == doctest::Approx(exact).epsilon(1e-12));

    CHECK_THROWS_AS((void)binomial_report(0, 0.5), InvalidInput);
    CHECK_THROWS_AS((void)binomial_report(3, 1.2), InvalidInput);
}

TEST_CASE("binomial probabilities and convergence") {
    const auto p = binomial_probabilities(7, 0.3);
    for (int k = 0; k <= 7; ++k)
        CHECK(p[static_cast<std::size_t>(k)] ==
              doctest::Approx(binomial_coefficient(7, k) * std::pow(0.3, k) * std::pow(0.7, 7 - k)).epsilon(1e-12));
    double prev = 1e9;
    for (const std::int64_t n : {100, 1000, 2000}) {
        const auto r = binomial_report(n, 0.5);
        const double gap = std::abs(r.report.s_m - *r.asymptote);
        CHECK(gap < prev);
        CHECK(r.report.s_res >= 0.0);
        prev = gap;
    }
    CHECK(prev < 0.01);
}

TEST_CASE("Luttinger examples") {
    const auto floor = luttinger_report(0.7, 1.0);
    CHECK(floor.report.c2 == 0.0);
    CHECK(floor.report.s_m == doctest::Approx(0.17655).epsilon(1e-4));
    CHECK_FALSE(floor.gaussian_asymptote.has_value());

    CHECK(luttinger_report(1.0, std::exp(2 * pi)).report.c2 == doctest::Approx(1.0).epsilon(1e-12));
    const auto r = luttinger_report(0.5, 100.0);
    CHECK(r.report.c2 == doctest::Approx(0.36649).epsilon(1e-4));
    CHECK(r.report.c1 == doctest::Approx(100.0 / pi).epsilon(1e-14));
    CHECK(r.report.s_a == doctest::Approx(std::log(100.0) / 3).epsilon(1e-14));
    CHECK(*r.gaussian_asymptote == doctest::Approx(gaussian_entropy(r.report.c2)).epsilon(1e-14));

    CHECK_THROWS_AS((void)luttinger_report(0.0, 10.0), InvalidInput);
    CHECK_THROWS_AS((void)luttinger_report(1.0, 0.5), InvalidInput);
}

TEST_CASE("Luttinger cumulants from finite differences of ln chi") {
    const double g = 0.8, kfl = 250.0, h = 1e-3;
    const auto log_chi = [&](double l) { return std::log(luttinger_chi(g, kfl, l)); };
    const auto c1 = (log_chi(h) - log_chi(-h)).imag() / (2 * h);
    const auto c2 = -(log_chi(h) - 2.0 * log_chi(0.0) + log_chi(-h)).real() / (h * h);
    const auto r = luttinger_report(g, kfl);
    CHECK(c1 == doctest::Approx(r.report.c1).epsilon(1e-8));
    CHECK(c2 == doctest::Approx(r.report.c2).epsilon(1e-6));
}

TEST_CASE("Widom coefficients") {
    const auto one = widom_coefficients({{1.0}}, {{pi}});
    CHECK(one.c1 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(one.c2 == doctest::Approx(1 / (pi * pi)).epsilon(1e-14));
    CHECK(widom_coefficients({{1.0}}, {{0.0}}).c1 == 0.0);

    const auto sq = widom_coefficients({{1.0, 1.0}}, {{pi, pi}});
    CHECK(sq.c1 == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(sq.c2 == doctest::Approx(1 / (pi * pi)).epsilon(1e-14));
    CHECK(sq.predicted_variance(10.0) == doctest::Approx(10.0 * std::log(10.0) / (pi * pi)));

    // Edge-by-edge evaluation of the double boundary integral for unequal sides.
    const double a = 1.7, b = 0.6, p = 2.2, q = 0.9;
    double boundary = 0.0;
    for (const auto& e : rectangle_edges(a, b))
        for (const auto& f : rectangle_edges(p, q)) boundary += std::abs(e.nx * f.nx + e.ny * f.ny) * e.length * f.length;
    const auto rect = widom_coefficients({{a, b}}, {{p, q}});
    CHECK(rect.c2 == doctest::Approx(boundary / std::pow(2 * pi, 3)).epsilon(1e-14));
    CHECK(rect.c1 == doctest::Approx(a * b * p * q / (4 * pi * pi)).epsilon(1e-14));

    CHECK_THROWS_AS((void)widom_coefficients({{1.0, 1.0, 1.0}}, {{1.0, 1.0, 1.0}}), InvalidInput);
    CHECK_THROWS_AS((void)widom_coefficients({{1.0}}, {{1.0, 1.0}}), InvalidInput);
}

TEST_CASE("Widom U of the counting function is -lambda^2/2") {
    CHECK(widom_u(counting_function(pi / 2)) == doctest::Approx(-pi * pi / 8).epsilon(1e-10));
    CHECK(std::abs(widom_u(counting_function(0.0))) < 1e-14);
    CHECK(widom_u(counting_function(1.0)) == doctest::Approx(-0.5).epsilon(1e-10));
    for (double l = -2.8; l <= 2.8; l += 0.2)
        CHECK(std::abs(widom_u(counting_function(l)) - WidomSpec::counting_u(l)) < 1e-8);

    CHECK(widom_u([](double t) { return std::complex<double>(t * t); }) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK_THROWS_AS((void)widom_u([](double t) { return std::complex<double>(t + 1.0); }), InvalidInput);
    CHECK_THROWS_AS((void)counting_function(pi), InvalidInput);
    CHECK_THROWS_AS((void)counting_function(-pi), InvalidInput);
}
