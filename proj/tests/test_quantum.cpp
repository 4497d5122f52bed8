#include "support.hpp"

#include "zapsim/error.hpp"
#include "zapsim/quantum.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

using namespace zapsim;
using boost::math::quadrature::gauss_kronrod;
using testing::kPi;

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

// Fock-state wavefunctions, vacuum variance 1/2.
double psi0(double x) { return std::pow(kPi, -0.25) * std::exp(-x * x / 2.0); }
double psi1(double x) { return std::pow(kPi, -0.25) * std::sqrt(2.0) * x * std::exp(-x * x / 2.0); }

double integrate(const std::function<double(double)>& f, double a, double b)
{
    return gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}

double sample_variance(const std::vector<double>& v)
{
    double mean = 0.0;
    for (double x : v)
        mean += x;
    mean /= static_cast<double>(v.size());
    double acc = 0.0;
    for (double x : v)
        acc += (x - mean) * (x - mean);
    return acc / static_cast<double>(v.size() - 1);
}

} // namespace

TEST_CASE("quadrature pdf values")
{
    CHECK(quadrature_pdf(HeraldedState(0.0), 0.0) == doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-15));
    CHECK(quadrature_pdf(HeraldedState(1.0), 0.0) == 0.0);
    const double expected = 0.62 * (2.0 * std::exp(-1.0) / std::sqrt(kPi)) + 0.38 * (std::exp(-1.0) / std::sqrt(kPi));
    CHECK(quadrature_pdf(HeraldedState(0.62), 1.0) == doctest::Approx(expected).epsilon(1e-15));
    for (double eta : {0.0, 0.3, 0.62, 1.0})
    {
        for (double x : {-2.5, -0.7, 0.0, 0.4, 3.1})
        {
            const double mix = eta * psi1(x) * psi1(x) + (1.0 - eta) * psi0(x) * psi0(x);
            CHECK(quadrature_pdf(HeraldedState(eta), x) == doctest::Approx(mix).epsilon(1e-14));
        }
    }
}

TEST_CASE("quadrature pdf normalisation and cdf")
{
    for (double eta : {0.0, 0.25, 0.62, 1.0})
    {
        const HeraldedState s(eta);
        const auto pdf = [&](double x) { return quadrature_pdf(s, x); };
        CHECK(std::abs(integrate(pdf, -kInf, kInf) - 1.0) < 1e-9);
        for (double x : {-3.0, -1.0, 0.0, 0.5, 2.0})
            CHECK(std::abs(quadrature_cdf(s, x) - integrate(pdf, -kInf, x)) < 1e-12);
    }
}

TEST_CASE("state validation")
{
    CHECK_THROWS_AS(HeraldedState(-0.01), ValidationError);
    CHECK_THROWS_AS(HeraldedState(1.01), ValidationError);
    CHECK_THROWS_AS(HeraldedState(std::nan("")), ValidationError);
    CHECK_THROWS_AS(sample_quadratures(HeraldedState(0.5), 0, 1), ValidationError);
    const std::vector<double> one = {0.3};
    CHECK_THROWS_AS(estimate_eta(one), ValidationError);
    const std::vector<double> constant(10, 0.7);
    CHECK_THROWS_AS(estimate_eta(constant), ValidationError);
}

TEST_CASE("sampling is deterministic and records its metadata")
{
    const QuadratureSample a = sample_quadratures(HeraldedState(0.62), 1000, 42);
    const QuadratureSample b = sample_quadratures(HeraldedState(0.62), 1000, 42);
    const QuadratureSample c = sample_quadratures(HeraldedState(0.62), 1000, 43);
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);
    CHECK(a.seed == 42);
    CHECK(a.convention.find("vacuum variance 1/2") != std::string::npos);
}

TEST_CASE("sample variances")
{
    const QuadratureSample vac = sample_quadratures(HeraldedState(0.0), 1000000, 7);
    CHECK(std::abs(sample_variance(vac.values) - 0.5) < 0.002);
    const QuadratureSample fock = sample_quadratures(HeraldedState(1.0), 1000000, 8);
    CHECK(std::abs(sample_variance(fock.values) - 1.5) < 0.004);
}

TEST_CASE("sample distribution matches the cdf")
{
    // Kolmogorov-Smirnov distance; 1.63 / sqrt(n) is the 1% critical value.
    const HeraldedState s(0.62);
    const std::size_t n = 100000;
    std::vector<double> v = sample_quadratures(s, n, 11).values;
    std::sort(v.begin(), v.end());
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double f = quadrature_cdf(s, v[i]);
        d = std::max({d, std::abs(f - static_cast<double>(i) / n), std::abs(f - static_cast<double>(i + 1) / n)});
    }
    CHECK(d < 1.63 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("moment estimator")
{
    std::uint64_t seed = 100;
    for (double eta : {0.0, 0.25, 0.3, 0.5, 0.62, 1.0})
    {
        const QuadratureSample q = sample_quadratures(HeraldedState(eta), 100000, seed++);
        const EtaEstimate e = estimate_eta(q);
        CAPTURE(eta);
        CHECK(e.standard_error > 0.0);
        CHECK(std::abs(e.eta - eta) < 3.0 * e.standard_error);
        CHECK(e.eta >= 0.0);
        CHECK(e.eta <= 1.0);
    }
    // Vacuum-only data whose second moment falls below 1/2 is clamped and flagged.
    const std::vector<double> narrow = {-0.1, 0.2, 0.05, -0.3};
    const EtaEstimate e = estimate_eta(narrow);
    CHECK(e.clamped);
    CHECK(e.eta == 0.0);
    CHECK(e.raw < 0.0);
}

TEST_CASE("wigner closed forms")
{
    for (double eta : {0.0, 0.5, 0.62, 1.0})
        CHECK(std::abs(wigner(HeraldedState(eta), 0.0, 0.0) - (1.0 - 2.0 * eta) / kPi) < 1e-12);
    CHECK(wigner(HeraldedState(0.62), 0.0, 0.0) == doctest::Approx(-0.07639).epsilon(1e-4));

    const double r2 = 0.8 * 0.8 + 0.3 * 0.3;
    const double w0 = std::exp(-r2) / kPi;
    const double w1 = (2.0 * r2 - 1.0) * std::exp(-r2) / kPi;
    CHECK(wigner(HeraldedState(0.4), 0.8, -0.3) == doctest::Approx(0.6 * w0 + 0.4 * w1).epsilon(1e-14));
}

TEST_CASE("wigner normalisation and marginals")
{
    for (double eta : {0.0, 0.62, 1.0})
    {
        const HeraldedState s(eta);
        const auto inner = [&](double x) {
            return integrate([&](double p) { return wigner(s, x, p); }, -6.0, 6.0);
        };
        CHECK(std::abs(integrate(inner, -6.0, 6.0) - 1.0) < 1e-6);
        for (double x : {-2.0, -0.5, 0.0, 1.3, 2.7})
        {
            const double marginal = integrate([&](double p) { return wigner(s, x, p); }, -kInf, kInf);
            CHECK(std::abs(marginal - quadrature_pdf(s, x)) < 1e-6);
        }
    }
}

TEST_CASE("wigner grid")
{
    const WignerGrid g = wigner_grid(HeraldedState(0.62), 4.0, 81);
    REQUIRE(g.values.size() == 81 * 81);
    CHECK(g.coordinate(0) == -4.0);
    CHECK(g.coordinate(80) == 4.0);
    CHECK(g.coordinate(40) == 0.0);
    for (std::size_t i = 0; i < 81; ++i)
        CHECK(std::abs(g.at(40, i) - g.at(i, 40)) < 1e-12);
    CHECK(std::abs(g.at(50, 20) - g.at(20, 50)) < 1e-12);
    CHECK(std::abs(g.at(50, 20) - wigner(HeraldedState(0.62), g.coordinate(50), g.coordinate(20))) < 1e-15);
    const auto min_it = std::min_element(g.values.begin(), g.values.end());
    CHECK(*min_it == g.at(40, 40));

    const WignerGrid vac = wigner_grid(HeraldedState(0.0), 4.0, 81);
    CHECK(*std::max_element(vac.values.begin(), vac.values.end()) == doctest::Approx(1.0 / kPi).epsilon(1e-15));
    CHECK(vac.at(40, 40) == doctest::Approx(1.0 / kPi).epsilon(1e-15));

    CHECK_THROWS_AS(wigner_grid(HeraldedState(0.5), 0.0, 10), ValidationError);
    CHECK_THROWS_AS(wigner_grid(HeraldedState(0.5), 1.0, 1), ValidationError);
}

TEST_CASE("nonclassicality")
{
    CHECK_FALSE(is_nonclassical(HeraldedState(0.5)));
    CHECK_FALSE(is_nonclassical(HeraldedState(0.49)));
    CHECK(is_nonclassical(HeraldedState(0.62)));
    for (int i = 0; i <= 100; ++i)
    {
        const HeraldedState s(i / 100.0);
        CHECK(is_nonclassical(s) == (wigner(s, 0.0, 0.0) < 0.0));
    }
}
