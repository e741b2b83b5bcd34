#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "sloshspot/quadrature.hpp"

using namespace sloshspot;
using std::complex;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("polynomials are integrated to machine accuracy") {
    auto r = quad::integrate([](double k) { return complex<double>(k * k, 0); },
                             {0.0, 1.0}, 1e-12, 1e-12, 100);
    CHECK(r.converged);
    CHECK(r.value.real() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(std::abs(r.value.imag()) < 1e-15);
}

TEST_CASE("smooth transcendental integrand") {
    auto r = quad::integrate(
        [](double k) { return complex<double>(std::sin(k), 0); }, {0.0, kPi},
        1e-12, 1e-12, 1000);
    CHECK(r.converged);
    CHECK(r.value.real() == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("oscillatory integrand over a long interval") {
    // \int_0^40 cos(10k) dk = sin(400)/10
    auto r = quad::integrate(
        [](double k) { return complex<double>(std::cos(10.0 * k), 0); },
        {0.0, 40.0}, 1e-12, 1e-12, 4000);
    CHECK(r.converged);
    CHECK(r.value.real() ==
          doctest::Approx(std::sin(400.0) / 10.0).epsilon(1e-11));
}

TEST_CASE("complex-valued integrand") {
    // \int_0^1 e^{ik} dk = (e^{i} - 1) / i
    auto r = quad::integrate(
        [](double k) { return std::exp(complex<double>(0.0, k)); }, {0.0, 1.0},
        1e-13, 1e-13, 1000);
    CHECK(r.converged);
    complex<double> want =
        (std::exp(complex<double>(0.0, 1.0)) - 1.0) / complex<double>(0.0, 1.0);
    CHECK(std::abs(r.value - want) < 1e-13);
}

TEST_CASE("breakpoints let the subdivision handle a kink") {
    auto f = [](double k) { return complex<double>(std::abs(k - 1.0), 0); };
    auto split = quad::integrate(f, {0.0, 1.0, 2.0}, 1e-13, 1e-13, 200);
    CHECK(split.converged);
    CHECK(split.value.real() == doctest::Approx(1.0).epsilon(1e-13));
    // Without the interior breakpoint the same budget still converges but
    // burns far more panels on locating the kink.
    auto blunt = quad::integrate(f, {0.0, 2.0}, 1e-13, 1e-13, 10000);
    CHECK(blunt.converged);
    CHECK(blunt.panels > split.panels);
}

TEST_CASE("empty and degenerate breakpoint lists integrate to zero") {
    auto f = [](double k) { return complex<double>(k, 0); };
    auto r = quad::integrate(f, {1.0, 1.0}, 1e-12, 1e-12, 10);
    CHECK(r.value == complex<double>(0.0, 0.0));
    auto r2 = quad::integrate(f, {}, 1e-12, 1e-12, 10);
    CHECK(r2.value == complex<double>(0.0, 0.0));
}

TEST_CASE("panel budget exhaustion reports non-convergence") {
    // Near-singular integrand with an absurdly tight tolerance and a tiny
    // panel budget cannot converge; the flag must say so.
    auto r = quad::integrate(
        [](double k) { return complex<double>(1.0 / std::sqrt(k + 1e-14), 0); },
        {0.0, 1.0}, 1e-16, 1e-16, 8);
    CHECK_FALSE(r.converged);
    CHECK(r.panels <= 9);
}

TEST_CASE("repeated integration is bitwise deterministic") {
    auto f = [](double k) {
        return complex<double>(std::cos(7.0 * k) / (1.0 + k * k), 0);
    };
    auto a = quad::integrate(f, {0.0, 5.0, 30.0}, 1e-12, 1e-12, 5000);
    auto b = quad::integrate(f, {0.0, 5.0, 30.0}, 1e-12, 1e-12, 5000);
    CHECK(a.value.real() == b.value.real());
    CHECK(a.value.imag() == b.value.imag());
    CHECK(a.panels == b.panels);
}

TEST_CASE("gk15 error estimate is small on smooth data and large on rough") {
    auto smooth = quad::gk15(
        [](double k) { return complex<double>(std::exp(-k), 0); }, 0.0, 1.0);
    CHECK(smooth.error < 1e-12);
    auto rough = quad::gk15(
        [](double k) { return complex<double>(std::abs(k - 0.37), 0); }, 0.0,
        1.0);
    CHECK(rough.error > 1e-8);
}
