// SPDX-License-Identifier: Apache-2.0
//
// thzris - analytical and Monte-Carlo link model for active-RIS terahertz downlinks
// Copyright (C) 2026 The thzris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch_amalgamated.hpp>

#include <thzris/numerics.hpp>

#include "oracles.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

// Covered tests:
// - erf against two series oracles (Maclaurin and the positive-term series)
// - regularized lower incomplete gamma: special cases, erf identity, CDF shape
// - adaptive Gauss-Kronrod on closed-form integrals, error estimates, budget
// - semi-infinite mapping against a dense trapezoid reference

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;


TEST_CASE("erf: special values and symmetry")
{
    CHECK(thzris::erf(0.0) == 0.0);
    CHECK_THAT(static_cast<double>(oracle::erf_maclaurin_30(0.3L)), WithinAbs(0.3286267595, 5e-11));
    CHECK_THAT(thzris::erf(0.3), WithinAbs(static_cast<double>(oracle::erf_maclaurin_30(0.3L)), 1e-15));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-8.0, 8.0);
    for (int i = 0; i < 1000; ++i)
    {
        const double x = dist(rng);
        CHECK(thzris::erf(-x) == -thzris::erf(x));
        CHECK(std::abs(thzris::erf(x)) <= 1.0);
    }
    CHECK(std::abs(thzris::erf(3.0)) < 1.0);
}

TEST_CASE("erf: agrees with the series oracle to 1e-12 on [-6, 6]")
{
    double worst = 0.0;
    for (int i = -6000; i <= 6000; ++i)
    {
        const double x = i * 1e-3;
        worst = std::max(worst, std::abs(thzris::erf(x) - static_cast<double>(oracle::erf_series(x))));
    }
    CHECK(worst <= 1e-12);
    // The two oracles agree where the Maclaurin sum is well conditioned.
    for (double x : {-1.0, -0.3, 0.05, 0.7, 1.2})
        CHECK_THAT(static_cast<double>(oracle::erf_maclaurin_30(x) - oracle::erf_series(x)), WithinAbs(0.0, 1e-15));
}

TEST_CASE("erf: non-finite input is a domain error")
{
    CHECK_THROWS_AS(thzris::erf(std::numeric_limits<double>::quiet_NaN()), thzris::domain_error);
    CHECK_THROWS_AS(thzris::erf(std::numeric_limits<double>::infinity()), thzris::domain_error);
}

TEST_CASE("reg_lower_gamma: closed forms")
{
    CHECK_THAT(thzris::reg_lower_gamma(1.0, 1.0), WithinAbs(1.0 - std::exp(-1.0), 1e-15));
    CHECK_THAT(thzris::reg_lower_gamma(1.0, 1.0), WithinAbs(0.6321206, 1e-7));
    for (double k : {0.1, 0.5, 1.0, 7.5, 300.0})
        CHECK(thzris::reg_lower_gamma(k, 0.0) == 0.0);

    for (int k : {1, 2, 3, 10, 40})
        for (double x : {0.01, 0.5, 1.0, 2.9, 3.1, 9.0, 10.0, 11.0, 25.0, 39.0, 41.0, 80.0})
            CHECK_THAT(thzris::reg_lower_gamma(k, x), WithinAbs(oracle::reg_lower_gamma_integer(k, x), 1e-13));
}

TEST_CASE("reg_lower_gamma: k = 1/2 reduces to erf(sqrt(x))")
{
    double worst = 0.0;
    for (int i = 0; i <= 4000; ++i)
    {
        const double x = i * 0.01;
        worst = std::max(worst, std::abs(thzris::reg_lower_gamma(0.5, x) -
                                         static_cast<double>(oracle::erf_series(std::sqrt(x)))));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("reg_lower_gamma: is a CDF in x")
{
    for (double k : {0.3, 1.0, 3.3, 100.0})
    {
        double previous = 0.0;
        for (int i = 0; i <= 2000; ++i)
        {
            const double x = k * 1e-3 * std::pow(1e7, i / 2000.0) - k * 1e-3;
            const double p = thzris::reg_lower_gamma(k, x);
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
            CHECK(p >= previous);
            previous = p;
        }
        CHECK(thzris::reg_lower_gamma(k, 0.0) == 0.0);
        CHECK_THAT(thzris::reg_lower_gamma(k, 50.0 * k + 100.0), WithinAbs(1.0, 1e-15));
        CHECK(thzris::reg_lower_gamma(k, std::numeric_limits<double>::infinity()) == 1.0);
    }
}

TEST_CASE("reg_lower_gamma: domain errors")
{
    CHECK_THROWS_AS(thzris::reg_lower_gamma(0.0, 1.0), thzris::domain_error);
    CHECK_THROWS_AS(thzris::reg_lower_gamma(-1.0, 1.0), thzris::domain_error);
    CHECK_THROWS_AS(thzris::reg_lower_gamma(1.0, -1e-300), thzris::domain_error);
    CHECK_THROWS_AS(thzris::reg_lower_gamma(1.0, std::numeric_limits<double>::quiet_NaN()), thzris::domain_error);
}

TEST_CASE("integrate_finite: closed forms and error estimates")
{
    const thzris::QuadratureSpec spec;
    struct Case
    {
        double (*f)(double);
        double a, b, exact;
    };
    const Case cases[] = {
        {[](double) { return 1.0; }, 0.0, 1.0, 1.0},
        {[](double x) { return x * x; }, 0.0, 1.0, 1.0 / 3.0},
        {[](double x) { return std::exp(-x); }, 0.0, 10.0, 1.0 - std::exp(-10.0)},
        {[](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 2.0},
        {[](double x) { return 1.0 / (1.0 + 25.0 * x * x); }, -1.0, 1.0, 0.4 * std::atan(5.0)},
    };
    for (const auto &c : cases)
    {
        const auto r = thzris::integrate_finite(c.f, c.a, c.b, spec);
        const double true_err = std::abs(r.value - c.exact);
        CHECK(true_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(r.value)));
        CHECK(r.err_est >= true_err);
    }
    CHECK(thzris::integrate_finite([](double) { return 5.0; }, 2.0, 2.0).value == 0.0);
}

TEST_CASE("integrate_finite: errors")
{
    auto hard = [](double x) { return std::sin(1.0 / (x + 1e-3)); };
    const thzris::QuadratureSpec tiny{1e-14, 1e-14, 3};
    try
    {
        thzris::integrate_finite(hard, 0.0, 1.0, tiny);
        FAIL("expected convergence_error");
    }
    catch (const thzris::convergence_error &e)
    {
        CHECK(std::isfinite(e.value()));
        CHECK(e.error_estimate() > 0.0);
    }
    CHECK_THROWS_AS(thzris::integrate_finite([](double x) { return x; }, 1.0, 0.0), thzris::domain_error);
    CHECK_THROWS_AS(thzris::integrate_finite([](double x) { return 1.0 / (x - 0.5); }, 0.0, 1.0),
                    thzris::domain_error);
    CHECK_THROWS_AS(thzris::integrate_finite([](double x) { return x; }, 0.0, 1.0, {0.0, 1e-8, 10}),
                    thzris::domain_error);
    CHECK_THROWS_AS(thzris::integrate_finite([](double x) { return x; }, 0.0, 1.0, {1e-8, 1e-8, 0}),
                    thzris::domain_error);
}

TEST_CASE("integrate_semi_infinite: closed forms")
{
    const thzris::QuadratureSpec spec;
    auto check = [&](auto f, double exact)
    {
        const auto r = thzris::integrate_semi_infinite(f, spec);
        const double true_err = std::abs(r.value - exact);
        CHECK(true_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(exact)));
        CHECK(r.err_est >= true_err);
    };
    check([](double s) { return std::exp(-s); }, 1.0);
    check([](double s) { return 1.0 / ((1.0 + s) * (1.0 + s)); }, 1.0);
}

TEST_CASE("integrate_semi_infinite: dense trapezoid reference")
{
    auto f = [](double s) { return 1.0 / ((1.0 + s) * (1.0 + s * s)); };

    // Trapezoid rule on the mapped integrand over 10^7 panels of [0, 1].
    constexpr long nodes = 10'000'000;
    const long double h = 1.0L / nodes;
    long double sum = 0.5L * f(0.0); // the mapped integrand vanishes at t = 1
    for (long i = 1; i < nodes; ++i)
    {
        const long double t = i * h;
        const long double one_minus = 1.0L - t;
        sum += f(static_cast<double>(t / one_minus)) / (one_minus * one_minus);
    }
    const double reference = static_cast<double>(sum * h);
    CHECK_THAT(reference, WithinAbs(std::numbers::pi / 4.0, 1e-12));

    const auto r = thzris::integrate_semi_infinite(f);
    CHECK_THAT(r.value, WithinAbs(reference, 1e-10));
    CHECK(r.err_est >= std::abs(r.value - std::numbers::pi / 4.0));
}
