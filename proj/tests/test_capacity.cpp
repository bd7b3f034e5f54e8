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

#include <thzris/capacity.hpp>
#include <thzris/montecarlo.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
thzris::LinkModel default_model() { return {{}, {}, {}, {}}; }

thzris::LinkModel with_ris(thzris::ActiveRisParams ris) { return {{}, {}, {}, ris}; }

// Gamma(k, omega) density.
double gamma_pdf(double k, double omega, double chi)
{
    if (chi <= 0.0)
        return 0.0;
    return std::exp((k - 1.0) * std::log(chi / omega) - chi / omega - std::lgamma(k)) / omega;
}

// E[log2(1 + gamma)] by integrating log2(1 + g x^2 chi) against the fitted
// Gamma density and the pointing-error law (through u = (x/phi)^zeta).
double expected_rate_by_density(const thzris::LinkModel &model)
{
    const auto fit = model.fit();
    const auto p = model.misalignment();
    const double g = model.snr_gain();
    const double mean = fit.mean();
    // Relative accuracy only: at low SNR the whole integral is ~1e-13.
    const thzris::QuadratureSpec spec{1e-300, 1e-11, 400};
    auto inner = [&](double u)
    {
        const double x = p.phi * std::pow(u, 1.0 / p.zeta);
        const double c = g * x * x;
        // chi = mean * y
        auto f = [&](double y) { return mean * gamma_pdf(fit.k, fit.omega, mean * y) * std::log1p(c * mean * y); };
        return thzris::integrate_semi_infinite(f, spec).value / std::numbers::ln2;
    };
    return thzris::integrate_finite(inner, 0.0, 1.0, spec).value;
}
} // namespace

TEST_CASE("snr_scale")
{
    CHECK(thzris::snr_scale({1, 1.0, 1.0, 0.0, 1.0}) == 1.0);
    CHECK_THAT(thzris::snr_scale({1, 2.0, 1.0, 0.01, 0.01}), WithinRel(20.0, 1e-14));
    const thzris::ActiveRisParams huge{1, 1e6, 1.0, 0.01, 0.01};
    CHECK_THAT(thzris::snr_scale(huge) * 1e12, WithinRel(1.0 / 0.01, 1e-10));
    CHECK_THROWS_AS(thzris::snr_scale({1, 1.0, 0.0, 0.0, 1.0}), thzris::domain_error);
    CHECK_THROWS_AS(thzris::snr_scale({1, 1.0, 1.0, 0.0, 0.0}), thzris::domain_error);
    CHECK(thzris::ActiveRisParams{1, 0.5, 1.0, 0.0, 1.0}.warnings().size() == 1);
    CHECK(thzris::ActiveRisParams{}.warnings().empty());
}

TEST_CASE("LinkModel derived quantities")
{
    const auto m = default_model();
    CHECK_THAT(m.h_L(), WithinRel(2.8105845220461484e-08 * std::exp(-0.05 * 15.0), 1e-13));
    CHECK_THAT(m.snr_gain(), WithinRel(20.0 * m.h_L() * m.h_L() * 4.0, 1e-14));
    CHECK(m.fit().k == thzris::fit_gamma(thzris::cascade_moments(100)).k);
    CHECK_THROWS_AS(thzris::LinkModel({}, {}, {}, {}, thzris::FourthMomentMode::PaperLiteral), thzris::fit_error);
}

TEST_CASE("snr_realization")
{
    const auto m = default_model();
    CHECK(thzris::snr_realization(m, 0.05, 0.0) == 0.0);
    const thzris::LinkModel unit({1.0, 1.0, thzris::speed_of_light / (4.0 * std::numbers::pi), 1.0, 1.0}, {0.0, {}},
                                 {1.0, 1.0}, {1, 1.0, 1.0, 0.0, 0.5});
    CHECK_THAT(thzris::snr_realization(unit, 1.0, 1.0), WithinRel(thzris::snr_scale(unit.ris()), 1e-14));

    auto ris = thzris::ActiveRisParams{};
    ris.sigma2_r = 0.0;
    const auto a = with_ris(ris);
    ris.beta *= 2.0;
    const auto b = with_ris(ris);
    CHECK_THAT(thzris::snr_realization(b, 0.05, 10.0), WithinRel(4.0 * thzris::snr_realization(a, 0.05, 10.0), 1e-14));
    CHECK_THROWS_AS(thzris::snr_realization(m, 0.5, 1.0), thzris::domain_error);
}

TEST_CASE("snr_cdf_conditional")
{
    const auto m = default_model();
    const double phi = m.misalignment().phi;
    CHECK(thzris::snr_cdf_conditional(m, 0.0, phi) == 0.0);
    const double tail = 1e6 * m.snr_gain() * phi * phi * m.fit().mean();
    CHECK_THAT(thzris::snr_cdf_conditional(m, tail, phi), WithinAbs(1.0, 1e-15));
    CHECK(thzris::snr_cdf_conditional(m, 1e-20, 0.0) == 1.0);
    CHECK(thzris::snr_cdf_conditional(m, 0.0, 0.0) == 0.0);

    // k = 1 (single-element exponential fit is k = 1/3, so build one directly)
    const thzris::GammaFit exp_fit{1.0, 2.0};
    const double g = 3.0, x = 0.5, s = 0.7;
    CHECK_THAT(thzris::detail::conditional_cdf(g, exp_fit, s, x),
               WithinAbs(1.0 - std::exp(-s / (g * x * x * exp_fit.omega)), 1e-15));
    CHECK_THROWS_AS(thzris::snr_cdf_conditional(m, -1.0, phi), thzris::domain_error);
}

TEST_CASE("snr_cdf is a valid CDF")
{
    const auto m = default_model();
    const double scale = m.mean_snr();
    CHECK(thzris::snr_cdf(m, 0.0) == 0.0);
    double previous = 0.0;
    for (int i = 0; i < 64; ++i)
    {
        const double s = scale * std::pow(10.0, -6.0 + 9.0 * i / 63.0);
        const double F = thzris::snr_cdf(m, s);
        CHECK(F >= previous);
        CHECK(F <= 1.0);
        previous = F;
    }
    CHECK_THAT(previous, WithinAbs(1.0, 1e-9));
    CHECK_THROWS_AS(thzris::snr_cdf(m, -1.0), thzris::domain_error);
}

TEST_CASE("snr_cdf: substitution agrees with the direct integral when zeta = 1")
{
    const thzris::LinkModel m({}, {}, {0.3, 1.0}, {});
    const double phi = m.misalignment().phi;
    const thzris::QuadratureSpec tight{1e-13, 1e-12, 400};
    for (double factor : {0.01, 0.3, 1.0, 3.0, 20.0})
    {
        const double s = factor * m.mean_snr();
        const double direct = thzris::integrate_finite(
                                  [&](double x)
                                  { return thzris::misalignment_pdf(m.misalignment(), x) *
                                           thzris::snr_cdf_conditional(m, s, x); },
                                  0.0, phi, tight)
                                  .value;
        CHECK_THAT(thzris::snr_cdf(m, s, tight), WithinAbs(direct, 1e-9));
    }
}

TEST_CASE("snr_cdf: median of simulated SNR")
{
    const auto m = default_model();
    auto samples = thzris::draw_samples({1'000'000, 17, 10'000},
                                        [&](thzris::Rng &rng) { return thzris::sample_snr(m, rng); });
    std::nth_element(samples.begin(), samples.begin() + samples.size() / 2, samples.end());
    const double median = samples[samples.size() / 2];
    const double F = thzris::snr_cdf(m, median);
    CHECK(F >= 0.49);
    CHECK(F <= 0.51);
}

TEST_CASE("ergodic_capacity: degenerate cases")
{
    auto ris = thzris::ActiveRisParams{};
    ris.beta = 0.0;
    const auto r = thzris::ergodic_capacity(with_ris(ris));
    CHECK(r.capacity_bits == 0.0);
    CHECK(r.quad_err == 0.0);

    // Unit-step CDF at gamma0: capacity is exactly log2(1 + gamma0).
    for (double gamma0 : {1e-9, 1e-3, 1.0, 100.0, 1e6})
    {
        const auto step = thzris::capacity_from_ccdf([gamma0](double s) { return s < gamma0 ? 1.0 : 0.0; }, gamma0);
        CHECK_THAT(step.capacity_bits, WithinRel(std::log1p(gamma0) / std::numbers::ln2, 1e-8));
    }
}

TEST_CASE("ergodic_capacity: equals E[log2(1+gamma)] under the fitted density")
{
    const thzris::QuadratureSpec tight{1e-13, 1e-11, 400};
    std::vector<thzris::LinkModel> models = {default_model()};
    for (double noise : {1e-14, 1e-15, 1e-17})
        models.push_back(with_ris({100, 2.0, 1.0, noise, noise}));
    models.push_back(thzris::LinkModel({}, {}, {0.5, 2.0}, {4, 2.0, 1.0, 1e-16, 1e-16}));
    for (const auto &m : models)
    {
        const double via_ccdf = thzris::ergodic_capacity(m, tight).capacity_bits;
        const double via_density = expected_rate_by_density(m);
        CHECK(std::abs(via_ccdf - via_density) / via_density < 1e-6);
    }
}

TEST_CASE("ergodic_capacity: monotone in P_s, M and phi")
{
    auto capacity = [](thzris::LinkModel m) { return thzris::ergodic_capacity(m).capacity_bits; };
    double prev = 0.0;
    for (double p_s : {0.1, 1.0, 10.0})
    {
        const double c = capacity(with_ris({100, 2.0, p_s, 0.01, 0.01}));
        CHECK(c > prev);
        prev = c;
    }
    prev = 0.0;
    for (int M : {16, 64, 100})
    {
        const double c = capacity(with_ris({M, 2.0, 1.0, 0.01, 0.01}));
        CHECK(c > prev);
        prev = c;
    }
    prev = 0.0;
    for (double phi : {0.05, 0.108, 0.5})
    {
        const double c = capacity(thzris::LinkModel({}, {}, {phi, 0.6}, {}));
        CHECK(c > prev);
        prev = c;
    }
    // Same check at high SNR, where capacity is no longer linear in the gain.
    prev = 0.0;
    for (int M : {16, 64, 100})
    {
        const double c = capacity(with_ris({M, 2.0, 1.0, 1e-16, 1e-16}));
        CHECK(c > prev);
        prev = c;
    }
}

TEST_CASE("ergodic_capacity: amplification saturates")
{
    const auto limit_model = default_model();
    const double limit = thzris::ergodic_capacity_at_gain(thzris::saturated_snr_gain(limit_model), limit_model.fit(),
                                                          limit_model.misalignment())
                             .capacity_bits;
    double prev = 0.0;
    for (int i = 0; i <= 12; ++i)
    {
        const double beta = std::pow(10.0, i / 4.0);
        const double c = thzris::ergodic_capacity(with_ris({100, beta, 1.0, 0.01, 0.01})).capacity_bits;
        CHECK(c >= prev);
        CHECK(c <= limit * (1.0 + 1e-9));
        prev = c;
    }
    CHECK(std::abs(prev - limit) / limit < 1e-3);
}
