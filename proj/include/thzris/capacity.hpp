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

#ifndef THZRIS_CAPACITY_HPP
#define THZRIS_CAPACITY_HPP

#include "cascade_stats.hpp"
#include "channel.hpp"
#include "error.hpp"
#include "numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

namespace thzris
{

struct ActiveRisParams
{
    std::int64_t elements = 100; // M
    double beta = 2.0;           // per-element amplitude amplification
    double p_s = 1.0;            // transmit power, W
    double sigma2_r = 0.01;      // RIS thermal-noise power, W
    double sigma2_u = 0.01;      // user thermal-noise power, W

    void validate() const
    {
        detail::require(elements >= 1, "ActiveRisParams: M must be >= 1");
        detail::require(beta >= 0.0 && std::isfinite(beta), "ActiveRisParams: beta must be >= 0");
        detail::require(p_s > 0.0 && std::isfinite(p_s), "ActiveRisParams: P_s must be > 0");
        detail::require(sigma2_r >= 0.0 && std::isfinite(sigma2_r), "ActiveRisParams: sigma2_r must be >= 0");
        detail::require(sigma2_u > 0.0 && std::isfinite(sigma2_u), "ActiveRisParams: sigma2_u must be > 0");
    }

    std::vector<std::string> warnings() const
    {
        std::vector<std::string> out;
        if (beta < 1.0)
            out.push_back("beta = " + std::to_string(beta) + " < 1: the RIS attenuates rather than amplifies");
        return out;
    }

    bool operator==(const ActiveRisParams &) const = default;
};

// rho_s = P_s / (beta^2 sigma_r^2 + sigma_u^2)
inline double snr_scale(const ActiveRisParams &ris)
{
    ris.validate();
    return ris.p_s / (ris.beta * ris.beta * ris.sigma2_r + ris.sigma2_u);
}

// Immutable bundle of the scenario plus the quantities derived from it.
class LinkModel
{
public:
    LinkModel(LinkGeometry geometry, AbsorptionSpec absorption, MisalignmentParams misalign, ActiveRisParams ris,
              FourthMomentMode mode = FourthMomentMode::Exact)
        : geometry_(std::move(geometry)), absorption_(std::move(absorption)), misalign_(misalign), ris_(ris),
          mode_(mode)
    {
        geometry_.validate();
        absorption_.validate();
        misalign_.validate();
        ris_.validate();
        moments_ = cascade_moments(ris_.elements, mode_);
        fit_ = fit_gamma(moments_);
        path_gain_ = path_gain(geometry_, absorption_);
        snr_gain_ = snr_scale(ris_) * path_gain_ * path_gain_ * ris_.beta * ris_.beta;
    }

    const LinkGeometry &geometry() const { return geometry_; }
    const AbsorptionSpec &absorption() const { return absorption_; }
    const MisalignmentParams &misalignment() const { return misalign_; }
    const ActiveRisParams &ris() const { return ris_; }
    FourthMomentMode fourth_moment_mode() const { return mode_; }
    const CascadeMoments &moments() const { return moments_; }
    const GammaFit &fit() const { return fit_; }
    double h_L() const { return path_gain_; }

    // rho_s * h_L^2 * beta^2, so that gamma = snr_gain() * x^2 * chi.
    double snr_gain() const { return snr_gain_; }

    // E{gamma} under the fitted model.
    double mean_snr() const
    {
        const double z = misalign_.zeta, phi = misalign_.phi;
        return snr_gain_ * (z * phi * phi / (z + 2.0)) * fit_.mean();
    }

private:
    LinkGeometry geometry_;
    AbsorptionSpec absorption_;
    MisalignmentParams misalign_;
    ActiveRisParams ris_;
    FourthMomentMode mode_;
    CascadeMoments moments_;
    GammaFit fit_;
    double path_gain_ = 0.0;
    double snr_gain_ = 0.0;
};

// Limit of snr_gain() as beta -> infinity: h_L^2 * P_s / sigma_r^2.
inline double saturated_snr_gain(const LinkModel &model)
{
    detail::require(model.ris().sigma2_r > 0.0, "saturated_snr_gain: requires sigma2_r > 0");
    return model.h_L() * model.h_L() * model.ris().p_s / model.ris().sigma2_r;
}

inline double snr_realization(const LinkModel &model, double x, double chi)
{
    detail::require(x >= 0.0 && x <= model.misalignment().phi, "snr_realization: x must lie in [0, phi]");
    detail::require(chi >= 0.0, "snr_realization: chi must be >= 0");
    return model.snr_gain() * x * x * chi;
}

namespace detail
{
inline double conditional_cdf(double snr_gain, const GammaFit &fit, double s, double x)
{
    if (s == 0.0)
        return 0.0;
    const double scale = snr_gain * x * x * fit.omega;
    if (scale == 0.0)
        return 1.0;
    return reg_lower_gamma(fit.k, s / scale);
}

// Unconditional CDF after u = (x/phi)^zeta, which turns the pointing-error
// average into a plain integral over u in [0, 1].
inline QuadratureResult snr_cdf_at_gain(double snr_gain, const GammaFit &fit, const MisalignmentParams &p, double s,
                                        const QuadratureSpec &spec)
{
    if (s == 0.0)
        return {};
    if (snr_gain == 0.0)
        return {1.0, 0.0};
    const double inv_zeta = 1.0 / p.zeta;
    auto integrand = [&](double u) { return conditional_cdf(snr_gain, fit, s, p.phi * std::pow(u, inv_zeta)); };
    auto r = integrate_finite(integrand, 0.0, 1.0, spec);
    r.value = std::clamp(r.value, 0.0, 1.0);
    return r;
}

// Tolerances for the inner (pointing-error) integral when nested in the
// capacity integral.
inline QuadratureSpec inner_spec(const QuadratureSpec &outer)
{
    return {outer.abs_tol * 1e-2, outer.rel_tol * 1e-2, outer.max_subdivisions * 4};
}
} // namespace detail

inline double snr_cdf_conditional(const LinkModel &model, double s, double x)
{
    detail::require(s >= 0.0, "snr_cdf_conditional: s must be >= 0");
    detail::require(x >= 0.0 && x <= model.misalignment().phi, "snr_cdf_conditional: x must lie in [0, phi]");
    return detail::conditional_cdf(model.snr_gain(), model.fit(), s, x);
}

inline double snr_cdf(const LinkModel &model, double s, const QuadratureSpec &spec = {})
{
    detail::require(s >= 0.0, "snr_cdf: s must be >= 0");
    return detail::snr_cdf_at_gain(model.snr_gain(), model.fit(), model.misalignment(), s, spec).value;
}

struct CapacityResult
{
    double capacity_bits = 0.0; // bits/s/Hz
    double quad_err = 0.0;      // outer-integral error estimate, bits/s/Hz
    double inner_quad_err = 0.0; // largest inner CDF error estimate seen
};

// (1/ln 2) * integral_0^inf ccdf(s) / (1 + s) ds, for any complementary CDF.
// `scale` is a characteristic SNR; the integral is evaluated in s / scale so
// that the tolerances stay meaningful at very low or very high SNR.
template <class Ccdf>
CapacityResult capacity_from_ccdf(Ccdf &&ccdf, double scale, const QuadratureSpec &spec = {})
{
    detail::require(scale > 0.0 && std::isfinite(scale), "capacity_from_ccdf: scale must be finite and > 0");
    auto integrand = [&](double normalized)
    {
        const double s = scale * normalized;
        if (std::isinf(s))
            return 0.0;
        return ccdf(s) / (1.0 + s);
    };
    const double to_bits = scale / std::numbers::ln2;
    try
    {
        const auto r = integrate_semi_infinite(integrand, spec);
        return {r.value * to_bits, r.err_est * to_bits, 0.0};
    }
    catch (const convergence_error &e)
    {
        throw convergence_error(std::string("ergodic capacity: ") + e.what(), e.value() * to_bits,
                                e.error_estimate() * to_bits);
    }
}

inline CapacityResult ergodic_capacity_at_gain(double snr_gain, const GammaFit &fit, const MisalignmentParams &p,
                                               const QuadratureSpec &spec = {})
{
    spec.validate();
    p.validate();
    detail::require(snr_gain >= 0.0 && std::isfinite(snr_gain), "ergodic_capacity: SNR gain must be >= 0");
    if (snr_gain == 0.0)
        return {};

    const double mean_snr = snr_gain * (p.zeta * p.phi * p.phi / (p.zeta + 2.0)) * fit.mean();
    const QuadratureSpec inner = detail::inner_spec(spec);
    double inner_err = 0.0;
    auto ccdf = [&](double s)
    {
        const auto cdf = detail::snr_cdf_at_gain(snr_gain, fit, p, s, inner);
        inner_err = std::max(inner_err, cdf.err_est);
        return 1.0 - cdf.value;
    };
    auto result = capacity_from_ccdf(ccdf, mean_snr, spec);
    result.inner_quad_err = inner_err;
    return result;
}

inline CapacityResult ergodic_capacity(const LinkModel &model, const QuadratureSpec &spec = {})
{
    return ergodic_capacity_at_gain(model.snr_gain(), model.fit(), model.misalignment(), spec);
}

} // namespace thzris

#endif
