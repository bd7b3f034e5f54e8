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

#ifndef THZRIS_CASCADE_STATS_HPP
#define THZRIS_CASCADE_STATS_HPP

#include "error.hpp"
#include "numerics.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

namespace thzris
{

// How E{S^4}, S = sum_m |f_m||g_m|, is evaluated.
//   Exact             - i.i.d. multinomial expansion of the per-element moments
//   GaussianSurrogate - treats S as Gaussian: mu^4 + 6 mu^2 v + 3 v^2
//   PaperLiteral      - mu^4 + mu^2 v + v^2; yields a negative var_chi and is
//                       kept as a diagnostic only
enum class FourthMomentMode
{
    Exact,
    GaussianSurrogate,
    PaperLiteral,
};

inline std::string_view to_string(FourthMomentMode mode)
{
    switch (mode)
    {
    case FourthMomentMode::Exact:
        return "Exact";
    case FourthMomentMode::GaussianSurrogate:
        return "GaussianSurrogate";
    case FourthMomentMode::PaperLiteral:
        return "PaperLiteral";
    }
    return "Exact";
}

inline std::optional<FourthMomentMode> parse_fourth_moment_mode(std::string_view text)
{
    if (text == "Exact")
        return FourthMomentMode::Exact;
    if (text == "GaussianSurrogate")
        return FourthMomentMode::GaussianSurrogate;
    if (text == "PaperLiteral")
        return FourthMomentMode::PaperLiteral;
    return std::nullopt;
}

// Raw moments E{(|f||g|)^n} for unit mean-square Rayleigh |f|, |g|:
// E|f|^n = Gamma(1 + n/2), squared.
namespace product_moment
{
inline constexpr double m1 = std::numbers::pi / 4.0;
inline constexpr double m2 = 1.0;
inline constexpr double m3 = 9.0 * std::numbers::pi / 16.0;
inline constexpr double m4 = 4.0;
} // namespace product_moment

struct CascadeMoments
{
    double mean_S = 0.0;
    double var_S = 0.0;
    double mean_chi = 0.0;
    double var_chi = 0.0; // negative under PaperLiteral
    FourthMomentMode fourth_moment_mode = FourthMomentMode::Exact;

    bool fittable() const { return mean_chi > 0.0 && var_chi > 0.0; }
};

// Gamma(k, omega) approximation of chi = S^2; k*omega = E{chi}, k*omega^2 = V{chi}.
struct GammaFit
{
    double k = 1.0;
    double omega = 1.0;

    double mean() const { return k * omega; }
    double variance() const { return k * omega * omega; }
};

inline CascadeMoments cascade_moments(std::int64_t elements, FourthMomentMode mode = FourthMomentMode::Exact)
{
    using namespace product_moment;
    detail::require(elements >= 1, "cascade_moments: element count M must be >= 1");
    const double M = static_cast<double>(elements);

    CascadeMoments out;
    out.fourth_moment_mode = mode;
    out.mean_S = M * m1;
    out.var_S = M * (m2 - m1 * m1);
    const double mu = out.mean_S, v = out.var_S;
    out.mean_chi = mu * mu + v;

    double fourth = 0.0;
    switch (mode)
    {
    case FourthMomentMode::Exact:
        fourth = M * m4 + 4.0 * M * (M - 1.0) * m3 * m1 + 3.0 * M * (M - 1.0) * m2 * m2 +
                 6.0 * M * (M - 1.0) * (M - 2.0) * m2 * m1 * m1 +
                 M * (M - 1.0) * (M - 2.0) * (M - 3.0) * m1 * m1 * m1 * m1;
        break;
    case FourthMomentMode::GaussianSurrogate:
        fourth = mu * mu * mu * mu + 6.0 * mu * mu * v + 3.0 * v * v;
        break;
    case FourthMomentMode::PaperLiteral:
        fourth = mu * mu * mu * mu + mu * mu * v + v * v;
        break;
    }
    out.var_chi = fourth - out.mean_chi * out.mean_chi;
    return out;
}

inline GammaFit fit_gamma(const CascadeMoments &m)
{
    if (!(m.var_chi > 0.0))
        throw fit_error("fit_gamma: var_chi = " + std::to_string(m.var_chi) +
                            " is not positive; no Gamma distribution matches these moments",
                        m.var_chi);
    detail::require(m.mean_chi > 0.0, "fit_gamma: mean_chi must be > 0");
    return {m.mean_chi * m.mean_chi / m.var_chi, m.var_chi / m.mean_chi};
}

inline double chi_cdf(const GammaFit &fit, double s)
{
    detail::require(s >= 0.0, "chi_cdf: s must be >= 0");
    return reg_lower_gamma(fit.k, s / fit.omega);
}

} // namespace thzris

#endif
