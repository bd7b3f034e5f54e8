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

#ifndef THZRIS_NUMERICS_HPP
#define THZRIS_NUMERICS_HPP

#include "error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace thzris
{

struct QuadratureSpec
{
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    std::size_t max_subdivisions = 60;

    void validate() const
    {
        detail::require(abs_tol > 0.0 && std::isfinite(abs_tol), "QuadratureSpec: abs_tol must be > 0");
        detail::require(rel_tol > 0.0 && std::isfinite(rel_tol), "QuadratureSpec: rel_tol must be > 0");
        detail::require(max_subdivisions >= 1, "QuadratureSpec: max_subdivisions must be >= 1");
    }

    bool operator==(const QuadratureSpec &) const = default;
};

struct QuadratureResult
{
    double value = 0.0;
    double err_est = 0.0;
};

inline double erf(double x)
{
    if (!std::isfinite(x))
        throw domain_error("erf: argument must be finite");
    return std::erf(x);
}

// P(k, x) = gamma(k, x) / Gamma(k), the CDF of a unit-scale Gamma(k) variate.
// Series expansion below x = k + 1, Lentz continued fraction for the
// complement above.
inline double reg_lower_gamma(double k, double x)
{
    if (!(k > 0.0) || !std::isfinite(k))
        throw domain_error("reg_lower_gamma: shape k must be finite and > 0");
    if (!(x >= 0.0))
        throw domain_error("reg_lower_gamma: x must be >= 0");
    if (x == 0.0)
        return 0.0;
    if (std::isinf(x))
        return 1.0;

    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr int max_iter = 100000;
    const double log_prefactor = -x + k * std::log(x) - std::lgamma(k);

    if (x < k + 1.0)
    {
        double term = 1.0 / k;
        double sum = term;
        for (int n = 1; n < max_iter; ++n)
        {
            term *= x / (k + n);
            sum += term;
            if (std::abs(term) < std::abs(sum) * eps)
                return std::clamp(sum * std::exp(log_prefactor), 0.0, 1.0);
        }
        throw convergence_error("reg_lower_gamma: series did not converge", sum * std::exp(log_prefactor), 0.0);
    }

    constexpr double tiny = std::numeric_limits<double>::min() / eps;
    double b = x + 1.0 - k;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < max_iter; ++i)
    {
        const double an = -i * (i - k);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < eps)
            return std::clamp(1.0 - std::exp(log_prefactor) * h, 0.0, 1.0);
    }
    throw convergence_error("reg_lower_gamma: continued fraction did not converge", 1.0 - std::exp(log_prefactor) * h, 0.0);
}

namespace detail
{
// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
inline constexpr std::array<double, 8> gk15_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> gk15_kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gk15_gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment
{
    double a, b, value, err;
};

// QUADPACK-style error estimate on a single panel.
template <class F>
Segment gk15(F &f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f_center = f(center);

    double kronrod = f_center * gk15_kronrod_weights[7];
    double gauss = f_center * gk15_gauss_weights[3];
    double abs_sum = std::abs(kronrod);
    std::array<double, 7> lo{}, hi{};
    for (int j = 0; j < 7; ++j)
    {
        const double dx = half * gk15_nodes[j];
        lo[j] = f(center - dx);
        hi[j] = f(center + dx);
        kronrod += gk15_kronrod_weights[j] * (lo[j] + hi[j]);
        abs_sum += gk15_kronrod_weights[j] * (std::abs(lo[j]) + std::abs(hi[j]));
        if (j % 2 == 1)
            gauss += gk15_gauss_weights[j / 2] * (lo[j] + hi[j]);
    }

    const double mean = 0.5 * kronrod;
    double asc = gk15_kronrod_weights[7] * std::abs(f_center - mean);
    for (int j = 0; j < 7; ++j)
        asc += gk15_kronrod_weights[j] * (std::abs(lo[j] - mean) + std::abs(hi[j] - mean));

    const double result = kronrod * half;
    const double res_abs = abs_sum * std::abs(half);
    const double res_asc = asc * std::abs(half);
    double err = std::abs((kronrod - gauss) * half);
    if (res_asc != 0.0 && err != 0.0)
        err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(err, 50.0 * eps * res_abs);
    return {a, b, result, err};
}
} // namespace detail

// Globally adaptive Gauss-Kronrod quadrature on [a, b]. The panel with the
// largest error estimate is bisected until the summed estimate drops below
// max(abs_tol, rel_tol*|value|) or max_subdivisions panels exist.
template <class F>
QuadratureResult integrate_finite(F &&f, double a, double b, const QuadratureSpec &spec = {})
{
    spec.validate();
    detail::require(std::isfinite(a) && std::isfinite(b), "integrate_finite: bounds must be finite");
    detail::require(a <= b, "integrate_finite: requires a <= b");
    if (a == b)
        return {};

    auto checked = [&f](double x)
    {
        const double y = f(x);
        if (!std::isfinite(y))
            throw domain_error("integrate_finite: integrand is not finite at x = " + std::to_string(x));
        return y;
    };

    std::vector<detail::Segment> panels;
    panels.reserve(spec.max_subdivisions);
    panels.push_back(detail::gk15(checked, a, b));

    auto by_error = [](const detail::Segment &l, const detail::Segment &r) { return l.err < r.err; };

    while (true)
    {
        double value = 0.0, err = 0.0;
        for (const auto &p : panels)
        {
            value += p.value;
            err += p.err;
        }
        if (err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value)))
            return {value, err};
        if (panels.size() >= spec.max_subdivisions)
            throw convergence_error("integrate_finite: subdivision budget exhausted", value, err);

        std::pop_heap(panels.begin(), panels.end(), by_error);
        const detail::Segment worst = panels.back();
        panels.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
            throw convergence_error("integrate_finite: panel width below machine resolution", value, err);

        panels.push_back(detail::gk15(checked, worst.a, mid));
        std::push_heap(panels.begin(), panels.end(), by_error);
        panels.push_back(detail::gk15(checked, mid, worst.b));
        std::push_heap(panels.begin(), panels.end(), by_error);
    }
}

// Integral over [0, inf) through s = t / (1 - t), t in [0, 1), with
// Jacobian 1 / (1 - t)^2.
template <class F>
QuadratureResult integrate_semi_infinite(F &&f, const QuadratureSpec &spec = {})
{
    auto mapped = [&f](double t)
    {
        const double one_minus = 1.0 - t;
        return f(t / one_minus) / (one_minus * one_minus);
    };
    return integrate_finite(mapped, 0.0, 1.0, spec);
}

} // namespace thzris

#endif
