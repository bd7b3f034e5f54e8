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

#ifndef THZRIS_CHANNEL_HPP
#define THZRIS_CHANNEL_HPP

#include "error.hpp"
#include "numerics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace thzris
{

inline constexpr double speed_of_light = 299792458.0; // m/s

inline constexpr double thz_band_low_hz = 0.1e12;
inline constexpr double thz_band_high_hz = 10e12;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

// BS -> RIS -> user geometry. Gains are linear (not dBi).
struct LinkGeometry
{
    double gain_a = 1e3;
    double gain_b = 1e3;
    double frequency_hz = 0.3e12;
    double d_a = 15.0; // BS-RIS distance, m
    double d_b = 15.0; // RIS-user distance, m

    void validate() const
    {
        detail::require(gain_a > 0.0 && std::isfinite(gain_a), "LinkGeometry: G_a must be > 0");
        detail::require(gain_b > 0.0 && std::isfinite(gain_b), "LinkGeometry: G_b must be > 0");
        detail::require(frequency_hz > 0.0 && std::isfinite(frequency_hz), "LinkGeometry: f must be > 0");
        detail::require(d_a > 0.0 && std::isfinite(d_a), "LinkGeometry: d_a must be > 0");
        detail::require(d_b > 0.0 && std::isfinite(d_b), "LinkGeometry: d_b must be > 0");
    }

    // Non-fatal diagnostics.
    std::vector<std::string> warnings() const
    {
        std::vector<std::string> out;
        if (frequency_hz < thz_band_low_hz || frequency_hz > thz_band_high_hz)
            out.push_back("carrier frequency " + std::to_string(frequency_hz) + " Hz lies outside the 0.1-10 THz band");
        return out;
    }

    bool operator==(const LinkGeometry &) const = default;
};

struct AbsorptionPoint
{
    double frequency_hz;
    double kappa;

    bool operator==(const AbsorptionPoint &) const = default;
};

// Molecular absorption coefficient, either a scalar or a piecewise-linear
// table in frequency. A non-empty table takes precedence over `kappa`.
struct AbsorptionSpec
{
    double kappa = 0.05; // 1/m
    std::vector<AbsorptionPoint> table;

    void validate() const
    {
        detail::require(kappa >= 0.0 && std::isfinite(kappa), "AbsorptionSpec: kappa must be >= 0");
        for (std::size_t i = 0; i < table.size(); ++i)
        {
            detail::require(table[i].kappa >= 0.0 && std::isfinite(table[i].kappa),
                            "AbsorptionSpec: table kappa must be >= 0");
            detail::require(std::isfinite(table[i].frequency_hz), "AbsorptionSpec: table frequency must be finite");
            if (i > 0)
                detail::require(table[i].frequency_hz > table[i - 1].frequency_hz,
                                "AbsorptionSpec: table frequencies must be strictly increasing");
        }
    }

    double kappa_at(double frequency_hz) const
    {
        if (table.empty())
            return kappa;
        if (frequency_hz < table.front().frequency_hz || frequency_hz > table.back().frequency_hz)
            throw domain_error("AbsorptionSpec: frequency " + std::to_string(frequency_hz) +
                               " Hz outside the absorption table range");
        auto hi = std::lower_bound(table.begin(), table.end(), frequency_hz,
                                   [](const AbsorptionPoint &p, double f) { return p.frequency_hz < f; });
        if (hi->frequency_hz == frequency_hz)
            return hi->kappa;
        auto lo = std::prev(hi);
        const double w = (frequency_hz - lo->frequency_hz) / (hi->frequency_hz - lo->frequency_hz);
        return lo->kappa + w * (hi->kappa - lo->kappa);
    }

    bool operator==(const AbsorptionSpec &) const = default;
};

// Reads a `frequency_hz,kappa_per_m` CSV with mandatory header.
inline std::vector<AbsorptionPoint> parse_absorption_table(std::istream &in, const std::string &source = "<stream>")
{
    std::string line;
    if (!std::getline(in, line))
        throw domain_error(source + ": empty absorption table");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != "frequency_hz,kappa_per_m")
        throw domain_error(source + ":1: expected header 'frequency_hz,kappa_per_m'");

    std::vector<AbsorptionPoint> points;
    for (int lineno = 2; std::getline(in, line); ++lineno)
    {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw domain_error(source + ":" + std::to_string(lineno) + ": expected two columns");
        try
        {
            std::size_t used_f = 0, used_k = 0;
            const std::string f_text = line.substr(0, comma), k_text = line.substr(comma + 1);
            const double f = std::stod(f_text, &used_f);
            const double k = std::stod(k_text, &used_k);
            if (used_f != f_text.size() || used_k != k_text.size())
                throw std::invalid_argument("trailing characters");
            points.push_back({f, k});
        }
        catch (const std::logic_error &)
        {
            throw domain_error(source + ":" + std::to_string(lineno) + ": malformed number");
        }
    }
    if (points.empty())
        throw domain_error(source + ": absorption table has no rows");
    AbsorptionSpec{0.0, points}.validate();
    return points;
}

inline std::vector<AbsorptionPoint> load_absorption_table(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw domain_error("cannot open absorption table '" + path + "'");
    return parse_absorption_table(in, path);
}

// Pointing-error law: pdf zeta * phi^-zeta * x^(zeta-1) on [0, phi].
struct MisalignmentParams
{
    double phi = std::erf(0.3) * std::erf(0.3); // s = 0.3
    double zeta = 0.6;

    void validate() const
    {
        detail::require(phi > 0.0 && phi <= 1.0, "MisalignmentParams: phi must lie in (0, 1]");
        detail::require(zeta > 0.0 && std::isfinite(zeta), "MisalignmentParams: zeta must be > 0");
    }

    bool operator==(const MisalignmentParams &) const = default;
};

// Amplitude-domain free-space gain of the cascaded link.
inline double propagation_gain(const LinkGeometry &geom)
{
    geom.validate();
    const double four_pi_f = 4.0 * std::numbers::pi * geom.frequency_hz;
    return speed_of_light * speed_of_light * std::sqrt(geom.gain_a * geom.gain_b) /
           (four_pi_f * four_pi_f * geom.d_a * geom.d_b);
}

inline double absorption_gain(const AbsorptionSpec &spec, double frequency_hz, double d_a, double d_b)
{
    spec.validate();
    detail::require(d_a > 0.0 && d_b > 0.0, "absorption_gain: distances must be > 0");
    return std::exp(-spec.kappa_at(frequency_hz) * (d_a + d_b) / 2.0);
}

inline double path_gain(const LinkGeometry &geom, const AbsorptionSpec &spec)
{
    return propagation_gain(geom) * absorption_gain(spec, geom.frequency_hz, geom.d_a, geom.d_b);
}

// r: user effective-area radius, u: beam footprint, v: beam width,
// sigma2: pointing-error variance. v and sigma2 are taken in consistent units.
inline MisalignmentParams misalignment_from_physical(double r, double u, double v, double sigma2)
{
    detail::require(r > 0.0 && u > 0.0 && v > 0.0 && sigma2 > 0.0,
                    "misalignment_from_physical: r, u, v, sigma2 must all be > 0");
    const double s = std::sqrt(std::numbers::pi / 2.0) * r / u;
    const double e = erf(s);
    MisalignmentParams p{e * e, v * v / (4.0 * sigma2)};
    p.validate();
    return p;
}

inline double misalignment_pdf(const MisalignmentParams &p, double x)
{
    p.validate();
    if (x < 0.0 || x > p.phi)
        return 0.0;
    if (x == 0.0)
    {
        if (p.zeta > 1.0)
            return 0.0;
        if (p.zeta == 1.0)
            return 1.0 / p.phi;
        throw domain_error("misalignment_pdf: density is unbounded at x = 0 for zeta < 1");
    }
    return p.zeta * std::pow(p.phi, -p.zeta) * std::pow(x, p.zeta - 1.0);
}

inline double misalignment_cdf(const MisalignmentParams &p, double x)
{
    p.validate();
    if (x <= 0.0)
        return 0.0;
    if (x >= p.phi)
        return 1.0;
    return std::pow(x / p.phi, p.zeta);
}

inline double misalignment_quantile(const MisalignmentParams &p, double q)
{
    p.validate();
    if (!(q >= 0.0 && q <= 1.0))
        throw domain_error("misalignment_quantile: q must lie in [0, 1]");
    return p.phi * std::pow(q, 1.0 / p.zeta);
}

inline double misalignment_mean(const MisalignmentParams &p)
{
    p.validate();
    return p.zeta * p.phi / (p.zeta + 1.0);
}

} // namespace thzris

#endif
