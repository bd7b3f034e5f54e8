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

#ifndef THZRIS_SCENARIO_HPP
#define THZRIS_SCENARIO_HPP

#include "capacity.hpp"
#include "cascade_stats.hpp"
#include "channel.hpp"
#include "error.hpp"
#include "montecarlo.hpp"
#include "numerics.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace thzris
{

class config_error : public domain_error
{
public:
    using domain_error::domain_error;
};

// Everything needed to run one scenario. All quantities are stored in linear
// units / watts; dB inputs are converted once while parsing.
struct ScenarioConfig
{
    LinkGeometry geometry;
    AbsorptionSpec absorption;
    std::string absorption_table_path; // empty when kappa is a scalar
    MisalignmentParams misalignment;
    ActiveRisParams ris;
    FourthMomentMode fourth_moment_mode = FourthMomentMode::Exact;
    QuadratureSpec quadrature;
    McConfig mc;
    double validate_tol_rel = 0.05;

    LinkModel model() const { return LinkModel(geometry, absorption, misalignment, ris, fourth_moment_mode); }

    void validate() const
    {
        geometry.validate();
        absorption.validate();
        misalignment.validate();
        ris.validate();
        quadrature.validate();
        mc.validate();
        detail::require(validate_tol_rel > 0.0 && std::isfinite(validate_tol_rel),
                        "validate.tol_rel must be > 0");
    }

    std::vector<std::string> warnings() const
    {
        auto out = geometry.warnings();
        for (auto &w : ris.warnings())
            out.push_back(std::move(w));
        return out;
    }

    bool operator==(const ScenarioConfig &) const = default;
};

// Shortest round-trip representation (17 significant digits).
inline std::string format_real(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail
{
inline std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

inline double parse_real(const std::string &text, const std::string &where)
{
    try
    {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size() && std::isfinite(v))
            return v;
    }
    catch (const std::logic_error &)
    {
    }
    throw config_error(where + ": expected a finite real number, got '" + text + "'");
}

inline std::int64_t parse_integer(const std::string &text, const std::string &where)
{
    try
    {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used == text.size())
            return v;
    }
    catch (const std::logic_error &)
    {
    }
    throw config_error(where + ": expected an integer, got '" + text + "'");
}

inline std::uint64_t parse_unsigned(const std::string &text, const std::string &where)
{
    if (!text.empty() && text.front() != '-')
    {
        try
        {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(text, &used);
            if (used == text.size())
                return v;
        }
        catch (const std::logic_error &)
        {
        }
    }
    throw config_error(where + ": expected a non-negative integer, got '" + text + "'");
}

struct Entry
{
    std::string value;
    int line;
};
} // namespace detail

inline const std::set<std::string, std::less<>> &known_config_keys()
{
    static const std::set<std::string, std::less<>> keys = {
        "link.G_a_dBi",       "link.G_b_dBi",       "link.G_a",          "link.G_b",
        "link.f_Hz",          "link.d_a",           "link.d_b",          "absorption.kappa",
        "absorption.table",   "misalignment.phi",   "misalignment.zeta", "misalignment.r",
        "misalignment.u",     "misalignment.v",     "misalignment.sigma2", "ris.M",
        "ris.beta",           "ris.P_s_dBm",        "ris.P_s_W",         "ris.sigma2_r",
        "ris.sigma2_u",       "model.fourth_moment_mode", "quad.abs_tol", "quad.rel_tol",
        "quad.max_subdivisions", "mc.trials",       "mc.seed",           "mc.batch",
        "validate.tol_rel",
    };
    return keys;
}

// Flat `section.key = value` text with `#` comments. Every key is optional;
// absent keys take the default scenario values. Relative absorption-table
// paths resolve against `base_dir`.
inline ScenarioConfig parse_config(std::istream &in, const std::string &source = "<config>",
                                   const std::filesystem::path &base_dir = {})
{
    std::map<std::string, detail::Entry, std::less<>> entries;
    std::string raw;
    for (int lineno = 1; std::getline(in, raw); ++lineno)
    {
        const auto hash = raw.find('#');
        const std::string line = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty())
            continue;
        const std::string where = source + ":" + std::to_string(lineno);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(where + ": expected 'key = value'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (!known_config_keys().contains(key))
            throw config_error(where + ": unknown key '" + key + "'");
        if (value.empty())
            throw config_error(where + ": key '" + key + "' has no value");
        if (entries.contains(key))
            throw config_error(where + ": duplicate key '" + key + "'");
        entries.emplace(key, detail::Entry{value, lineno});
    }

    auto where = [&](const std::string &key)
    { return source + ":" + std::to_string(entries.at(key).line) + ": " + key; };
    auto real = [&](const std::string &key) -> std::optional<double>
    {
        if (!entries.contains(key))
            return std::nullopt;
        return detail::parse_real(entries.at(key).value, where(key));
    };
    auto exclusive = [&](const std::string &a, const std::string &b)
    {
        if (entries.contains(a) && entries.contains(b))
            throw config_error(where(b) + ": conflicts with '" + a + "' (give only one)");
    };

    ScenarioConfig cfg;
    exclusive("link.G_a_dBi", "link.G_a");
    exclusive("link.G_b_dBi", "link.G_b");
    exclusive("ris.P_s_dBm", "ris.P_s_W");
    if (auto v = real("link.G_a_dBi"))
        cfg.geometry.gain_a = db_to_linear(*v);
    if (auto v = real("link.G_a"))
        cfg.geometry.gain_a = *v;
    if (auto v = real("link.G_b_dBi"))
        cfg.geometry.gain_b = db_to_linear(*v);
    if (auto v = real("link.G_b"))
        cfg.geometry.gain_b = *v;
    if (auto v = real("link.f_Hz"))
        cfg.geometry.frequency_hz = *v;
    if (auto v = real("link.d_a"))
        cfg.geometry.d_a = *v;
    if (auto v = real("link.d_b"))
        cfg.geometry.d_b = *v;

    exclusive("absorption.kappa", "absorption.table");
    if (auto v = real("absorption.kappa"))
        cfg.absorption.kappa = *v;
    if (entries.contains("absorption.table"))
    {
        std::filesystem::path p = entries.at("absorption.table").value;
        if (p.is_relative())
            p = base_dir / p;
        cfg.absorption_table_path = std::filesystem::absolute(p).lexically_normal().string();
        try
        {
            cfg.absorption.table = load_absorption_table(cfg.absorption_table_path);
        }
        catch (const domain_error &e)
        {
            throw config_error(where("absorption.table") + ": " + e.what());
        }
    }

    const bool direct = entries.contains("misalignment.phi") || entries.contains("misalignment.zeta");
    const std::vector<std::string> physical_keys = {"misalignment.r", "misalignment.u", "misalignment.v",
                                                    "misalignment.sigma2"};
    bool physical = false;
    for (const auto &k : physical_keys)
        physical = physical || entries.contains(k);
    if (direct && physical)
        throw config_error(source + ": give either misalignment.phi/zeta or misalignment.r/u/v/sigma2, not both");
    if (auto v = real("misalignment.phi"))
        cfg.misalignment.phi = *v;
    if (auto v = real("misalignment.zeta"))
        cfg.misalignment.zeta = *v;
    if (physical)
    {
        for (const auto &k : physical_keys)
            if (!entries.contains(k))
                throw config_error(source + ": missing required key '" + k + "' (physical misalignment group)");
        try
        {
            cfg.misalignment = misalignment_from_physical(*real("misalignment.r"), *real("misalignment.u"),
                                                          *real("misalignment.v"), *real("misalignment.sigma2"));
        }
        catch (const domain_error &e)
        {
            throw config_error(where("misalignment.r") + ": " + e.what());
        }
    }

    if (entries.contains("ris.M"))
        cfg.ris.elements = detail::parse_integer(entries.at("ris.M").value, where("ris.M"));
    if (auto v = real("ris.beta"))
        cfg.ris.beta = *v;
    if (auto v = real("ris.P_s_dBm"))
        cfg.ris.p_s = dbm_to_watt(*v);
    if (auto v = real("ris.P_s_W"))
        cfg.ris.p_s = *v;
    if (auto v = real("ris.sigma2_r"))
        cfg.ris.sigma2_r = *v;
    if (auto v = real("ris.sigma2_u"))
        cfg.ris.sigma2_u = *v;

    if (entries.contains("model.fourth_moment_mode"))
    {
        auto mode = parse_fourth_moment_mode(entries.at("model.fourth_moment_mode").value);
        if (!mode)
            throw config_error(where("model.fourth_moment_mode") +
                               ": expected Exact, GaussianSurrogate or PaperLiteral");
        cfg.fourth_moment_mode = *mode;
    }

    if (auto v = real("quad.abs_tol"))
        cfg.quadrature.abs_tol = *v;
    if (auto v = real("quad.rel_tol"))
        cfg.quadrature.rel_tol = *v;
    if (entries.contains("quad.max_subdivisions"))
        cfg.quadrature.max_subdivisions =
            detail::parse_unsigned(entries.at("quad.max_subdivisions").value, where("quad.max_subdivisions"));
    if (entries.contains("mc.trials"))
        cfg.mc.trials = detail::parse_unsigned(entries.at("mc.trials").value, where("mc.trials"));
    if (entries.contains("mc.seed"))
        cfg.mc.seed = detail::parse_unsigned(entries.at("mc.seed").value, where("mc.seed"));
    if (entries.contains("mc.batch"))
        cfg.mc.batch = detail::parse_unsigned(entries.at("mc.batch").value, where("mc.batch"));
    if (auto v = real("validate.tol_rel"))
        cfg.validate_tol_rel = *v;

    // Map each invariant violation back to the key that caused it.
    auto check = [&](const std::vector<std::string> &keys, auto &&validator)
    {
        try
        {
            validator();
        }
        catch (const domain_error &e)
        {
            for (const auto &k : keys)
                if (entries.contains(k))
                    throw config_error(where(k) + ": " + e.what());
            throw config_error(source + ": " + e.what());
        }
    };
    check({"link.G_a_dBi", "link.G_a", "link.G_b_dBi", "link.G_b", "link.f_Hz", "link.d_a", "link.d_b"},
          [&] { cfg.geometry.validate(); });
    check({"absorption.kappa", "absorption.table"}, [&] { cfg.absorption.validate(); });
    check({"misalignment.phi", "misalignment.zeta"}, [&] { cfg.misalignment.validate(); });
    check({"ris.M", "ris.beta", "ris.P_s_dBm", "ris.P_s_W", "ris.sigma2_r", "ris.sigma2_u"},
          [&] { cfg.ris.validate(); });
    check({"quad.abs_tol", "quad.rel_tol", "quad.max_subdivisions"}, [&] { cfg.quadrature.validate(); });
    check({"mc.trials", "mc.batch"}, [&] { cfg.mc.validate(); });
    check({"validate.tol_rel"}, [&] { cfg.validate(); });
    return cfg;
}

inline ScenarioConfig parse_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw config_error("cannot open config file '" + path + "'");
    return parse_config(in, path, std::filesystem::path(path).parent_path());
}

// Effective configuration in linear units; parse_config(dump_config(c)) == c.
inline void dump_config(const ScenarioConfig &cfg, std::ostream &out)
{
    out << "# effective scenario (linear units)\n";
    out << "link.G_a = " << format_real(cfg.geometry.gain_a) << "\n";
    out << "link.G_b = " << format_real(cfg.geometry.gain_b) << "\n";
    out << "link.f_Hz = " << format_real(cfg.geometry.frequency_hz) << "\n";
    out << "link.d_a = " << format_real(cfg.geometry.d_a) << "\n";
    out << "link.d_b = " << format_real(cfg.geometry.d_b) << "\n";
    if (cfg.absorption_table_path.empty())
        out << "absorption.kappa = " << format_real(cfg.absorption.kappa) << "\n";
    else
        out << "absorption.table = " << cfg.absorption_table_path << "\n";
    out << "misalignment.phi = " << format_real(cfg.misalignment.phi) << "\n";
    out << "misalignment.zeta = " << format_real(cfg.misalignment.zeta) << "\n";
    out << "ris.M = " << cfg.ris.elements << "\n";
    out << "ris.beta = " << format_real(cfg.ris.beta) << "\n";
    out << "ris.P_s_W = " << format_real(cfg.ris.p_s) << "\n";
    out << "ris.sigma2_r = " << format_real(cfg.ris.sigma2_r) << "\n";
    out << "ris.sigma2_u = " << format_real(cfg.ris.sigma2_u) << "\n";
    out << "model.fourth_moment_mode = " << to_string(cfg.fourth_moment_mode) << "\n";
    out << "quad.abs_tol = " << format_real(cfg.quadrature.abs_tol) << "\n";
    out << "quad.rel_tol = " << format_real(cfg.quadrature.rel_tol) << "\n";
    out << "quad.max_subdivisions = " << cfg.quadrature.max_subdivisions << "\n";
    out << "mc.trials = " << cfg.mc.trials << "\n";
    out << "mc.seed = " << cfg.mc.seed << "\n";
    out << "mc.batch = " << cfg.mc.batch << "\n";
    out << "validate.tol_rel = " << format_real(cfg.validate_tol_rel) << "\n";
}

// ---------------------------------------------------------------------------
// Sweeps

enum class SweepParam
{
    M,
    beta,
    P_s_dBm,
    f_Hz,
    d_a,
    d_b,
    kappa,
    phi,
    zeta,
};

inline std::optional<SweepParam> parse_sweep_param(std::string_view name)
{
    static const std::map<std::string_view, SweepParam> names = {
        {"M", SweepParam::M},         {"beta", SweepParam::beta}, {"P_s_dBm", SweepParam::P_s_dBm},
        {"f_Hz", SweepParam::f_Hz},   {"d_a", SweepParam::d_a},   {"d_b", SweepParam::d_b},
        {"kappa", SweepParam::kappa}, {"phi", SweepParam::phi},   {"zeta", SweepParam::zeta},
    };
    auto it = names.find(name);
    if (it == names.end())
        return std::nullopt;
    return it->second;
}

inline std::string_view to_string(SweepParam p)
{
    switch (p)
    {
    case SweepParam::M:
        return "M";
    case SweepParam::beta:
        return "beta";
    case SweepParam::P_s_dBm:
        return "P_s_dBm";
    case SweepParam::f_Hz:
        return "f_Hz";
    case SweepParam::d_a:
        return "d_a";
    case SweepParam::d_b:
        return "d_b";
    case SweepParam::kappa:
        return "kappa";
    case SweepParam::phi:
        return "phi";
    case SweepParam::zeta:
        return "zeta";
    }
    return "?";
}

struct SweepSpec
{
    SweepParam param = SweepParam::M;
    std::vector<double> values;
};

// "1,2,3"
inline std::vector<double> parse_value_list(const std::string &text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(detail::parse_real(detail::trim(item), "--values"));
    if (out.empty())
        throw config_error("--values: empty list");
    return out;
}

// "start:stop:count", linear or logarithmic spacing, both ends included.
inline std::vector<double> parse_range(const std::string &text, bool log_spacing)
{
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw config_error("--range: expected start:stop:count, got '" + text + "'");
    const double start = detail::parse_real(detail::trim(text.substr(0, c1)), "--range start");
    const double stop = detail::parse_real(detail::trim(text.substr(c1 + 1, c2 - c1 - 1)), "--range stop");
    const auto count = detail::parse_unsigned(detail::trim(text.substr(c2 + 1)), "--range count");
    if (count < 1)
        throw config_error("--range: count must be >= 1");
    if (log_spacing && !(start > 0.0 && stop > 0.0))
        throw config_error("--range: logarithmic spacing needs positive endpoints");

    std::vector<double> out(count);
    for (std::uint64_t i = 0; i < count; ++i)
    {
        const double w = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        out[i] = log_spacing ? std::exp(std::log(start) + w * (std::log(stop) - std::log(start)))
                             : start + w * (stop - start);
    }
    out.back() = stop;
    return out;
}

// Copy of `base` with the swept parameter replaced. Throws on invariant
// violations of the swept quantity.
inline ScenarioConfig apply_sweep_value(const ScenarioConfig &base, SweepParam param, double value)
{
    ScenarioConfig cfg = base;
    switch (param)
    {
    case SweepParam::M:
        if (!(value >= 1.0) || value != std::floor(value))
            throw domain_error("M must be an integer >= 1");
        cfg.ris.elements = static_cast<std::int64_t>(value);
        break;
    case SweepParam::beta:
        cfg.ris.beta = value;
        break;
    case SweepParam::P_s_dBm:
        cfg.ris.p_s = dbm_to_watt(value);
        break;
    case SweepParam::f_Hz:
        cfg.geometry.frequency_hz = value;
        break;
    case SweepParam::d_a:
        cfg.geometry.d_a = value;
        break;
    case SweepParam::d_b:
        cfg.geometry.d_b = value;
        break;
    case SweepParam::kappa:
        cfg.absorption.kappa = value;
        cfg.absorption.table.clear();
        cfg.absorption_table_path.clear();
        break;
    case SweepParam::phi:
        cfg.misalignment.phi = value;
        break;
    case SweepParam::zeta:
        cfg.misalignment.zeta = value;
        break;
    }
    cfg.validate();
    return cfg;
}

// ---------------------------------------------------------------------------
// CSV output

inline constexpr std::string_view csv_header = "param,value,capacity_bits,quad_err,mc_mean,mc_stderr,rel_gap,error";

struct CsvRow
{
    std::string param{};
    std::optional<double> value{};
    std::optional<double> capacity_bits{};
    std::optional<double> quad_err{};
    std::optional<double> mc_mean{};
    std::optional<double> mc_stderr{};
    std::optional<double> rel_gap{};
    std::string error{};
};

inline std::string csv_escape(std::string_view field)
{
    if (field.find_first_of(",\"\n\r") == std::string_view::npos)
        return std::string(field);
    std::string out = "\"";
    for (char c : field)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline void write_csv_row(std::ostream &out, const CsvRow &row)
{
    auto cell = [](const std::optional<double> &v) { return v ? format_real(*v) : std::string(); };
    out << csv_escape(row.param) << ',' << cell(row.value) << ',' << cell(row.capacity_bits) << ','
        << cell(row.quad_err) << ',' << cell(row.mc_mean) << ',' << cell(row.mc_stderr) << ',' << cell(row.rel_gap)
        << ',' << csv_escape(row.error) << '\n';
}

} // namespace thzris

#endif
