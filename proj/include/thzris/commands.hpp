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

#ifndef THZRIS_COMMANDS_HPP
#define THZRIS_COMMANDS_HPP

#include "capacity.hpp"
#include "montecarlo.hpp"
#include "scenario.hpp"

#include <cmath>
#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace thzris
{

enum ExitCode : int
{
    exit_ok = 0,
    exit_usage = 1,
    exit_numeric = 2,
    exit_validation = 3,
    exit_partial_sweep = 4,
};

namespace detail
{
inline void emit_warnings(const ScenarioConfig &cfg, std::ostream &diag)
{
    for (const auto &w : cfg.warnings())
        diag << "warning: " << w << "\n";
}

inline double relative_gap(double analytic, double mc)
{
    if (analytic == mc)
        return 0.0;
    return std::abs(analytic - mc) / std::abs(mc);
}

struct PointResult
{
    std::optional<CapacityResult> capacity;
    std::optional<McEstimate> mc;
    std::string error;
};

inline PointResult evaluate_point(const ScenarioConfig &cfg, bool analytic, bool with_mc, unsigned threads)
{
    PointResult r;
    try
    {
        const LinkModel model = cfg.model();
        if (analytic)
            r.capacity = ergodic_capacity(model, cfg.quadrature);
        if (with_mc)
            r.mc = estimate_ergodic_rate(model, cfg.mc, threads);
    }
    catch (const std::exception &e)
    {
        r.error = e.what();
    }
    return r;
}
} // namespace detail

// Analytic ergodic capacity, one CSV row.
inline int cmd_capacity(const ScenarioConfig &cfg, std::ostream &out, std::ostream &diag)
{
    detail::emit_warnings(cfg, diag);
    const auto r = detail::evaluate_point(cfg, true, false, 1);
    if (!r.capacity)
    {
        diag << "error: " << r.error << "\n";
        return exit_numeric;
    }
    out << csv_header << '\n';
    write_csv_row(out, {.capacity_bits = r.capacity->capacity_bits, .quad_err = r.capacity->quad_err});
    return exit_ok;
}

// Monte-Carlo ergodic rate, one CSV row.
inline int cmd_mc(const ScenarioConfig &cfg, std::ostream &out, std::ostream &diag, unsigned threads = 1)
{
    detail::emit_warnings(cfg, diag);
    const auto r = detail::evaluate_point(cfg, false, true, threads);
    if (!r.mc)
    {
        diag << "error: " << r.error << "\n";
        return exit_numeric;
    }
    out << csv_header << '\n';
    write_csv_row(out, {.mc_mean = r.mc->mean, .mc_stderr = r.mc->std_error});
    return exit_ok;
}

// Analytic chain against the simulator. Passes iff
// |analytic - mc| <= max(tol_rel * mc, 4 * std_error).
inline int cmd_validate(const ScenarioConfig &cfg, std::ostream &out, std::ostream &diag, unsigned threads = 1)
{
    detail::emit_warnings(cfg, diag);
    const auto r = detail::evaluate_point(cfg, true, true, threads);
    if (!r.capacity || !r.mc)
    {
        diag << "error: " << r.error << "\n";
        return exit_numeric;
    }
    const double analytic = r.capacity->capacity_bits;
    const double gap = std::abs(analytic - r.mc->mean);
    const bool pass = gap <= std::max(cfg.validate_tol_rel * std::abs(r.mc->mean), 4.0 * r.mc->std_error);

    out << csv_header << '\n';
    write_csv_row(out, {.capacity_bits = analytic,
                        .quad_err = r.capacity->quad_err,
                        .mc_mean = r.mc->mean,
                        .mc_stderr = r.mc->std_error,
                        .rel_gap = detail::relative_gap(analytic, r.mc->mean),
                        .error = pass ? "" : "validation failed"});
    diag << (pass ? "PASS" : "FAIL") << ": analytic " << format_real(analytic) << " vs mc "
         << format_real(r.mc->mean) << " +/- " << format_real(r.mc->std_error) << "\n";
    return pass ? exit_ok : exit_validation;
}

// One row per grid point, in grid order. Points run concurrently; a failing
// point fills the error column and the sweep continues.
inline int cmd_sweep(const ScenarioConfig &cfg, const SweepSpec &sweep, std::ostream &out, std::ostream &diag,
                     bool with_mc = false, unsigned threads = 1)
{
    detail::emit_warnings(cfg, diag);
    const std::size_t n = sweep.values.size();
    std::vector<detail::PointResult> results(n);
    const bool parallel_points = n >= threads;
    detail::for_each_batch(n, parallel_points ? threads : 1,
                           [&](std::uint64_t i)
                           {
                               try
                               {
                                   const auto point = apply_sweep_value(cfg, sweep.param, sweep.values[i]);
                                   results[i] = detail::evaluate_point(point, true, with_mc,
                                                                       parallel_points ? 1 : threads);
                               }
                               catch (const std::exception &e)
                               {
                                   results[i].error = e.what();
                               }
                           });

    bool failed = false;
    out << csv_header << '\n';
    for (std::size_t i = 0; i < n; ++i)
    {
        const auto &r = results[i];
        CsvRow row{.param = std::string(to_string(sweep.param)), .value = sweep.values[i], .error = r.error};
        if (r.capacity)
        {
            row.capacity_bits = r.capacity->capacity_bits;
            row.quad_err = r.capacity->quad_err;
        }
        if (r.mc)
        {
            row.mc_mean = r.mc->mean;
            row.mc_stderr = r.mc->std_error;
        }
        if (r.capacity && r.mc)
            row.rel_gap = detail::relative_gap(r.capacity->capacity_bits, r.mc->mean);
        failed = failed || !r.error.empty();
        write_csv_row(out, row);
    }
    if (failed)
        diag << "error: one or more sweep points failed (see error column)\n";
    return failed ? exit_partial_sweep : exit_ok;
}

} // namespace thzris

#endif
