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

// Command-line front end: capacity | validate | sweep | mc

#include <thzris/thzris.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

int main(int argc, char **argv)
{
    CLI::App app{"Ergodic capacity of active-RIS terahertz links: analytic model and Monte-Carlo check"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed, trials;
    bool dump = false;
    std::string out_path;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());

    app.add_option("--seed", seed, "Monte-Carlo seed (overrides mc.seed)");
    app.add_option("--trials", trials, "Monte-Carlo trials (overrides mc.trials)");
    app.add_flag("--dump-config", dump, "Print the effective configuration and exit");
    app.add_option("--out", out_path, "Write CSV here instead of standard output");
    app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

    auto add_config = [&](CLI::App *sub)
    { sub->add_option("--config", config_path, "Scenario file (key = value)")->required(); };

    auto *capacity = app.add_subcommand("capacity", "Analytic ergodic capacity");
    auto *validate = app.add_subcommand("validate", "Analytic capacity against the Monte-Carlo simulator");
    auto *mc = app.add_subcommand("mc", "Monte-Carlo ergodic rate");
    auto *sweep = app.add_subcommand("sweep", "Capacity over a grid of one parameter");
    for (auto *sub : {capacity, validate, mc, sweep})
    {
        add_config(sub);
        sub->fallthrough();
    }

    std::string sweep_param, values_text, range_text;
    bool log_spacing = false, with_mc = false;
    sweep->add_option("--param", sweep_param, "M, beta, P_s_dBm, f_Hz, d_a, d_b, kappa, phi or zeta")->required();
    auto *values_opt = sweep->add_option("--values", values_text, "Comma-separated values");
    auto *range_opt = sweep->add_option("--range", range_text, "start:stop:count");
    values_opt->excludes(range_opt);
    sweep->add_flag("--log", log_spacing, "Logarithmic spacing for --range");
    sweep->add_flag("--with-mc", with_mc, "Also run the Monte-Carlo simulator per point");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? thzris::exit_ok : thzris::exit_usage;
    }

    thzris::ScenarioConfig cfg;
    thzris::SweepSpec sweep_spec;
    try
    {
        cfg = thzris::parse_config(config_path);
        if (seed)
            cfg.mc.seed = *seed;
        if (trials)
            cfg.mc.trials = *trials;
        cfg.validate();
        if (sweep->parsed())
        {
            auto param = thzris::parse_sweep_param(sweep_param);
            if (!param)
                throw thzris::config_error("--param: unknown sweep parameter '" + sweep_param + "'");
            sweep_spec.param = *param;
            if (values_opt->count() > 0)
                sweep_spec.values = thzris::parse_value_list(values_text);
            else if (range_opt->count() > 0)
                sweep_spec.values = thzris::parse_range(range_text, log_spacing);
            else
                throw thzris::config_error("sweep: one of --values or --range is required");
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return thzris::exit_usage;
    }

    std::ofstream file;
    if (!out_path.empty())
    {
        file.open(out_path);
        if (!file)
        {
            std::cerr << "error: cannot open '" << out_path << "' for writing\n";
            return thzris::exit_usage;
        }
    }
    std::ostream &out = out_path.empty() ? std::cout : file;

    if (dump)
    {
        thzris::dump_config(cfg, out);
        return thzris::exit_ok;
    }

    // Buffer so a failure never leaves a half-written CSV behind.
    std::ostringstream buffer;
    int rc = thzris::exit_ok;
    if (capacity->parsed())
        rc = thzris::cmd_capacity(cfg, buffer, std::cerr);
    else if (validate->parsed())
        rc = thzris::cmd_validate(cfg, buffer, std::cerr, threads);
    else if (mc->parsed())
        rc = thzris::cmd_mc(cfg, buffer, std::cerr, threads);
    else
        rc = thzris::cmd_sweep(cfg, sweep_spec, buffer, std::cerr, with_mc, threads);
    out << buffer.str();
    out.flush();
    return rc;
}
