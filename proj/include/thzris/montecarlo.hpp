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

#ifndef THZRIS_MONTECARLO_HPP
#define THZRIS_MONTECARLO_HPP

#include "capacity.hpp"
#include "channel.hpp"
#include "error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <thread>
#include <vector>

namespace thzris
{

using Rng = std::mt19937_64;

struct McConfig
{
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    std::uint64_t batch = 10'000; // trials per reduction block

    void validate() const
    {
        detail::require(trials >= 1, "McConfig: trials must be >= 1");
        detail::require(batch >= 1, "McConfig: batch must be >= 1");
    }

    std::uint64_t batch_count() const { return (trials + batch - 1) / batch; }

    bool operator==(const McConfig &) const = default;
};

struct McEstimate
{
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
};

// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Generator for batch `index` of a run seeded with `seed`. Depends only on
// (seed, index), never on which thread runs the batch.
inline Rng substream(std::uint64_t seed, std::uint64_t index)
{
    const std::uint64_t a = mix64(seed + 0x9e3779b97f4a7c15ULL);
    const std::uint64_t b = mix64(a ^ mix64(index + 0x632be59bd9b4e019ULL));
    std::seed_seq seq{static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                      static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32)};
    return Rng(seq);
}

// Uniform on (0, 1].
inline double uniform_open_closed(Rng &rng)
{
    return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

// Uniform on [0, 1].
inline double uniform_closed(Rng &rng)
{
    return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740991.0);
}

// |h| for h ~ CN(0, 1). Two independent N(0, 1/2) components have a
// Rayleigh envelope with |h|^2 ~ Exp(1), so the magnitude is drawn as
// sqrt(-ln U) directly.
inline double sample_rayleigh(Rng &rng)
{
    return std::sqrt(-std::log(uniform_open_closed(rng)));
}

// chi = (sum_m |f_m| |g_m|)^2.
inline double sample_cascade(std::int64_t elements, Rng &rng)
{
    detail::require(elements >= 1, "sample_cascade: M must be >= 1");
    double sum = 0.0;
    for (std::int64_t m = 0; m < elements; ++m)
    {
        const double ef = -std::log(uniform_open_closed(rng));
        const double eg = -std::log(uniform_open_closed(rng));
        sum += std::sqrt(ef * eg);
    }
    return sum * sum;
}

inline double sample_misalignment(const MisalignmentParams &p, Rng &rng)
{
    return misalignment_quantile(p, uniform_closed(rng));
}

inline double sample_snr(const LinkModel &model, Rng &rng)
{
    if (model.snr_gain() == 0.0)
        return 0.0;
    const double x = sample_misalignment(model.misalignment(), rng);
    const double chi = sample_cascade(model.ris().elements, rng);
    return model.snr_gain() * x * x * chi;
}

namespace detail
{
struct RunningStats
{
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double v)
    {
        ++n;
        const double delta = v - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (v - mean);
    }

    void merge(const RunningStats &o)
    {
        if (o.n == 0)
            return;
        if (n == 0)
        {
            *this = o;
            return;
        }
        const double total = static_cast<double>(n + o.n);
        const double delta = o.mean - mean;
        mean += delta * static_cast<double>(o.n) / total;
        m2 += o.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(o.n) / total;
        n += o.n;
    }
};

// Runs body(batch_index) for every batch on up to `threads` workers.
template <class Body>
void for_each_batch(std::uint64_t batches, unsigned threads, Body &&body)
{
    threads = std::max(1u, threads);
    if (threads == 1 || batches <= 1)
    {
        for (std::uint64_t b = 0; b < batches; ++b)
            body(b);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    const auto workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, batches));
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&]
                          {
                              for (std::uint64_t b = next++; b < batches; b = next++)
                                  body(b);
                          });
}
} // namespace detail

// Sample mean of sampler(rng) over cfg.trials draws. Per-batch statistics are
// merged in batch-index order, so the result is bit-identical for any
// thread count.
template <class Sampler>
McEstimate estimate_mean(const McConfig &cfg, Sampler &&sampler, unsigned threads = 1)
{
    cfg.validate();
    const std::uint64_t batches = cfg.batch_count();
    std::vector<detail::RunningStats> partial(batches);
    detail::for_each_batch(batches, threads,
                           [&](std::uint64_t b)
                           {
                               Rng rng = substream(cfg.seed, b);
                               const std::uint64_t count = std::min(cfg.batch, cfg.trials - b * cfg.batch);
                               detail::RunningStats stats;
                               for (std::uint64_t i = 0; i < count; ++i)
                                   stats.push(sampler(rng));
                               partial[b] = stats;
                           });

    detail::RunningStats total;
    for (const auto &p : partial)
        total.merge(p);
    const double variance = total.n > 1 ? total.m2 / static_cast<double>(total.n - 1) : 0.0;
    return {total.mean, std::sqrt(variance / static_cast<double>(total.n)), total.n};
}

// All cfg.trials draws, in batch order.
template <class Sampler>
std::vector<double> draw_samples(const McConfig &cfg, Sampler &&sampler, unsigned threads = 1)
{
    cfg.validate();
    std::vector<double> out(cfg.trials);
    detail::for_each_batch(cfg.batch_count(), threads,
                           [&](std::uint64_t b)
                           {
                               Rng rng = substream(cfg.seed, b);
                               const std::uint64_t first = b * cfg.batch;
                               const std::uint64_t last = std::min(cfg.trials, first + cfg.batch);
                               for (std::uint64_t i = first; i < last; ++i)
                                   out[i] = sampler(rng);
                           });
    return out;
}

inline McEstimate estimate_ergodic_rate(const LinkModel &model, const McConfig &cfg, unsigned threads = 1)
{
    return estimate_mean(
        cfg, [&model](Rng &rng) { return std::log1p(sample_snr(model, rng)) / std::numbers::ln2; }, threads);
}

} // namespace thzris

#endif
