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

#ifndef THZRIS_ERROR_HPP
#define THZRIS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace thzris
{

// Argument outside the domain of a model function or parameter record.
class domain_error : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Adaptive quadrature ran out of subdivisions. Carries the best estimate so
// callers can report a partial value.
class convergence_error : public std::runtime_error
{
public:
    convergence_error(const std::string &what, double best_value, double error_estimate)
        : std::runtime_error(what), value_(best_value), err_est_(error_estimate)
    {
    }

    double value() const noexcept { return value_; }
    double error_estimate() const noexcept { return err_est_; }

private:
    double value_;
    double err_est_;
};

// Moment matching impossible because the supplied variance is not positive.
class fit_error : public std::domain_error
{
public:
    fit_error(const std::string &what, double variance)
        : std::domain_error(what), variance_(variance)
    {
    }

    double variance() const noexcept { return variance_; }

private:
    double variance_;
};

namespace detail
{
inline void require(bool condition, const std::string &message)
{
    if (!condition)
        throw domain_error(message);
}
} // namespace detail

} // namespace thzris

#endif
