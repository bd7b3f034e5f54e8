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

#ifndef THZRIS_THZRIS_HPP
#define THZRIS_THZRIS_HPP

#include "capacity.hpp"
#include "cascade_stats.hpp"
#include "channel.hpp"
#include "commands.hpp"
#include "error.hpp"
#include "montecarlo.hpp"
#include "numerics.hpp"
#include "scenario.hpp"

#endif
