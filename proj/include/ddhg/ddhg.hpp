// Copyright 2026 The DDHG Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DDHG_DDHG_HPP
#define DDHG_DDHG_HPP

#include "ddhg/analytics.hpp"
#include "ddhg/board.hpp"
#include "ddhg/engine.hpp"
#include "ddhg/experiments.hpp"
#include "ddhg/histogram.hpp"
#include "ddhg/record.hpp"
#include "ddhg/records_io.hpp"
#include "ddhg/rng.hpp"
#include "ddhg/rules_io.hpp"
#include "ddhg/runner.hpp"

#endif  // DDHG_DDHG_HPP
