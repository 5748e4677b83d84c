// Copyright 2026 The marsolve Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "mar/model.hpp"

namespace mar {

/// Benchmark allocator. Users are visited in index order; each takes the
/// tier with the highest utility at that tier's minimum power among those
/// that keep the budget non-negative, with users not yet visited held at
/// tier 1 and its minimum power. Equal utilities go to the higher tier.
/// Throws InfeasibleError when even the all-tier-1 assignment exceeds P.
SolveOutcome greedy_solve(const ScenarioConfig& cfg);

}  // namespace mar
