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

#include <stdexcept>
#include <string>

namespace mar {

// Base of every error thrown by the solver suite.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent scenario input (bad key, violated invariant,
// out-of-range index, non-positive physical quantity).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// The instance (or a fixed-selection subproblem) has no feasible point.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// A numerical method failed to reach its tolerance within its iteration
// budget, or tripped an internal guard.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace mar
