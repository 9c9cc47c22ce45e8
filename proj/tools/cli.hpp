// Copyright 2026 The softctrl Authors
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

#pragma once

#include <string>
#include <vector>

namespace softctrl::cli {

enum ExitCode { kExitOk = 0, kExitFailure = 1, kExitSchema = 2, kExitNumerical = 3, kExitInfeasible = 4 };

/// Entry point behind the `softctrl` binary; returns the process exit code.
int run(int argc, const char* const* argv);

/// Invariant checks behind `softctrl selftest`; prints one row per check.
int selftest();

}  // namespace softctrl::cli
