// Copyright 2026 The pdlent Authors
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

// Property suites cross-checking the closed forms against brute-force
// density-matrix evaluation. Used by `pdlent verify` and the test suite.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pdlent/theory.hpp"

namespace pdlent {

using ConcurrencePredictor = std::function<double(double c0, double gamma_a, double gamma_b, KappaValue k)>;

struct VerifyOptions {
    std::uint64_t seed = 1;
    int samples = 1000;
    /// Closed form under test; replaceable so a harness can check that a
    /// corrupted formula is caught.
    ConcurrencePredictor predict = predicted_concurrence;
};

struct SuiteResult {
    std::string name;
    double max_error = 0.0;
    double tolerance = 0.0;
    double seconds = 0.0;
    bool passed = false;
};

std::vector<SuiteResult> run_verify_suites(const VerifyOptions& opts = {});

/// One line per suite: "PASS name max_err=... tol=... time=...s".
std::string format_report(const std::vector<SuiteResult>& results);

}  // namespace pdlent
