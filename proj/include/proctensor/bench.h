// Copyright 2026 The proctensor Authors
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

#ifndef PROCTENSOR_BENCH_H
#define PROCTENSOR_BENCH_H

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

#include "proctensor/recovery.h"

namespace proctensor::bench {

using Json = nlohmann::ordered_json;

struct RunConfig {
    std::string preset = "process1";
    std::uint64_t seed = 1234;
    std::string output;          // empty: stdout
    std::string format = "json";  // json | csv
    unsigned threads = 0;
    std::size_t survey_samples = 100000;
    std::uint64_t tomo_shots = 1000000;
    std::uint64_t bootstrap_shots = 1000000;
    std::size_t bootstrap_resamples = 500;
    int scan_steps = 64;
    /// Overrides of the named check tolerances used in the reports.
    std::map<std::string, double> tolerances;

    double tolerance(const std::string& name, double fallback) const;
};

/// Parses a JSON config; unknown keys raise ValidationError.
RunConfig config_from_json(const Json& j);

/// Experiment-like noise for each process, calibrated so the replayed state
/// has fidelity about 0.986 to the ideal one.
recovery::NoiseModel replay_noise(const std::string& process);

struct Report {
    Json body;
    bool tolerance_failure = false;
    /// Plot data for csv output (may be empty).
    std::string csv;
};

Report preset_process1(const RunConfig& cfg);
Report preset_process2(const RunConfig& cfg);
Report preset_walk_verify(const RunConfig& cfg);
Report preset_survey(const RunConfig& cfg);
Report preset_tomo(const RunConfig& cfg);
Report run_preset(const RunConfig& cfg);

}  // namespace proctensor::bench

#endif  // PROCTENSOR_BENCH_H
