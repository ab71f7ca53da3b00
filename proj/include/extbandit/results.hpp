// Copyright 2026 The extbandit Authors
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

#include <string>

#include "extbandit/config.hpp"
#include "extbandit/harness.hpp"

namespace extbandit {

// Writes `round,mean_cum_regret,std_cum_regret` rows to `path` plus a
// `<path>.meta.json` sidecar carrying the expanded config, resolved
// parameters and replica seeds. cfg.verbose prepends '#' diagnostic lines
// (resolved parameters and the first replica's per-round factorization
// stats). Output depends only on cfg and res, never on wall time.
void write_results_csv(const std::string& path, const ExperimentConfig& cfg,
                       const ReplicatedResult& res);

// The in-memory CSV body, exactly as write_results_csv stores it.
std::string format_results_csv(const ExperimentConfig& cfg,
                               const ReplicatedResult& res);

// The sidecar JSON body.
std::string format_results_meta(const ExperimentConfig& cfg,
                                const ReplicatedResult& res);

}  // namespace extbandit
