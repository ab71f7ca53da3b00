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

#include "extbandit/results.hpp"

#include <cstdio>
#include <fstream>

#include "extbandit/errors.hpp"

namespace extbandit {

namespace {

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

}  // namespace

std::string format_results_csv(const ExperimentConfig& cfg,
                               const ReplicatedResult& res) {
  std::string out;
  out.reserve(static_cast<std::size_t>(res.mean.size()) * 32 + 256);
  if (cfg.verbose) {
    out += "# algo=" + std::string(to_string(cfg.algo)) +
           " n_actions=" + std::to_string(res.n_actions) +
           " dim=" + std::to_string(res.dim) + " runs=" +
           std::to_string(cfg.runs) + " eta=" + fmt_double(res.eta) +
           " alpha=" + fmt_double(res.alpha) + "\n";
    out += "# fallback_rounds=" + std::to_string(res.fallback_rounds) + "\n";
    for (std::size_t t = 0; t < res.replica0_nnmf.size(); ++t) {
      const NnmfDiag& d = res.replica0_nnmf[t];
      out += "# nnmf round=" + std::to_string(t + 1) +
             " rank=" + std::to_string(d.rank) +
             " rel_error=" + fmt_double(d.rel_error) +
             " fallback=" + std::string(d.uniform_fallback ? "1" : "0") +
             "\n";
    }
  }
  out += "round,mean_cum_regret,std_cum_regret\n";
  for (Index t = 0; t < res.mean.size(); ++t) {
    out += std::to_string(t + 1);
    out += ',';
    out += fmt_double(res.mean[t]);
    out += ',';
    out += fmt_double(res.stddev[t]);
    out += '\n';
  }
  return out;
}

std::string format_results_meta(const ExperimentConfig& cfg,
                                const ReplicatedResult& res) {
  nlohmann::json meta;
  meta["config"] = config_to_json(cfg);
  meta["resolved"] = {{"eta", res.eta},
                      {"alpha", res.alpha},
                      {"n_actions", res.n_actions},
                      {"dim", res.dim},
                      {"fallback_rounds", res.fallback_rounds}};
  meta["seeds"] = res.seeds;
  return meta.dump(2) + "\n";
}

void write_results_csv(const std::string& path, const ExperimentConfig& cfg,
                       const ReplicatedResult& res) {
  {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << format_results_csv(cfg, res);
    if (!f) throw IoError("write failed for '" + path + "'");
  }
  const std::string meta_path = path + ".meta.json";
  std::ofstream f(meta_path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + meta_path + "' for writing");
  f << format_results_meta(cfg, res);
  if (!f) throw IoError("write failed for '" + meta_path + "'");
}

}  // namespace extbandit
