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

#include "extbandit/extbandit.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "extbandit/config.hpp"
#include "extbandit/errors.hpp"
#include "extbandit/harness.hpp"
#include "extbandit/results.hpp"

struct extbandit_experiment {
  extbandit::ExperimentConfig cfg;
};

struct extbandit_result {
  extbandit::ExperimentConfig cfg;
  extbandit::ReplicatedResult res;
};

namespace {

thread_local std::string g_last_error;

extbandit_status fail(extbandit_status status, const char* what) {
  g_last_error = what ? what : "";
  return status;
}

// Maps the library exception hierarchy onto the C status codes.
extbandit_status translate() {
  try {
    throw;
  } catch (const extbandit::ParseError& e) {
    return fail(EXTBANDIT_PARSE_ERROR, e.what());
  } catch (const extbandit::IoError& e) {
    return fail(EXTBANDIT_IO_ERROR, e.what());
  } catch (const extbandit::NumericError& e) {
    return fail(EXTBANDIT_NUMERIC_ERROR, e.what());
  } catch (const extbandit::ConfigError& e) {
    return fail(EXTBANDIT_INVALID_ARGUMENT, e.what());
  } catch (const extbandit::InvalidArgumentError& e) {
    return fail(EXTBANDIT_INVALID_ARGUMENT, e.what());
  } catch (const extbandit::ShapeError& e) {
    return fail(EXTBANDIT_INVALID_ARGUMENT, e.what());
  } catch (const extbandit::DomainError& e) {
    return fail(EXTBANDIT_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(EXTBANDIT_RUNTIME_ERROR, e.what());
  } catch (...) {
    return fail(EXTBANDIT_RUNTIME_ERROR, "unknown error");
  }
}

extbandit_status ok() {
  g_last_error.clear();
  return EXTBANDIT_OK;
}

extbandit_status copy_series(const extbandit_result* res,
                             const extbandit::Vector& series, double* out,
                             int64_t len) {
  if (!res || !out) return fail(EXTBANDIT_INVALID_ARGUMENT, "null argument");
  if (len < series.size())
    return fail(EXTBANDIT_INVALID_ARGUMENT, "buffer too small");
  std::memcpy(out, series.data(),
              static_cast<std::size_t>(series.size()) * sizeof(double));
  return ok();
}

}  // namespace

extern "C" {

extbandit_status extbandit_experiment_create_json(const char* json_text,
                                                  extbandit_experiment** out) {
  if (!json_text || !out)
    return fail(EXTBANDIT_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  try {
    auto* exp = new extbandit_experiment{
        extbandit::config_from_json_text(json_text)};
    *out = exp;
    return ok();
  } catch (...) {
    return translate();
  }
}

void extbandit_experiment_free(extbandit_experiment* exp) { delete exp; }

extbandit_status extbandit_experiment_manifest(
    const extbandit_experiment* exp, char** out_json) {
  if (!exp || !out_json)
    return fail(EXTBANDIT_INVALID_ARGUMENT, "null argument");
  *out_json = nullptr;
  try {
    const std::string text = extbandit::config_to_json(exp->cfg).dump(2);
    char* copy = static_cast<char*>(std::malloc(text.size() + 1));
    if (!copy) return fail(EXTBANDIT_RUNTIME_ERROR, "out of memory");
    std::memcpy(copy, text.c_str(), text.size() + 1);
    *out_json = copy;
    return ok();
  } catch (...) {
    return translate();
  }
}

extbandit_status extbandit_experiment_run(extbandit_experiment* exp,
                                          extbandit_result** out) {
  if (!exp || !out) return fail(EXTBANDIT_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  try {
    extbandit::ReplicatedResult res = extbandit::run_replicated(exp->cfg);
    *out = new extbandit_result{exp->cfg, std::move(res)};
    return ok();
  } catch (...) {
    return translate();
  }
}

void extbandit_result_free(extbandit_result* res) { delete res; }

int64_t extbandit_result_rounds(const extbandit_result* res) {
  if (!res) return -1;
  return static_cast<int64_t>(res->res.mean.size());
}

extbandit_status extbandit_result_mean(const extbandit_result* res,
                                       double* out, int64_t len) {
  return copy_series(res, res ? res->res.mean : extbandit::Vector(), out,
                     len);
}

extbandit_status extbandit_result_stddev(const extbandit_result* res,
                                         double* out, int64_t len) {
  return copy_series(res, res ? res->res.stddev : extbandit::Vector(), out,
                     len);
}

extbandit_status extbandit_result_write_csv(const extbandit_result* res,
                                            const char* path) {
  if (!res || !path) return fail(EXTBANDIT_INVALID_ARGUMENT, "null argument");
  try {
    extbandit::write_results_csv(path, res->cfg, res->res);
    return ok();
  } catch (...) {
    return translate();
  }
}

const char* extbandit_last_error(void) { return g_last_error.c_str(); }

const char* extbandit_status_name(extbandit_status status) {
  switch (status) {
    case EXTBANDIT_OK:
      return "EXTBANDIT_OK";
    case EXTBANDIT_INVALID_ARGUMENT:
      return "EXTBANDIT_INVALID_ARGUMENT";
    case EXTBANDIT_PARSE_ERROR:
      return "EXTBANDIT_PARSE_ERROR";
    case EXTBANDIT_IO_ERROR:
      return "EXTBANDIT_IO_ERROR";
    case EXTBANDIT_NUMERIC_ERROR:
      return "EXTBANDIT_NUMERIC_ERROR";
    case EXTBANDIT_RUNTIME_ERROR:
      return "EXTBANDIT_RUNTIME_ERROR";
  }
  return "EXTBANDIT_UNKNOWN";
}

void extbandit_string_free(char* s) { std::free(s); }

}  // extern "C"
