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

#include <iosfwd>
#include <string>
#include <vector>

#include "extbandit/common.hpp"

namespace extbandit {

// Dense normalized ratings: one row per surviving user, entries in [0, 1].
struct RatingsMatrix {
  Matrix values;                      // U x d
  std::vector<int> source_user_ids;  // original 0-based row indices
};

// Jester-format CSV: first column is the user's rated-joke count, the
// remaining columns are ratings in [-10, 10] with 99 marking "not rated".
// Keeps the first d rating columns, drops users with any unrated entry
// among them, and maps each rating x to (x + 10) / 20. Malformed rows raise
// ParseError with the 1-based line number; an empty survivor set raises
// Error.
RatingsMatrix ingest_jester(std::istream& in, Index d = 20);
RatingsMatrix ingest_jester_file(const std::string& path, Index d = 20);

}  // namespace extbandit
