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

#include "extbandit/jester.hpp"

#include <fstream>
#include <sstream>

#include "extbandit/errors.hpp"

namespace extbandit {

namespace {

constexpr double kNotRated = 99.0;

std::vector<double> parse_row(const std::string& line, int line_no) {
  std::vector<double> fields;
  std::stringstream ss(line);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const size_t begin = token.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
      // Tolerate a trailing comma; anything else blank is malformed.
      if (ss.peek() == EOF) break;
      throw ParseError("line " + std::to_string(line_no) + ": empty field");
    }
    try {
      size_t pos = 0;
      const double v = std::stod(token, &pos);
      if (token.find_first_not_of(" \t\r", pos) != std::string::npos)
        throw std::invalid_argument("trailing characters");
      fields.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(line_no) + ": bad value '" +
                       token + "'");
    }
  }
  return fields;
}

}  // namespace

RatingsMatrix ingest_jester(std::istream& in, Index d) {
  if (d < 1) throw InvalidArgumentError("ingest_jester: d must be >= 1");

  std::vector<std::vector<double>> rows;
  std::vector<int> ids;
  std::string line;
  int line_no = 0;
  int user = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::vector<double> fields = parse_row(line, line_no);
    if (static_cast<Index>(fields.size()) < 1 + d)
      throw ParseError("line " + std::to_string(line_no) + ": only " +
                       std::to_string(fields.size()) +
                       " columns, need a count plus " + std::to_string(d) +
                       " ratings");
    const int this_user = user++;
    bool dense = true;
    std::vector<double> normalized(static_cast<size_t>(d));
    for (Index j = 0; j < d; ++j) {
      const double x = fields[static_cast<size_t>(1 + j)];
      if (x == kNotRated) {
        dense = false;
        break;
      }
      if (x < -10.0 || x > 10.0)
        throw ParseError("line " + std::to_string(line_no) + ": rating " +
                         std::to_string(x) + " outside [-10, 10]");
      normalized[static_cast<size_t>(j)] = (x + 10.0) / 20.0;
    }
    if (!dense) continue;
    rows.push_back(std::move(normalized));
    ids.push_back(this_user);
  }

  if (rows.empty())
    throw Error("ingest_jester: no user rated all of the first " +
                std::to_string(d) + " items");

  RatingsMatrix out;
  out.values.resize(static_cast<Index>(rows.size()), d);
  for (size_t i = 0; i < rows.size(); ++i)
    for (Index j = 0; j < d; ++j)
      out.values(static_cast<Index>(i), j) = rows[i][static_cast<size_t>(j)];
  out.source_user_ids = std::move(ids);
  return out;
}

RatingsMatrix ingest_jester_file(const std::string& path, Index d) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open ratings file: " + path);
  return ingest_jester(in, d);
}

}  // namespace extbandit
