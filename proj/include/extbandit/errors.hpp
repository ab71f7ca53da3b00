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

#include <stdexcept>
#include <string>

namespace extbandit {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad caller input: out-of-range dimension, unsupported action set, ...
struct InvalidArgumentError : Error {
  using Error::Error;
};

// Dimension mismatch between vectors/matrices that must agree.
struct ShapeError : Error {
  using Error::Error;
};

// Value outside its mathematical domain (negative slack, negative matrix
// entry where non-negativity is required, loss outside [0,1]).
struct DomainError : Error {
  using Error::Error;
};

// Numerical breakdown: weight underflow, degenerate factorization.
struct NumericError : Error {
  using Error::Error;
};

// Game protocol violated (e.g. reactive adversary queried without the
// previously played action).
struct ProtocolError : Error {
  using Error::Error;
};

// Malformed text input; message carries the line number where known.
struct ParseError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

// Invalid experiment configuration (bad flag combination, missing field).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace extbandit
