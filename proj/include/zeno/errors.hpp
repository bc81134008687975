// Copyright 2026 The vzeno Authors
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
#include <utility>
#include <vector>

namespace zeno {

// Base for all library errors. Invalid numeric inputs use std::invalid_argument.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Spectral exponential requested on a (near-)degenerate eigensystem.
class DegenerateSpectrumError : public Error {
 public:
  using Error::Error;
};

// The probe-off generator has no unique three-level fixed point.
class NoStationaryStateError : public Error {
 public:
  using Error::Error;
};

// The measurement-regime assumptions behind a first-order formula failed.
class RegimeError : public Error {
 public:
  explicit RegimeError(std::vector<std::string> failed)
      : Error(join(failed)), failed_(std::move(failed)) {}

  const std::vector<std::string>& failed_conditions() const { return failed_; }

 private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out = "measurement regime violated:";
    for (const auto& s : items) out += " [" + s + "]";
    return out;
  }
  std::vector<std::string> failed_;
};

// Pulse schedule cannot be laid out (free interval would be non-positive).
class ScheduleError : public Error {
 public:
  using Error::Error;
};

// Configuration text is malformed or names an invalid value. what() starts
// with the offending field path.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// An internal identity or bound failed. Signals a bug, not bad input.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace zeno
