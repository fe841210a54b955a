// Copyright 2026 The Firesite Authors
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

#ifndef FIRESITE_ERROR_H_
#define FIRESITE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace firesite {

// Process exit codes used by the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitOracleGuard = 4;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const { return kExitFailure; }
};

// Malformed input files or inconsistent instance data.
class ValidationError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return kExitValidation; }
};

// Contradictory or missing configuration (e.g. network metric without a
// road network, N larger than the candidate pool).
class ConfigError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return kExitValidation; }
};

// Argument outside the mathematical domain of an analytic function.
class DomainError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return kExitValidation; }
};

class NoNeighborError : public Error {
 public:
  using Error::Error;
};

class CalibrationError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return kExitInfeasible; }
};

class OracleGuardError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return kExitOracleGuard; }
};

// Non-fatal diagnostics go to stderr.
void LogWarning(std::string_view message);

}  // namespace firesite

#endif  // FIRESITE_ERROR_H_
