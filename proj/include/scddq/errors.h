// Copyright 2026 The scddq Authors. All rights reserved.
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

#ifndef SCDDQ_ERRORS_H_
#define SCDDQ_ERRORS_H_

#include <stdexcept>
#include <string>

namespace scddq {

// Every failure raised by the library derives from Error so callers (the CLI
// in particular) can map categories onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error { using Error::Error; };
class ParseError : public Error { using Error::Error; };
class GenerationError : public Error { using Error::Error; };
class EnvironmentSetupError : public Error { using Error::Error; };
class ContractViolation : public Error { using Error::Error; };
class SpecError : public Error { using Error::Error; };
class ShapeError : public Error { using Error::Error; };
class FormatError : public Error { using Error::Error; };
class SamplingError : public Error { using Error::Error; };
class InvalidGoal : public Error { using Error::Error; };
class UndefinedEntropy : public Error { using Error::Error; };
class UndefinedCorrelation : public Error { using Error::Error; };
class IoError : public Error { using Error::Error; };

class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error("config field '" + field + "': " + message),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Raised when a loss or parameter becomes non-finite. `step` is the optimizer
// step (or epoch, once the trainer re-raises it) at which it happened.
class NumericError : public Error {
 public:
  NumericError(const std::string& message, long step)
      : Error(message + " (step " + std::to_string(step) + ")"), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

}  // namespace scddq

#endif  // SCDDQ_ERRORS_H_
