// Copyright 2026 The viscodelay Authors.
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

namespace viscodelay {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The memory kernel violates positivity, total mass < 1, or exponential decay.
class KernelInvalid : public Error {
 public:
  using Error::Error;
};

class InvalidInputs : public Error {
 public:
  using Error::Error;
};

/// theta <= 1 where the delayed energy requires theta > 1.
class ThetaOutOfRange : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class CflViolation : public Error {
 public:
  using Error::Error;
};

/// tau > 0 but shorter than one time step.
class DelayUnresolvable : public Error {
 public:
  using Error::Error;
};

/// A field became NaN or infinite; carries the offending step index.
class NonFinite : public Error {
 public:
  NonFinite(long step, double time)
      : Error("non-finite state at step " + std::to_string(step) +
              " (t = " + std::to_string(time) + ")"),
        step_(step),
        time_(time) {}

  long step() const noexcept { return step_; }
  double time() const noexcept { return time_; }

 private:
  long step_;
  double time_;
};

class WrongMode : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class HorizonTooShort : public Error {
 public:
  using Error::Error;
};

class SnapshotsMissing : public Error {
 public:
  using Error::Error;
};

/// Configuration validation failure; `path()` names the offending field.
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& message)
      : Error(path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace viscodelay
