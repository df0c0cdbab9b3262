// Copyright 2026 The mrwb Authors
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

namespace mrwb {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape mismatch or out-of-range block split.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation (e.g. inverse of zero).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameter set, library entry, cut composition or budget.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent protocol state, e.g. share rows of the wrong width.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input. `field()` names the offending field.
class FormatError : public Error {
 public:
  FormatError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class UnsupportedVersionError : public FormatError {
 public:
  using FormatError::FormatError;
};

}  // namespace mrwb
