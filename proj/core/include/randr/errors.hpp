// Copyright 2026 The randr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace randr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Configuration problems. The CLI maps these to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};
class ConfigParseError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};
class ValidationError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};
class UnknownField : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Filesystem and codec failures; the message carries the offending path.
class IoError : public Error {
 public:
  using Error::Error;
};

// Bad evaluator inputs (detections file, ground-truth tree). Exit code 4.
class EvalInputError : public Error {
 public:
  using Error::Error;
};
class EvalParseError : public EvalInputError {
 public:
  using EvalInputError::EvalInputError;
};
class ImageIdMismatch : public EvalInputError {
 public:
  using EvalInputError::EvalInputError;
};
class UnknownClass : public EvalInputError {
 public:
  using EvalInputError::EvalInputError;
};

class DegenerateLookAt : public Error {
 public:
  using Error::Error;
};
class InvalidPattern : public Error {
 public:
  using Error::Error;
};
class EmptyPatternSet : public Error {
 public:
  using Error::Error;
};
class TooManyObjects : public Error {
 public:
  using Error::Error;
};
class BadTextureId : public Error {
 public:
  using Error::Error;
};
class IndivisibleDimensions : public Error {
 public:
  using Error::Error;
};

}  // namespace randr
