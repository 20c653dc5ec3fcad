// Copyright 2026 The loglin Authors. All rights reserved.
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

#ifndef LOGLIN_ERRORS_H_
#define LOGLIN_ERRORS_H_

#include <stdexcept>
#include <string>

namespace loglin {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Profiles, paths or tables of incompatible sizes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A parameter outside its documented domain (tau <= 0, q outside (0,1], ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// An exhaustive operation would exceed its enumeration cap.
class BoundError : public Error {
 public:
  using Error::Error;
};

// A utility or probability became NaN or infinite.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Two profiles differ in more than one coordinate.
class NotUnilateralError : public Error {
 public:
  using Error::Error;
};

// A precondition of the form a <= a' did not hold.
class OrderViolation : public Error {
 public:
  using Error::Error;
};

// An argument outside the domain of a map, e.g. a profile not in f(a).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A one-step coupling entry is genuinely negative: the game pair is not
// aligned at the profiles involved.
class AlignmentViolationError : public Error {
 public:
  using Error::Error;
};

// Two algebraically identical expressions disagreed.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

// A caller-certified property (e.g. monotonicity of a random variable) was
// found to be false.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Malformed configuration or game document.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace loglin

#endif  // LOGLIN_ERRORS_H_
