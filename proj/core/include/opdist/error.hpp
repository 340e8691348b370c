// Copyright 2026 The opdist Authors.
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

#ifndef OPDIST_ERROR_HPP_
#define OPDIST_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace opdist {

// Base class for all errors raised by the library. The subclasses map onto
// the driver's exit codes: usage 1, data 2, resource 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad command-line usage or an invalid configuration value.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data (corpora, parses, lexicons, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

// A required resource is missing or unreachable (files, services).
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace opdist

#endif  // OPDIST_ERROR_HPP_
