// Copyright 2026 The Rolegraph Authors.
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

#ifndef ROLEGRAPH_ERRORS_H_
#define ROLEGRAPH_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rolegraph {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-supplied argument violates a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed input file. `line` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int64_t line = 0)
      : Error(line > 0 ? what + " (line " + std::to_string(line) + ")"
                       : what),
        line_(line) {}

  int64_t line() const { return line_; }

 private:
  int64_t line_;
};

// The requested computation exceeds a configured resource budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace rolegraph

#endif  // ROLEGRAPH_ERRORS_H_
