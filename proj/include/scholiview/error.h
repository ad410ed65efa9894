// Copyright 2026 The Scholiview Authors
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

#ifndef SCHOLIVIEW_ERROR_H_
#define SCHOLIVIEW_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scholiview {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input where a line number is meaningful (N-Triples, vector
// files). line() is 1-based; 0 means "not tied to a line".
class LineError : public Error {
 public:
  LineError(const std::string &kind, std::size_t line, const std::string &reason)
      : Error(kind + (line > 0 ? " at line " + std::to_string(line) : std::string()) +
              ": " + reason),
        line_(line),
        reason_(reason) {}

  std::size_t line() const { return line_; }
  const std::string &reason() const { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

}  // namespace scholiview

#endif  // SCHOLIVIEW_ERROR_H_
