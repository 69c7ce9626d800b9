// Copyright 2026 The fdoprof Authors. All rights reserved.
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

#ifndef FDOPROF_ERROR_HPP
#define FDOPROF_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fdoprof {

// Error raised by any text-format parser. Always carries the 1-based line
// number of the offending input line and the line's text.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::string line_text, const std::string &what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what +
                           (line_text.empty() ? "" : " [" + line_text + "]")),
        line_(line),
        line_text_(std::move(line_text)) {}

  std::size_t line() const { return line_; }
  const std::string &line_text() const { return line_text_; }

 private:
  std::size_t line_;
  std::string line_text_;
};

// Structural validation failure (invariant violation on an otherwise
// well-formed input). The message names the offending entities.
class ValidationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Misuse of an operation, e.g. feeding an LBR sample set to a cycles-only
// stage.
class ModeError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fdoprof

#endif  // FDOPROF_ERROR_HPP
