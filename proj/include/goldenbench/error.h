// Copyright (c) 2026 goldenbench authors
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

#ifndef GOLDENBENCH_ERROR_H_
#define GOLDENBENCH_ERROR_H_

#include <stdexcept>
#include <string>

namespace goldenbench {

// Base class for every data or metric error the toolkit raises. The CLI maps
// these to exit code 1; anything else escaping is a bug.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text or bytes. line_number is 1-based, 0 when not
// applicable (binary payloads).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line_number = 0)
      : Error(line_number == 0
                  ? what
                  : "line " + std::to_string(line_number) + ": " + what),
        line_number_(line_number) {}

  std::size_t line_number() const { return line_number_; }

 private:
  std::size_t line_number_;
};

}  // namespace goldenbench

#endif  // GOLDENBENCH_ERROR_H_
