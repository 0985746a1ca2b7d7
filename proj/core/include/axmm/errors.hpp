/*
 * Copyright 2026 the axmm authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef AXMM_ERRORS_HPP_
#define AXMM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace axmm {

/** Misuse of the library itself: mixed universes, ill-typed arguments. */
class StructuralError : public std::logic_error {
 public:
  explicit StructuralError(const std::string& what) : std::logic_error(what) {}
};

/** A configured cap was exceeded (basic executions, witnesses, values). */
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/** Syntax or static-semantics error in a model or litmus source text. */
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int col)
      : std::runtime_error(what + " at line " + std::to_string(line) +
                           ", column " + std::to_string(col)),
        line(line),
        col(col) {}

  int line;
  int col;
};

/** Runtime failure while evaluating a parsed model against a candidate. */
class EvalError : public std::runtime_error {
 public:
  explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace axmm

#endif  // AXMM_ERRORS_HPP_
