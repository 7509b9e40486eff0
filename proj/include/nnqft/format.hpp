// Copyright 2026 The nnqft authors
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

#include "nnqft/circuit.hpp"

namespace nnqft {

/// Parse failure carrying the 1-based line number and offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::string token, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what +
                             (token.empty() ? "" : " ('" + token + "')")),
          line_(line),
          token_(std::move(token)) {}
    std::size_t line() const { return line_; }
    const std::string& token() const { return token_; }

private:
    std::size_t line_;
    std::string token_;
};

/// Line-based circuit text. '#' starts a comment. First line `qubits <n>`,
/// optional `perm <p0> ... <p(n-1)>` and `phase <radians>`, then one gate per
/// line. Angles are printed with 17 significant digits so that the round trip
/// is exact.
std::string serialize(const Circuit& c);

Circuit parse_circuit(const std::string& text);

}  // namespace nnqft
