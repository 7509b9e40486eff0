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

#include <cstdint>
#include <string>
#include <vector>

namespace nnqft::cli {

/// Exit codes: 0 success, 1 verification failure, 2 usage/parse error.
struct CommandOutcome {
    int exit_code = 0;
};

CommandOutcome cmd_synth(unsigned n, const std::string& family, const std::string& out_path);

CommandOutcome cmd_verify(const std::string& circuit_path, const std::string& perm_mode);

CommandOutcome cmd_report(const std::string& records_path, bool inject_error);

CommandOutcome cmd_qpe(const std::string& theta, unsigned t, std::uint64_t shots,
                       std::uint64_t seed, const std::string& layout,
                       const std::string& out_path);

CommandOutcome cmd_qae(double theta_const, const std::vector<double>& theta_linear,
                       unsigned m_bits, std::uint64_t shots, std::uint64_t seed,
                       const std::string& out_path);

/// Full argv dispatch used by the binary.
int run_cli(int argc, const char* const* argv);

}  // namespace nnqft::cli
