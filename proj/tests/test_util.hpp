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

#include <numbers>
#include <random>

#include "nnqft/circuit.hpp"

namespace nnqft::testing {

inline double uniform_angle(std::mt19937_64& rng) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return (2.0 * u - 1.0) * std::numbers::pi;
}

inline Gate random_gate(unsigned n, std::mt19937_64& rng) {
    const unsigned pick = static_cast<unsigned>(rng() % 10);
    const QubitIndex q = static_cast<QubitIndex>(rng() % n);
    QubitIndex r = n > 1 ? static_cast<QubitIndex>(rng() % (n - 1)) : 0;
    if (r >= q) ++r;
    switch (pick) {
        case 0: return Gate::h(q);
        case 1: return Gate::x(q);
        case 2: return Gate::rx(q, uniform_angle(rng));
        case 3: return Gate::ry(q, uniform_angle(rng));
        case 4: return Gate::rz(q, uniform_angle(rng));
        case 5: return Gate::cnot(q, r);
        case 6: return Gate::cp(q, r, uniform_angle(rng));
        case 7: return Gate::crz(q, r, uniform_angle(rng));
        case 8: return Gate::cry(q, r, uniform_angle(rng));
        default: return Gate::swap(q, r);
    }
}

inline Circuit random_circuit(unsigned n, std::size_t gates, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Circuit c(n);
    for (std::size_t i = 0; i < gates; ++i) {
        Gate g = random_gate(n, rng);
        if (n == 1 && g.is_two_qubit()) g = Gate::rz(0, uniform_angle(rng));
        c.add(g);
    }
    return c;
}

}  // namespace nnqft::testing
