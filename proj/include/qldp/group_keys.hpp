// Copyright 2026 The QLDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QLDP_GROUP_KEYS_HPP_
#define QLDP_GROUP_KEYS_HPP_

#include <cstdint>
#include <vector>

#include "qldp/qops.hpp"

namespace qldp {

// Hashable identity of a unitary up to global phase.
using PhaseKey = std::vector<std::int64_t>;

// Rescales by a unit phase so the first entry (row-major) with modulus above
// 1e-9 is real and positive.
Matrix canonicalize_phase(const Matrix& u);

// Entries of canonicalize_phase(u) rounded to a 1e-8 grid.
PhaseKey phase_key(const Matrix& u);

}  // namespace qldp

#endif  // QLDP_GROUP_KEYS_HPP_
