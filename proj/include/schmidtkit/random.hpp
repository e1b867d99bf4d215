// Copyright 2026 The schmidtkit Authors
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
#include <random>

#include "schmidtkit/linalg.hpp"

namespace schmidtkit {

using Rng = std::mt19937_64;

/// Mixes a base seed with a stream index (splitmix64 finalizer), so that
/// restart r or sample s always sees the same generator state regardless of
/// how work is scheduled.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Entries i.i.d. standard complex normal (real and imaginary parts each of
/// variance 1/2).
ComplexMatrix random_ginibre(int rows, int cols, Rng& rng);

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of
/// diag(R) divided out.
ComplexMatrix random_haar_unitary(int n, Rng& rng);

/// First k columns of a Haar unitary.
ComplexMatrix random_isometry(int n, int k, Rng& rng);

}  // namespace schmidtkit
