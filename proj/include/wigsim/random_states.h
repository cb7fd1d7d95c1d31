// Copyright 2026 The wigsim Authors
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

#pragma once

#include "wigsim/sampler.h"
#include "wigsim/wigner.h"

namespace wigsim {

/// Haar-random unit vector in C^d.
DenseVector haar_vector(size_t d, SplitMix64 &rng);

/// Random density operator on one qudit with F(rho) >= 0: a Haar pure state
/// mixed with I/p just past the point where its Wigner function turns
/// nonnegative, plus a random extra amount of noise.
DenseOperator random_positive_state(int p, SplitMix64 &rng);

/// Random word over fourier, quadratic, multiply and (for n >= 2) sum.
GeneratorWord random_clifford_word(int p, int n, size_t length, SplitMix64 &rng);

/// Uniformly chosen single-qudit stabilizer ket (a random MUB vector).
DenseVector random_stabilizer_vector(int p, SplitMix64 &rng);

}  // namespace wigsim
