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

#include "wigsim/random_states.h"

namespace wigsim {

DenseVector haar_vector(size_t d, SplitMix64 &rng) {
    DenseVector v(d);
    for (size_t k = 0; k < d; k++) {
        double re = rng.normal();
        double im = rng.normal();
        v(k) = cplx(re, im);
    }
    return v / v.norm();
}

DenseOperator random_positive_state(int p, SplitMix64 &rng) {
    DenseVector psi = haar_vector(p, rng);
    DenseOperator pure = psi * psi.adjoint();
    DenseOperator mixed = DenseOperator::Identity(p, p) / static_cast<double>(p);
    // F is affine in the mixing weight t, and F(I/p) = 1/p.
    double f = negativity_F(pure, p, 1);
    double t = f < 0 ? -f / (1.0 / p - f) : 0.0;
    t += (1.0 - t) * 0.3 * rng.uniform();
    return (1.0 - t) * pure + t * mixed;
}

GeneratorWord random_clifford_word(int p, int n, size_t length, SplitMix64 &rng) {
    GeneratorWord word;
    const uint64_t kinds = n >= 2 ? 4 : 3;
    for (size_t k = 0; k < length; k++) {
        int reg = static_cast<int>(rng.below(n));
        switch (rng.below(kinds)) {
            case 0:
                word.push_back(Generator::fourier(reg));
                break;
            case 1:
                word.push_back(Generator::quadratic(reg));
                break;
            case 2:
                word.push_back(Generator::multiply(reg, 1 + static_cast<int>(rng.below(p - 1))));
                break;
            default: {
                int tgt = static_cast<int>(rng.below(n - 1));
                if (tgt >= reg) {
                    tgt++;
                }
                word.push_back(Generator::sum(reg, tgt));
                break;
            }
        }
    }
    return word;
}

DenseVector random_stabilizer_vector(int p, SplitMix64 &rng) {
    int basis = static_cast<int>(rng.below(p + 1));
    int j = static_cast<int>(rng.below(p));
    return mub_vector(p, basis, j);
}

}  // namespace wigsim
