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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wigsim/circuit.h"

namespace wigsim {

/// SplitMix64 (Steele, Lea, Flood 2014). stream(seed, k) gives independent,
/// reproducible substreams.
class SplitMix64 {
   public:
    explicit SplitMix64(uint64_t state) : state_(state) {
    }
    static SplitMix64 stream(uint64_t seed, uint64_t index);

    uint64_t next();
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    /// Uniform integer in [0, bound).
    uint64_t below(uint64_t bound);
    /// Standard normal (Box-Muller, no caching).
    double normal();

   private:
    uint64_t state_;
};

/// Index k with cdf[k-1] <= x < cdf[k], where x = uniform * cdf.back().
size_t sample_cdf(const std::vector<double> &cdf, SplitMix64 &rng);

struct SampleOptions {
    uint64_t seed = 0;
    uint64_t shots = 0;
    int jobs = 1;
};

struct SampleReport {
    uint64_t shots = 0;
    uint64_t seed = 0;
    std::map<std::string, uint64_t> counts;
    /// Multiply-adds over Z_p spent on phase-space updates, all shots.
    uint64_t field_ops = 0;
};

/// Classical hidden-variable sampler: draws each input point from its Wigner
/// distribution, moves it through the affine maps, and draws measurement
/// outcomes from W_{E_k}(u). Requires a validated program. Output does not
/// depend on `jobs`.
SampleReport sample_classical(const CircuitProgram &prog, const SampleOptions &options);

/// Points sampled from the input distribution and pushed through the
/// straight-line prefix of gates and displacements before the first other
/// instruction.
std::vector<PhasePoint> sample_gate_images(const CircuitProgram &prog, uint64_t seed, size_t count);

/// All points of the affine span of `points` over Z_p.
std::vector<PhasePoint> affine_span(const std::vector<PhasePoint> &points);

}  // namespace wigsim
