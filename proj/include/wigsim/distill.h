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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wigsim/random_states.h"
#include "wigsim/wigner.h"

namespace wigsim {

enum class ChannelKind { Identity, Clifford, Kraus };

struct DistillationInstance {
    int p = 3;
    int n = 2;
    DenseOperator rho_in;
    ChannelKind channel = ChannelKind::Identity;
    GeneratorWord word;
    std::vector<DenseOperator> kraus;
    /// Caller's claim that the Kraus map sends positively represented states
    /// to positively represented states.
    bool positivity_asserted = false;
    /// Run check_positivity_preservation before accepting the Kraus map.
    bool check_positivity = false;
    /// Projector on registers 2..n.
    DenseOperator projector;
    /// Run even when F(rho_in) < 0; the result then carries no verdict.
    bool force = false;
};

struct DistillResult {
    DenseOperator rho_out;
    double f_in = 0;
    double f_out = 0;
    double probability = 0;
    /// Empty when the run was forced past a negative input.
    std::optional<bool> pass;
};

/// rho_out = Tr_{2..n}[(I x P) L(rho_in) (I x P)] / norm and F(rho_out).
/// Throws InputNegativelyRepresented (unless forced), ZeroProbabilityBranch
/// when the norm is below 1e-12, and InvalidArgument for a bad projector or an
/// unasserted Kraus map.
DistillResult distill_step(const DistillationInstance &inst);

/// Smallest F(L(rho)) over `samples` random positively represented product
/// states; the map preserves positivity on the sample iff this is >= -1e-8.
double check_positivity_preservation(const std::vector<DenseOperator> &kraus, int p, int n, size_t samples,
                                     uint64_t seed);

/// Text format:
///   distill v1
///   qudits p=<p> n=<n>
///   input <preset> ... (one per register) | input matrix-file:<path> (whole state)
///   channel identity | channel clifford <word> | channel kraus positivity-preserving [check]
///   kraus matrix-file:<path>       (repeated, Kraus channels only)
///   project <preset> ...  (one pure preset per ancilla) | project matrix-file:<path>
///   force                          (optional)
DistillationInstance parse_distill_instance(const std::string &text, const std::filesystem::path &base = ".");

/// Random product of positively represented inputs, a random Clifford word of
/// `length` generators and a random stabilizer projector on the ancillas,
/// redrawn until the post-selection has nonzero probability.
DistillationInstance random_distill_instance(int p, int n, size_t length, SplitMix64 &rng);

}  // namespace wigsim
