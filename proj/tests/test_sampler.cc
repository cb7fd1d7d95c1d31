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

#include <gtest/gtest.h>

#include <filesystem>
#include <set>

#include "wigsim/errors.h"
#include "wigsim/oracle.h"
#include "wigsim/sampler.h"
#include "wigsim/stats.h"

using namespace wigsim;

namespace {

CircuitProgram valid(const std::string &text) {
    CircuitProgram prog = parse_circuit(text);
    auto rep = validate_circuit(prog);
    EXPECT_TRUE(rep.accepted);
    return prog;
}

OutcomeDistribution empirical(const SampleReport &r) {
    OutcomeDistribution d;
    for (const auto &[k, c] : r.counts) d[k] = static_cast<double>(c) / r.shots;
    return d;
}

std::string chain_program(int n, int gates) {
    std::string t = "qudits p=3 n=" + std::to_string(n) + "\n";
    for (int r = 1; r <= n; r++) t += "input " + std::to_string(r) + " zero\n";
    for (int g = 0; g < gates; g++) t += "gate fourier(1)\n";
    for (int r = n; r >= 1; r--) t += "measure " + std::to_string(r) + " computational\n";
    return t;
}

}  // namespace

TEST(Rng, SplitMixReferenceVector) {
    SplitMix64 r(1234567);
    EXPECT_EQ(r.next(), 6457827717110365317ULL);
    EXPECT_EQ(r.next(), 3203168211198807973ULL);
    EXPECT_EQ(r.next(), 9817491932198370423ULL);
}

TEST(Rng, StreamsAreDistinctAndRepeatable) {
    auto a = SplitMix64::stream(7, 0), b = SplitMix64::stream(7, 1), c = SplitMix64::stream(7, 0);
    uint64_t x = a.next();
    EXPECT_NE(x, b.next());
    EXPECT_EQ(x, c.next());
    SplitMix64 u(5);
    double lo = 1, hi = 0, mean = 0;
    for (int i = 0; i < 10000; i++) {
        double v = u.uniform();
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        mean += v / 10000;
    }
    EXPECT_GE(lo, 0.0);
    EXPECT_LT(hi, 1.0);
    EXPECT_NEAR(mean, 0.5, 0.02);
    for (int i = 0; i < 1000; i++) EXPECT_LT(u.below(7), 7u);
}

TEST(Rng, SampleCdf) {
    SplitMix64 r(3);
    std::vector<double> cdf{0.25, 0.25, 1.0};
    int counts[3] = {0, 0, 0};
    for (int i = 0; i < 40000; i++) counts[sample_cdf(cdf, r)]++;
    EXPECT_EQ(counts[1], 0);
    EXPECT_NEAR(counts[0] / 40000.0, 0.25, 0.01);
}

TEST(Sampler, ZeroStateIsDeterministic) {
    auto prog = valid("qudits p=3 n=1\ninput 1 zero\nmeasure 1 computational\n");
    auto r = sample_classical(prog, {1, 10000, 1});
    ASSERT_EQ(r.counts.size(), 1u);
    EXPECT_EQ(r.counts.at("0"), 10000u);
}

TEST(Sampler, MixedIsUniform) {
    auto prog = valid("qudits p=3 n=1\ninput 1 mixed\nmeasure 1 computational\n");
    auto r = sample_classical(prog, {2, 30000, 2});
    EXPECT_LT(total_variation(empirical(r), run_oracle(prog)), 0.02);
}

TEST(Sampler, BranchingProgramsMatchOracle) {
    const std::filesystem::path dir = std::filesystem::path(WIGSIM_DATA_DIR) / "circuits";
    auto prog = load_valid_circuit(dir / "c08_branching.circ");
    auto r = sample_classical(prog, {42, 100000, 4});
    auto cmp = compare_distributions(run_oracle(prog), r.counts, r.shots);
    EXPECT_LT(cmp.tv, 0.01);
    EXPECT_TRUE(cmp.pass);
    auto four = load_valid_circuit(dir / "branching_four.circ");
    auto r4 = sample_classical(four, {42, 100000, 4});
    auto cmp4 = compare_distributions(run_oracle(four), r4.counts, r4.shots);
    EXPECT_TRUE(cmp4.pass);
    EXPECT_GT(cmp4.p_value, 0.001);
}

TEST(Sampler, IndependentOfJobs) {
    auto prog = load_valid_circuit(std::filesystem::path(WIGSIM_DATA_DIR) / "circuits/c08_branching.circ");
    auto a = sample_classical(prog, {9, 20000, 1});
    for (int jobs : {2, 3, 8}) {
        auto b = sample_classical(prog, {9, 20000, jobs});
        EXPECT_EQ(a.counts, b.counts);
        EXPECT_EQ(a.field_ops, b.field_ops);
    }
    auto c = sample_classical(prog, {10, 20000, 1});
    EXPECT_NE(a.counts, c.counts);
}

TEST(Sampler, GateCostIsQuadraticInRegisters) {
    const uint64_t shots = 100;
    for (int n = 1; n <= 6; n++) {
        auto one = sample_classical(valid(chain_program(n, 1)), {1, shots, 1});
        auto three = sample_classical(valid(chain_program(n, 3)), {1, shots, 1});
        uint64_t per_gate = (three.field_ops - one.field_ops) / (2 * shots);
        EXPECT_EQ(per_gate, static_cast<uint64_t>(4 * n * n)) << n;
    }
}

TEST(Sampler, StabilizerLineFromTwoPoints) {
    auto prog = valid("qudits p=3 n=1\ninput 1 zero\ngate fourier(1); quadratic(1)\nmeasure 1 computational\n");
    auto pts = sample_gate_images(prog, 4, 50);
    std::vector<PhasePoint> two{pts[0]};
    for (const auto &q : pts) {
        if (!(q == pts[0])) {
            two.push_back(q);
            break;
        }
    }
    ASSERT_EQ(two.size(), 2u);
    auto line = affine_span(two);
    EXPECT_EQ(line.size(), 3u);

    DenseOperator u = word_unitary(parse_generator_word("fourier(1); quadratic(1)", 3), 3, 1);
    DenseOperator out = u * prog.inputs[0] * u.adjoint();
    auto w = wigner_of_state(QuantumState(out, 3, 1));
    std::set<uint64_t> support, spanned;
    for (const auto &pt : all_phase_points(3, 1)) {
        if (w.at(pt) > 1e-9) support.insert(pt.index());
    }
    for (const auto &pt : line) spanned.insert(pt.index());
    EXPECT_EQ(support, spanned);
}

TEST(Sampler, TwoQutritStabilizerSupport) {
    const char *word = "fourier(1); sum(1,2); quadratic(2); multiply(1,2)";
    auto prog = valid(std::string("qudits p=3 n=2\ninput 1 zero\ninput 2 basis(1)\ngate ") + word +
                      "\nmeasure 2 computational\nmeasure 1 computational\n");
    auto span = affine_span(sample_gate_images(prog, 6, 200));
    DenseOperator u = word_unitary(parse_generator_word(word, 3), 3, 2);
    DenseOperator rho = kron(prog.inputs[0], prog.inputs[1]);
    auto w = wigner_of_state(QuantumState(u * rho * u.adjoint(), 3, 2));
    std::set<uint64_t> support, spanned;
    for (const auto &pt : all_phase_points(3, 2)) {
        if (w.at(pt) > 1e-9) support.insert(pt.index());
    }
    for (const auto &pt : span) spanned.insert(pt.index());
    EXPECT_EQ(support.size(), 9u);
    EXPECT_EQ(support, spanned);
}

TEST(AffineSpan, Basics) {
    auto p0 = PhasePoint::single(5, 1, 2);
    EXPECT_EQ(affine_span({p0}).size(), 1u);
    auto all = affine_span({p0, PhasePoint::single(5, 2, 2), PhasePoint::single(5, 1, 3)});
    EXPECT_EQ(all.size(), 25u);
    auto line = affine_span({p0, PhasePoint::single(5, 2, 4), PhasePoint::single(5, 3, 1)});
    EXPECT_EQ(line.size(), 5u);
}

TEST(Sampler, RequiresValidation) {
    auto prog = parse_circuit("qudits p=3 n=1\ninput 1 zero\nmeasure 1 computational\n");
    EXPECT_THROW(sample_classical(prog, {1, 10, 1}), InvalidArgument);
}
