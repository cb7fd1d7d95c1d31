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

#include "oracles.h"
#include "wigsim/distill.h"
#include "wigsim/errors.h"
#include "wigsim/text_io.h"

using namespace wigsim;
using namespace wigsim::testing;

namespace {

Mat proj(const Vec &v) {
    return v * v.adjoint();
}

// Tr_2[(I x P) U rho U^dagger (I x P)] / norm for two qutrits.
Mat reference_output(const Mat &rho, const Mat &u, const Mat &p, double *norm) {
    Mat ip = kron2(Mat::Identity(3, 3), p);
    Mat post = ip * u * rho * u.adjoint() * ip;
    Mat out = Mat::Zero(3, 3);
    for (int i = 0; i < 3; i++)
        for (int j = 0; j < 3; j++)
            for (int k = 0; k < 3; k++) out(i, j) += post(i * 3 + k, j * 3 + k);
    *norm = out.trace().real();
    return out / *norm;
}

DistillationInstance base_instance() {
    DistillationInstance inst;
    inst.p = 3;
    inst.n = 2;
    inst.rho_in = kron2(proj(basis_ket(3, 0)), proj(basis_ket(3, 0)));
    inst.projector = proj(basis_ket(3, 0));
    return inst;
}

}  // namespace

TEST(Distill, IdentityExample) {
    auto r = distill_step(base_instance());
    EXPECT_LT(max_abs(r.rho_out - proj(basis_ket(3, 0))), 1e-12);
    EXPECT_NEAR(r.f_out, 0.0, 1e-12);
    EXPECT_NEAR(r.probability, 1.0, 1e-12);
    ASSERT_TRUE(r.pass.has_value());
    EXPECT_TRUE(*r.pass);
}

TEST(Distill, RandomCliffordMatchesReference) {
    SplitMix64 rng(21);
    for (int t = 0; t < 20; t++) {
        DistillationInstance inst = base_instance();
        inst.rho_in = kron2(random_positive_state(3, rng), random_positive_state(3, rng));
        inst.channel = ChannelKind::Clifford;
        inst.word = random_clifford_word(3, 2, 10, rng);
        double norm = 0;
        Mat ref = reference_output(inst.rho_in, word_unitary(inst.word, 3, 2), inst.projector, &norm);
        if (norm < 1e-9) continue;
        auto r = distill_step(inst);
        EXPECT_LT(max_abs(r.rho_out - ref), 1e-10);
        EXPECT_NEAR(r.probability, norm, 1e-12);
        EXPECT_GE(r.f_out, -1e-8);
        EXPECT_TRUE(r.pass.value_or(false));
    }
}

TEST(Distill, NegativeInputRejectedUnlessForced) {
    DistillationInstance inst = base_instance();
    Mat s = proj(strange_vector(3));
    inst.rho_in = kron2(s, s);
    inst.projector = proj(basis_ket(3, 1));
    EXPECT_THROW(distill_step(inst), InputNegativelyRepresented);
    inst.force = true;
    auto r = distill_step(inst);
    EXPECT_FALSE(r.pass.has_value());
    EXPECT_LT(r.f_in, 0);
    EXPECT_NEAR(r.f_out, -1.0, 1e-12);
    EXPECT_LT(max_abs(r.rho_out - s), 1e-12);
}

TEST(Distill, ZeroProbabilityBranch) {
    DistillationInstance inst = base_instance();
    inst.projector = proj(basis_ket(3, 1));
    EXPECT_THROW(distill_step(inst), ZeroProbabilityBranch);
}

TEST(Distill, ProjectorChecks) {
    DistillationInstance inst = base_instance();
    inst.projector = Mat::Identity(3, 3) * 0.5;
    EXPECT_THROW(distill_step(inst), InvalidArgument);
    inst.projector = proj(strange_vector(3));
    EXPECT_THROW(distill_step(inst), InvalidArgument);
}

TEST(Distill, KrausNeedsAssertion) {
    DistillationInstance inst = base_instance();
    inst.channel = ChannelKind::Kraus;
    inst.kraus = {word_unitary(parse_generator_word("fourier(1); sum(1,2)", 3), 3, 2)};
    EXPECT_THROW(distill_step(inst), InvalidArgument);
    inst.positivity_asserted = true;
    inst.check_positivity = true;
    auto r = distill_step(inst);
    EXPECT_TRUE(r.pass.value_or(false));
    EXPECT_GE(check_positivity_preservation(inst.kraus, 3, 2, 50, 1), -1e-8);
}

TEST(Distill, TwirlIsPositivityPreserving) {
    std::vector<DenseOperator> kraus;
    for (int a = 0; a < 3; a++) {
        kraus.push_back(embed_operator(weyl_reference(3, a, 0), 0, 3, 2) / std::sqrt(3.0));
    }
    EXPECT_GE(check_positivity_preservation(kraus, 3, 2, 100, 2), -1e-8);
    // rho -> strange (x) Tr_1 rho
    std::vector<DenseOperator> cheat;
    for (int j = 0; j < 3; j++) {
        cheat.push_back(kron2(strange_vector(3) * basis_ket(3, j).adjoint(), Mat::Identity(3, 3)));
    }
    EXPECT_LT(check_positivity_preservation(cheat, 3, 2, 100, 2), -1e-8);
}

TEST(Distill, ParseInstances) {
    const std::filesystem::path dir = std::filesystem::path(WIGSIM_DATA_DIR) / "distill";
    auto id = parse_distill_instance(read_text_file(dir / "identity.dist"), dir);
    EXPECT_EQ(id.channel, ChannelKind::Identity);
    EXPECT_TRUE(distill_step(id).pass.value_or(false));
    auto cl = parse_distill_instance(read_text_file(dir / "clifford.dist"), dir);
    EXPECT_EQ(cl.channel, ChannelKind::Clifford);
    EXPECT_EQ(cl.word.size(), 5u);
    EXPECT_TRUE(distill_step(cl).pass.value_or(false));
    auto neg = parse_distill_instance(read_text_file(dir / "negative_input.dist"), dir);
    EXPECT_THROW(distill_step(neg), InputNegativelyRepresented);
    auto forced = parse_distill_instance(read_text_file(dir / "negative_forced.dist"), dir);
    EXPECT_TRUE(forced.force);
    EXPECT_FALSE(distill_step(forced).pass.has_value());
    EXPECT_THROW(parse_distill_instance("distill v1\nqudits p=3 n=2\nchannel warp\n"), ParseError);
}

TEST(Distill, RandomInstancesPass) {
    SplitMix64 rng(3);
    for (int t = 0; t < 25; t++) {
        auto inst = random_distill_instance(3, 2, 10, rng);
        auto r = distill_step(inst);
        EXPECT_GE(r.f_out, -1e-8);
        EXPECT_GE(r.probability, 1e-9);
    }
}
