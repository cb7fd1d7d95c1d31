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

#include "oracles.h"
#include "wigsim/errors.h"
#include "wigsim/random_states.h"
#include "wigsim/text_io.h"
#include "wigsim/wigner.h"

using namespace wigsim;
using namespace wigsim::testing;

namespace {

Mat projector(const Vec &v) {
    return v * v.adjoint();
}

Mat random_density(int d, SplitMix64 &rng) {
    Mat g(d, d);
    for (int i = 0; i < d; i++) g.col(i) = haar_vector(d, rng) * (0.2 + rng.uniform());
    Mat r = g * g.adjoint();
    return r / r.trace().real();
}

// Direct W(u) = Tr(A_u rho) / d with A_u = T_u P T_u^dagger from raw X and Z.
std::vector<double> wigner_reference(const Mat &rho, int p) {
    std::vector<double> w;
    for (int a1 = 0; a1 < p; a1++) {
        for (int a2 = 0; a2 < p; a2++) {
            Mat t = weyl_reference(p, a1, a2);
            Mat a = t * parity_matrix(p) * t.adjoint();
            w.push_back((a * rho).trace().real() / p);
        }
    }
    return w;
}

}  // namespace

TEST(WignerState, MaximallyMixed) {
    auto w = wigner_of_state(QuantumState(Mat::Identity(3, 3) / 3.0, 3, 1));
    for (double v : w.values) EXPECT_NEAR(v, 1.0 / 9, 1e-14);
    EXPECT_NEAR(negativity_F(QuantumState(Mat::Identity(3, 3) / 3.0, 3, 1)), 1.0 / 3, 1e-14);
}

TEST(WignerState, ZeroStateIsALine) {
    auto w = wigner_of_state(QuantumState(projector(basis_ket(3, 0)), 3, 1));
    for (const auto &u : all_phase_points(3, 1)) {
        EXPECT_NEAR(w.at(u), u.x(0) == 0 ? 1.0 / 3 : 0.0, 1e-14) << u.str();
    }
}

TEST(WignerState, StrangeStateExtremal) {
    Vec s = (basis_ket(3, 1) - basis_ket(3, 2)) / std::sqrt(2.0);
    QuantumState rho(projector(s), 3, 1);
    auto w = wigner_of_state(rho);
    EXPECT_NEAR(w.at(PhasePoint(3, 1)), -1.0 / 3, 1e-14);
    EXPECT_NEAR(w.minimum().first, -1.0 / 3, 1e-14);
    EXPECT_NEAR(negativity_F(rho), -1.0, 1e-13);
    EXPECT_FALSE(is_positively_represented(rho.rho(), 3, 1, WignerKind::State));
    EXPECT_LT(max_abs(projector(strange_vector(3)) - projector(s)), 1e-14);
}

TEST(WignerState, AgreesWithReference) {
    SplitMix64 rng(17);
    for (int p : {3, 5}) {
        for (int t = 0; t < 5; t++) {
            Mat rho = random_density(p, rng);
            auto w = wigner_of_state(QuantumState(rho, p, 1));
            auto ref = wigner_reference(rho, p);
            for (size_t k = 0; k < ref.size(); k++) EXPECT_NEAR(w.values[k], ref[k], 1e-12);
            EXPECT_NEAR(w.sum(), 1.0, 1e-12);
        }
    }
}

TEST(WignerState, Factorizes) {
    SplitMix64 rng(4);
    Mat a = random_density(3, rng), b = random_density(3, rng);
    auto wa = wigner_of_state(QuantumState(a, 3, 1));
    auto wb = wigner_of_state(QuantumState(b, 3, 1));
    auto wab = wigner_of_state(QuantumState(kron2(a, b), 3, 2));
    for (const auto &u : all_phase_points(3, 2)) {
        EXPECT_NEAR(wab.at(u), wa.at(u.block(0)) * wb.at(u.block(1)), 1e-13);
    }
}

TEST(WignerState, RoundTrip) {
    SplitMix64 rng(23);
    for (int n : {1, 2}) {
        Mat rho = random_density(static_cast<int>(checked_pow(3, n)), rng);
        auto w = wigner_of_state(QuantumState(rho, 3, n));
        EXPECT_LT(max_abs(state_from_wigner(w) - rho), 1e-10);
    }
    WignerFunction uniform{3, 1, WignerKind::State, std::vector<double>(9, 1.0 / 9)};
    EXPECT_LT(max_abs(state_from_wigner(uniform) - Mat::Identity(3, 3) / 3.0), 1e-14);
}

TEST(WignerState, IndicatorIsParity) {
    WignerFunction w{3, 1, WignerKind::State, std::vector<double>(9, 0.0)};
    w.values[0] = 1;
    Mat m = state_from_wigner(w);
    EXPECT_LT(max_abs(m - parity_matrix(3)), 1e-12);
    EXPECT_NEAR(min_eigenvalue(m), -1.0, 1e-12);
    EXPECT_THROW(QuantumState(m, 3, 1), InvalidArgument);
}

TEST(WignerEffect, Examples) {
    auto wi = wigner_of_effect(Mat::Identity(3, 3), 3, 1);
    for (double v : wi.values) EXPECT_NEAR(v, 1.0, 1e-14);
    auto w0 = wigner_of_effect(projector(basis_ket(3, 0)), 3, 1);
    for (const auto &u : all_phase_points(3, 1)) {
        EXPECT_NEAR(w0.at(u), u.x(0) == 0 ? 1.0 : 0.0, 1e-14);
    }
    auto wa = wigner_of_effect(parity_matrix(3), 3, 1);
    for (const auto &u : all_phase_points(3, 1)) {
        EXPECT_NEAR(wa.at(u), u.is_zero() ? 3.0 : 0.0, 1e-12);
    }
    Mat nonherm = Mat::Zero(3, 3);
    nonherm(0, 1) = 1;
    EXPECT_THROW(wigner_of_effect(nonherm, 3, 1), InvalidArgument);
}

TEST(WignerEffect, CompletePovmSumsToOne) {
    for (int b = 0; b <= 3; b++) {
        Povm m = b == 0 ? Povm::computational(3) : Povm::mub(3, b);
        std::vector<double> total(9, 0.0);
        for (size_t k = 0; k < m.size(); k++) {
            EXPECT_TRUE(is_positively_represented(m.effect(k), 3, 1, WignerKind::Effect));
            auto w = wigner_of_effect(m.effect(k), 3, 1);
            for (size_t i = 0; i < 9; i++) total[i] += w.values[i];
        }
        for (double t : total) EXPECT_NEAR(t, 1.0, 1e-12);
    }
}

TEST(Born, Examples) {
    const int p = 3;
    auto mixed = wigner_of_state(QuantumState(Mat::Identity(3, 3) / 3.0, p, 1));
    EXPECT_NEAR(born_probability(mixed, wigner_of_effect(Mat::Identity(3, 3), p, 1)), 1.0, 1e-13);
    Mat z = projector(basis_ket(3, 0));
    EXPECT_NEAR(born_probability(wigner_of_state(QuantumState(z, p, 1)), wigner_of_effect(z, p, 1)), 1.0, 1e-13);
    Mat s = projector(strange_vector(3));
    EXPECT_NEAR(born_probability(wigner_of_state(QuantumState(s, p, 1)), wigner_of_effect(z, p, 1)), 0.0, 1e-13);
}

TEST(Born, EqualsTraceInnerProduct) {
    SplitMix64 rng(31);
    for (int t = 0; t < 10; t++) {
        Mat rho = random_density(9, rng);
        Mat e = random_density(9, rng);
        e /= e.operatorNorm();
        double direct = (rho * e).trace().real();
        double phase = born_probability(wigner_of_state(QuantumState(rho, 3, 2)), wigner_of_effect(e, 3, 2));
        EXPECT_NEAR(phase, direct, 1e-12);
    }
}

TEST(Hudson, StabilizerStatesAreNonnegative) {
    for (int p : {3, 5}) {
        for (int b = 0; b <= p; b++) {
            for (int j = 0; j < p; j++) {
                Mat rho = projector(mub_vector(p, b, j));
                auto w = wigner_of_state(QuantumState(rho, p, 1));
                EXPECT_GE(w.minimum().first, -1e-12);
                EXPECT_NEAR(negativity_F(QuantumState(rho, p, 1)), 0.0, 1e-12);
            }
        }
    }
}

TEST(Hudson, RandomPureStatesAreNegative) {
    SplitMix64 rng(77);
    for (int t = 0; t < 50; t++) {
        Mat rho = projector(haar_vector(3, rng));
        EXPECT_LT(negativity_F(rho, 3, 1), -1e-6);
    }
}

TEST(Hudson, RandomPositiveStateIsPositive) {
    SplitMix64 rng(12);
    for (int t = 0; t < 50; t++) {
        Mat rho = random_positive_state(3, rng);
        EXPECT_GE(negativity_F(rho, 3, 1), -1e-12);
        EXPECT_GE(min_eigenvalue(rho), -1e-12);
    }
}

TEST(Validation, QuantumStateChecks) {
    Mat m = Mat::Identity(3, 3) / 2.0;
    EXPECT_THROW(QuantumState(m, 3, 1), InvalidArgument);
    Mat nh = Mat::Identity(3, 3) / 3.0;
    nh(0, 1) = 0.1;
    EXPECT_THROW(QuantumState(nh, 3, 1), InvalidArgument);
    EXPECT_THROW(QuantumState(Mat::Identity(3, 3) / 3.0, 3, 2), InvalidArgument);
}

TEST(Validation, PovmChecks) {
    std::vector<std::pair<std::string, DenseOperator>> bad{{"0", projector(basis_ket(3, 0))}};
    EXPECT_THROW(Povm(bad, 3), InvalidArgument);
    std::vector<std::pair<std::string, DenseOperator>> neg{
        {"0", parity_matrix(3)}, {"1", Mat::Identity(3, 3) - parity_matrix(3)}};
    EXPECT_THROW(Povm(neg, 3), InvalidArgument);
    EXPECT_EQ(Povm::computational(3).find("2"), 2);
    EXPECT_EQ(Povm::computational(3).find("x"), -1);
}

TEST(PartialTrace, MatchesManualSum) {
    SplitMix64 rng(9);
    Mat rho = random_density(27, rng);
    Mat ref = Mat::Zero(3, 3);
    for (int i = 0; i < 3; i++)
        for (int j = 0; j < 3; j++)
            for (int a = 0; a < 3; a++)
                for (int c = 0; c < 3; c++) ref(i, j) += rho(a * 9 + i * 3 + c, a * 9 + j * 3 + c);
    EXPECT_LT(max_abs(partial_trace_keep(rho, 3, 3, {1}) - ref), 1e-13);
    Mat a = random_density(3, rng), b = random_density(3, rng);
    EXPECT_LT(max_abs(partial_trace_keep(kron2(a, b), 3, 2, {1, 0}) - kron2(b, a)), 1e-13);
}

TEST(Negativity, InvariantUnderClifford) {
    SplitMix64 rng(41);
    for (int t = 0; t < 10; t++) {
        Mat rho = random_density(9, rng);
        auto word = random_clifford_word(3, 2, 6, rng);
        Mat u = word_unitary(word, 3, 2);
        EXPECT_NEAR(negativity_F(u * rho * u.adjoint(), 3, 2), negativity_F(rho, 3, 2), 1e-12);
    }
}
