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
#include "wigsim/weyl.h"

using namespace wigsim;
using namespace wigsim::testing;

namespace {

std::vector<Generator> all_generators(int p, int n) {
    std::vector<Generator> gens;
    for (int r = 0; r < n; r++) {
        gens.push_back(Generator::fourier(r));
        gens.push_back(Generator::quadratic(r));
        for (int c = 2; c < p; c++) gens.push_back(Generator::multiply(r, c));
        gens.push_back(Generator::displace(r, 1, 0));
        gens.push_back(Generator::displace(r, 0, 1));
        gens.push_back(Generator::displace(r, 2, 1));
        for (int t = 0; t < n; t++) {
            if (t != r) gens.push_back(Generator::sum(r, t));
        }
    }
    return gens;
}

double covariance_error(const DenseOperator &u, const CliffordElement &g, int p, int n) {
    double worst = 0;
    for (const auto &pt : all_phase_points(p, n)) {
        DenseOperator lhs = u * phase_point_operator(pt) * u.adjoint();
        DenseOperator rhs = phase_point_operator(apply_affine(g, pt));
        worst = std::max(worst, max_abs(lhs - rhs));
    }
    return worst;
}

}  // namespace

TEST(Weyl, Examples) {
    const int p = 3;
    EXPECT_LT(max_abs(weyl_operator(PhasePoint(p, 1)) - Mat::Identity(3, 3)), 1e-14);
    EXPECT_LT(max_abs(weyl_operator(PhasePoint::single(p, 0, 1)) - shift_matrix(p)), 1e-14);
    Mat zx = clock_matrix(p) * shift_matrix(p);
    EXPECT_LT(max_abs(weyl_operator(PhasePoint::single(p, 1, 1)) - root_of_unity(p, 1) * zx), 1e-14);
}

TEST(Weyl, MatchesBruteForceProduct) {
    for (int p : {3, 5, 7}) {
        for (int a1 = 0; a1 < p; a1++) {
            for (int a2 = 0; a2 < p; a2++) {
                auto t = weyl_operator(PhasePoint::single(p, a1, a2));
                EXPECT_LT(max_abs(t - weyl_reference(p, a1, a2)), 1e-12) << p << " " << a1 << " " << a2;
            }
        }
    }
}

TEST(Weyl, TensorComposition) {
    const int p = 3;
    for (const auto &u : all_phase_points(p, 2)) {
        Mat ref = kron2(weyl_reference(p, u[0], u[1]), weyl_reference(p, u[2], u[3]));
        EXPECT_LT(max_abs(weyl_operator(u) - ref), 1e-12);
    }
}

TEST(Weyl, SymmetricConventionIsSelfInverse) {
    for (int p : {3, 5}) {
        for (const auto &u : all_phase_points(p, 1)) {
            Mat prod = weyl_operator(u) * weyl_operator(-u);
            EXPECT_LT(max_abs(prod - Mat::Identity(p, p)), 1e-12);
        }
    }
}

TEST(Weyl, MonomialAgreesWithDense) {
    const int p = 5;
    SplitMix64 rng(3);
    Mat rho = Mat::Random(p, p);
    for (const auto &u : all_phase_points(p, 1)) {
        auto m = phase_point_monomial(u);
        EXPECT_LT(max_abs(m.to_dense() - phase_point_operator(u)), 1e-13);
        EXPECT_LT(std::abs(m.trace_against(rho) - (phase_point_operator(u) * rho).trace()), 1e-12);
        EXPECT_LT(max_abs(weyl_monomial(u).to_dense() - weyl_operator(u)), 1e-13);
    }
}

TEST(PhasePointOperator, OriginIsParity) {
    for (int p : {3, 5, 7}) {
        EXPECT_LT(max_abs(phase_point_operator(PhasePoint(p, 1)) - parity_matrix(p)), 1e-12);
    }
}

TEST(PhasePointOperator, DisplacedParity) {
    const int p = 5;
    const Mat par = parity_matrix(p);
    for (int a1 = 0; a1 < p; a1++) {
        for (int a2 = 0; a2 < p; a2++) {
            Mat t = weyl_reference(p, a1, a2);
            Mat ref = t * par * t.adjoint();
            EXPECT_LT(max_abs(phase_point_operator(PhasePoint::single(p, a1, a2)) - ref), 1e-12);
        }
    }
}

TEST(PhasePointOperator, OrthogonalityAndCompleteness) {
    for (int p : {3, 5}) {
        auto pts = all_phase_points(p, 1);
        Mat total = Mat::Zero(p, p);
        for (const auto &u : pts) {
            Mat au = phase_point_operator(u);
            total += au;
            EXPECT_LT(max_abs(au - au.adjoint()), 1e-13);
            EXPECT_NEAR(au.trace().real(), 1.0, 1e-12);
            for (const auto &v : pts) {
                std::complex<double> tr = (au * phase_point_operator(v)).trace();
                EXPECT_LT(std::abs(tr - (u == v ? double(p) : 0.0)), 1e-10);
            }
        }
        EXPECT_LT(max_abs(total - p * Mat::Identity(p, p)), 1e-10);
    }
}

TEST(PhasePointOperator, TwoQuditGramIsScaledIdentity) {
    const int p = 3;
    PhasePointTable table(p, 2);
    ASSERT_EQ(table.size(), 81u);
    Eigen::MatrixXd gram(81, 81);
    for (size_t i = 0; i < 81; i++) {
        for (size_t j = 0; j < 81; j++) {
            gram(i, j) = (table[i] * table[j]).trace().real();
        }
    }
    EXPECT_LT((gram - 9.0 * Eigen::MatrixXd::Identity(81, 81)).cwiseAbs().maxCoeff(), 1e-10);
    Eigen::MatrixXd coords(81, 81);
    for (size_t i = 0; i < 81; i++) coords.col(i) = hermitian_coords(table[i]);
    EXPECT_EQ(numeric_rank(coords), 81);
}

TEST(Generators, UnitariesMatchDefinitions) {
    const int p = 3;
    EXPECT_LT(max_abs(generator_unitary(Generator::fourier(0), p, 1) - fourier_reference(p)), 1e-12);
    Mat q = Mat::Zero(p, p);
    for (int x = 0; x < p; x++) q(x, x) = root_of_unity(p, static_cast<long>(x) * x * inv2(p));
    EXPECT_LT(max_abs(generator_unitary(Generator::quadratic(0), p, 1) - q), 1e-12);
    Mat m = Mat::Zero(p, p);
    for (int x = 0; x < p; x++) m((2 * x) % p, x) = 1;
    EXPECT_LT(max_abs(generator_unitary(Generator::multiply(0, 2), p, 1) - m), 1e-12);
    Mat s = Mat::Zero(9, 9);
    for (int x = 0; x < p; x++)
        for (int y = 0; y < p; y++) s(x * p + (x + y) % p, x * p + y) = 1;
    EXPECT_LT(max_abs(generator_unitary(Generator::sum(0, 1), p, 2) - s), 1e-12);
    Mat d = kron2(Mat::Identity(3, 3), weyl_reference(p, 2, 1));
    EXPECT_LT(max_abs(generator_unitary(Generator::displace(1, 2, 1), p, 2) - d), 1e-12);
}

TEST(Generators, DisplaceElement) {
    auto [u, g] = clifford_generator(Generator::displace(0, 1, 0), 3, 1);
    EXPECT_LT(max_abs(u - weyl_reference(3, 1, 0)), 1e-12);
    EXPECT_EQ(g, CliffordElement::displacement(PhasePoint::single(3, 1, 0)));
}

TEST(Generators, SumIsPermutationWithZeroShift) {
    auto [u, g] = clifford_generator(Generator::sum(0, 1), 3, 2);
    for (Eigen::Index c = 0; c < 9; c++) {
        EXPECT_NEAR(u.col(c).cwiseAbs().sum(), 1.0, 1e-12);
        EXPECT_NEAR(u.col(c).cwiseAbs().maxCoeff(), 1.0, 1e-12);
    }
    EXPECT_TRUE(g.a.is_zero());
    EXPECT_EQ(g.f.matrix().rows(), 4u);
    EXPECT_EQ(extract_symplectic(u, 3, 2), g);
}

TEST(Generators, Validation) {
    EXPECT_THROW(validate_generator(Generator::multiply(0, 3), 3, 1), InvalidArgument);
    EXPECT_THROW(validate_generator(Generator::sum(0, 0), 3, 2), InvalidArgument);
    EXPECT_THROW(validate_generator(Generator::fourier(2), 3, 2), InvalidArgument);
}

TEST(Covariance, EveryGeneratorExhaustive) {
    const int p = 3;
    for (int n : {1, 2}) {
        for (const auto &g : all_generators(p, n)) {
            auto [u, elem] = clifford_generator(g, p, n);
            EXPECT_LT(covariance_error(u, elem, p, n), 1e-10) << g.str();
            EXPECT_EQ(extract_symplectic(u, p, n), elem) << g.str();
        }
    }
}

TEST(Covariance, SampledAtFive) {
    const int p = 5;
    for (const auto &g : all_generators(p, 1)) {
        auto [u, elem] = clifford_generator(g, p, 1);
        EXPECT_LT(covariance_error(u, elem, p, 1), 1e-10) << g.str();
    }
}

TEST(Covariance, RandomWords) {
    SplitMix64 rng(99);
    for (int t = 0; t < 20; t++) {
        int n = 1 + t % 2;
        auto word = random_clifford_word(3, n, 1 + rng.below(8), rng);
        word.push_back(Generator::displace(0, 1 + rng.below(2), rng.below(3)));
        DenseOperator u = word_unitary(word, 3, n);
        CliffordElement g = word_element(word, 3, n);
        EXPECT_LT(covariance_error(u, g, 3, n), 1e-10);
    }
}

TEST(Extract, Examples) {
    EXPECT_EQ(extract_symplectic(Mat::Identity(3, 3), 3, 1), CliffordElement::identity(3, 1));
    EXPECT_EQ(extract_symplectic(weyl_reference(3, 2, 1), 3, 1),
              CliffordElement::displacement(PhasePoint::single(3, 2, 1)));
    CliffordElement f = generator_element(Generator::fourier(0), 3, 1);
    for (double theta : {0.3, 1.7, -2.9}) {
        Mat u = std::polar(1.0, theta) * fourier_reference(3);
        EXPECT_EQ(extract_symplectic(u, 3, 1), f);
    }
}

TEST(Extract, Homomorphism) {
    SplitMix64 rng(2024);
    for (int t = 0; t < 30; t++) {
        int n = 1 + t % 2;
        auto w1 = random_clifford_word(3, n, 1 + rng.below(8), rng);
        auto w2 = random_clifford_word(3, n, 1 + rng.below(8), rng);
        DenseOperator u1 = word_unitary(w1, 3, n), u2 = word_unitary(w2, 3, n);
        auto g1 = extract_symplectic(u1, 3, n);
        auto g2 = extract_symplectic(u2, 3, n);
        EXPECT_EQ(extract_symplectic(u2 * u1, 3, n), g2.after(g1));
    }
}

TEST(Extract, RejectsNonClifford) {
    Mat t = Mat::Identity(3, 3);
    t(2, 2) = std::polar(1.0, 0.4);
    EXPECT_THROW(extract_symplectic(t, 3, 1), NotClifford);
    SplitMix64 rng(8);
    Mat h = Mat::Zero(3, 3);
    for (int i = 0; i < 3; i++) h.col(i) = haar_vector(3, rng);
    Eigen::HouseholderQR<Mat> qr(h);
    Mat q = qr.householderQ();
    EXPECT_THROW(extract_symplectic(q, 3, 1), NotClifford);
}

TEST(Mub, Unbiased) {
    for (int p : {3, 5, 7}) {
        for (int b = 0; b <= p; b++) {
            for (int j = 0; j < p; j++) {
                DenseVector v = mub_vector(p, b, j);
                EXPECT_NEAR(v.norm(), 1.0, 1e-12);
                for (int b2 = 0; b2 <= p; b2++) {
                    for (int j2 = 0; j2 < p; j2++) {
                        double ov = std::norm(v.dot(mub_vector(p, b2, j2)));
                        double want = b == b2 ? (j == j2 ? 1.0 : 0.0) : 1.0 / p;
                        EXPECT_NEAR(ov, want, 1e-12);
                    }
                }
            }
        }
    }
}

TEST(WeylCoefficient, ExpansionReconstructs) {
    const int p = 3;
    Mat m = Mat::Random(9, 9);
    Mat rebuilt = Mat::Zero(9, 9);
    for (const auto &v : all_phase_points(p, 2)) {
        rebuilt += weyl_coefficient(m, v) * weyl_operator(v);
    }
    EXPECT_LT(max_abs(rebuilt - m), 1e-12);
}

TEST(Embed, KronOrder) {
    Mat z = clock_matrix(3);
    Mat ref = kron2(Mat::Identity(3, 3), kron2(z, Mat::Identity(3, 3)));
    EXPECT_LT(max_abs(embed_operator(z, 1, 3, 3) - ref), 1e-14);
    EXPECT_LT(max_abs(kron(z, shift_matrix(3)) - kron2(z, shift_matrix(3))), 1e-14);
}
