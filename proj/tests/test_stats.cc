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

#include <cmath>

#include "wigsim/errors.h"
#include "wigsim/stats.h"

using namespace wigsim;

TEST(Stats, IdenticalDistributions) {
    OutcomeDistribution ref{{"0", 0.5}, {"1", 0.25}, {"2", 0.25}};
    auto c = compare_distributions(ref, {{"0", 5000}, {"1", 2500}, {"2", 2500}}, 10000);
    EXPECT_EQ(c.tv, 0.0);
    EXPECT_EQ(c.chi2, 0.0);
    EXPECT_TRUE(c.pass);
    EXPECT_NEAR(c.p_value, 1.0, 1e-12);
}

TEST(Stats, UniformVersusPointMass) {
    OutcomeDistribution uni{{"0", 1.0 / 3}, {"1", 1.0 / 3}, {"2", 1.0 / 3}};
    auto c = compare_distributions(uni, {{"0", 30000}}, 30000);
    EXPECT_NEAR(c.tv, 2.0 / 3, 1e-12);
    EXPECT_FALSE(c.pass);
    OutcomeDistribution point{{"0", 1.0}};
    EXPECT_NEAR(total_variation(uni, point), 2.0 / 3, 1e-12);
}

TEST(Stats, ChiSquareOneDegree) {
    OutcomeDistribution ref{{"a", 0.5}, {"b", 0.5}};
    auto c = compare_distributions(ref, {{"a", 60}, {"b", 40}}, 100);
    EXPECT_NEAR(c.chi2, 4.0, 1e-12);
    EXPECT_EQ(c.df, 1);
    EXPECT_NEAR(c.p_value, std::erfc(std::sqrt(2.0)), 1e-10);
    EXPECT_NEAR(c.tv, 0.1, 1e-12);
}

TEST(Stats, PoolingSmallCells) {
    OutcomeDistribution ref{{"a", 0.5}, {"b", 0.49}, {"c", 0.005}, {"d", 0.005}};
    auto c = compare_distributions(ref, {{"a", 200}, {"b", 196}, {"c", 2}, {"d", 2}}, 400);
    EXPECT_EQ(c.df, 1);
    EXPECT_NEAR(c.chi2, 0.0, 1e-12);
    auto big = compare_distributions(ref, {{"a", 500}, {"b", 490}, {"c", 5}, {"d", 5}}, 1000);
    EXPECT_EQ(big.df, 3);
}

TEST(Stats, AlphabetMismatch) {
    OutcomeDistribution ref{{"0", 1.0}};
    EXPECT_THROW(compare_distributions(ref, {{"7", 10}}, 10), InvalidArgument);
    EXPECT_THROW(compare_distributions(ref, {{"0", 5}}, 10), InvalidArgument);
}

TEST(Stats, Threshold) {
    EXPECT_NEAR(tv_threshold(9, 100000), 3 * std::sqrt(9e-5), 1e-15);
    EXPECT_NEAR(tv_threshold(9, 100000000), 0.01, 1e-15);
    EXPECT_NEAR(tv_threshold(27, 1000), 3 * std::sqrt(0.027), 1e-15);
}
