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
#include <fstream>

#include "oracles.h"
#include "wigsim/errors.h"
#include "wigsim/text_io.h"

using namespace wigsim;
using namespace wigsim::testing;

TEST(Format, Fmt12) {
    EXPECT_EQ(fmt12(1.0 / 3), "0.333333333333");
    EXPECT_EQ(fmt12(-0.0), "0");
    EXPECT_EQ(fmt12(2), "2");
    EXPECT_EQ(fmt12(-1e-13), "-1e-13");
    EXPECT_EQ(format_header("command=x"), "# wigsim format=1 command=x");
}

TEST(Format, Rationals) {
    EXPECT_EQ(parse_rational("1/9"), mpq_class(1, 9));
    EXPECT_EQ(parse_rational("-2/6"), mpq_class(-1, 3));
    EXPECT_EQ(parse_rational("0.25"), mpq_class(1, 4));
    EXPECT_EQ(parse_rational("-.5"), mpq_class(-1, 2));
    EXPECT_EQ(parse_rational("7"), mpq_class(7));
    EXPECT_THROW(parse_rational("1/0"), InvalidArgument);
    EXPECT_THROW(parse_rational("abc"), InvalidArgument);
    EXPECT_THROW(parse_rational(""), InvalidArgument);
    EXPECT_THROW(parse_rational("-1e-3"), InvalidArgument);
}

TEST(Format, SourceLinesAndTokens) {
    auto lines = source_lines("a b # c\n\n  # only\nd\n");
    ASSERT_EQ(lines.size(), 2u);
    EXPECT_EQ(lines[0].number, 1);
    EXPECT_EQ(lines[1].number, 4);
    EXPECT_EQ(lines[1].text, "d");
    auto toks = tokenize("  ab  cd");
    ASSERT_EQ(toks.size(), 2u);
    EXPECT_EQ(toks[0].column, 3);
    EXPECT_EQ(toks[1].column, 7);
}

TEST(MatrixFile, RoundTrip) {
    Mat m = Mat::Random(3, 3);
    Mat back = parse_matrix_text(matrix_to_text(m));
    EXPECT_LT(max_abs(back - m), 1e-11);
    EXPECT_THROW(parse_matrix_text("dim 2\n1 0 0 0\n"), ParseError);
    EXPECT_THROW(parse_matrix_text("size 2\n"), ParseError);
}

TEST(WignerFile, ParsesRationals) {
    std::string text = "wigner p=3 n=1\n0 0 1/6\n1/6 1/6 1/6\n0 1/6 1/6\n";
    auto d = parse_wigner_text(text);
    EXPECT_EQ(d.w.p, 3);
    ASSERT_EQ(d.exact.size(), 9u);
    EXPECT_EQ(d.exact[2], mpq_class(1, 6));
    EXPECT_NEAR(d.w.values[5], 1.0 / 6, 1e-15);
    EXPECT_THROW(parse_wigner_text("wigner p=3 n=1\n1 2 3\n"), ParseError);
}

TEST(Presets, Resolve) {
    const std::filesystem::path here = ".";
    EXPECT_LT(max_abs(resolve_preset("zero", 3, here) - basis_ket(3, 0) * basis_ket(3, 0).adjoint()), 1e-15);
    EXPECT_LT(max_abs(resolve_preset("basis(2)", 3, here) - basis_ket(3, 2) * basis_ket(3, 2).adjoint()), 1e-15);
    EXPECT_LT(max_abs(resolve_preset("mixed", 5, here) - Mat::Identity(5, 5) / 5.0), 1e-15);
    Vec s = (basis_ket(5, 1) - basis_ket(5, 4)) / std::sqrt(2.0);
    EXPECT_LT(max_abs(resolve_preset("strange", 5, here) - s * s.adjoint()), 1e-15);
    EXPECT_THROW(resolve_preset("basis(3)", 3, here), InvalidArgument);
    EXPECT_THROW(resolve_preset("bogus", 3, here), InvalidArgument);
}

TEST(Presets, FilesRelativeToBase) {
    auto dir = std::filesystem::temp_directory_path() / "wigsim_text_io_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream f(dir / "w.wig");
        f << "wigner p=3 n=1\n1/9 1/9 1/9 1/9 1/9 1/9 1/9 1/9 1/9\n";
        std::ofstream g(dir / "m.mat");
        g << matrix_to_text(Mat::Identity(3, 3) / 3.0);
    }
    EXPECT_LT(max_abs(resolve_preset("wigner-file:w.wig", 3, dir) - Mat::Identity(3, 3) / 3.0), 1e-14);
    EXPECT_LT(max_abs(resolve_preset("matrix-file:m.mat", 3, dir) - Mat::Identity(3, 3) / 3.0), 1e-12);
    std::vector<mpq_class> exact;
    Mat two = load_state_argument((dir / "w.wig").string(), 3, 1, &exact);
    EXPECT_EQ(exact.size(), 9u);
    Mat prod = load_state_argument("zero", 3, 2);
    EXPECT_NEAR(prod(0, 0).real(), 1.0, 1e-15);
    EXPECT_EQ(prod.rows(), 9);
    std::filesystem::remove_all(dir);
}
