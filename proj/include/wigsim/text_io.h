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
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "wigsim/wigner.h"

namespace wigsim {

inline constexpr int kFormatVersion = 1;
inline constexpr const char *kVersionString = "1.0.0";

/// `# wigsim format=1 <rest>` without a trailing newline.
std::string format_header(const std::string &rest);

/// %.12g, with -0 printed as 0.
std::string fmt12(double v);

/// Integers, fractions a/b and plain decimals ("0.25", "-1e-3" is rejected).
mpq_class parse_rational(std::string_view text);

/// Splits a document into lines, dropping `#` comments and trailing blanks.
/// Each entry keeps its 1-based line number.
struct SourceLine {
    int number = 0;
    std::string text;
};
std::vector<SourceLine> source_lines(const std::string &text);

/// Whitespace tokenizer that tracks 1-based columns.
struct Token {
    std::string text;
    int column = 0;
};
std::vector<Token> tokenize(const std::string &line);

std::string read_text_file(const std::filesystem::path &path);

/// Matrix file: header `dim <D>`, then D*D entries `re imag`, row-major.
DenseOperator parse_matrix_text(const std::string &text);
DenseOperator read_matrix_file(const std::filesystem::path &path);
std::string matrix_to_text(const DenseOperator &m);

/// Wigner file: header `wigner p=<p> n=<n>`, then p^{2n} state-normalized
/// values in phase-point index order. Values may be rationals.
struct WignerFileData {
    WignerFunction w;
    std::vector<mpq_class> exact;
};
WignerFileData parse_wigner_text(const std::string &text);

/// p=3 strange state (|1> - |2>)/sqrt 2, generalized to any odd p as the
/// normalized |1> - |p-1>.
DenseVector strange_vector(int p);

/// Single-qudit presets: zero, basis(k), mixed, strange, matrix-file:<path>,
/// wigner-file:<path>. Relative paths resolve against `base`.
DenseOperator resolve_preset(const std::string &name, int p, const std::filesystem::path &base);

/// Loads a state argument for an n-qudit command: an existing matrix or
/// Wigner file, or a single-qudit preset applied to every register. Fills
/// `exact` when the input carried exact Wigner values.
DenseOperator load_state_argument(const std::string &arg, int p, int n, std::vector<mpq_class> *exact = nullptr);

}  // namespace wigsim
