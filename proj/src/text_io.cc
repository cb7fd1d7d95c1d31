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

#include "wigsim/text_io.h"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "wigsim/errors.h"

namespace wigsim {

namespace {

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.substr(0, prefix.size()) == prefix;
}

std::vector<std::string> data_tokens(const std::string &text, int &header_line, std::string &header) {
    std::vector<std::string> out;
    header_line = 0;
    for (const auto &line : source_lines(text)) {
        if (header_line == 0) {
            header_line = line.number;
            header = line.text;
            continue;
        }
        for (const auto &t : tokenize(line.text)) {
            out.push_back(t.text);
        }
    }
    if (header_line == 0) {
        throw ParseError("empty document", 1);
    }
    return out;
}

double parse_double(const std::string &s, int line) {
    try {
        size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size() || !std::isfinite(v)) {
            throw ParseError("bad number '" + s + "'", line);
        }
        return v;
    } catch (const std::logic_error &) {
        throw ParseError("bad number '" + s + "'", line);
    }
}

int parse_key_int(const std::string &token, const std::string &key, int line, int column) {
    if (!starts_with(token, key + "=")) {
        throw ParseError("expected " + key + "=<int>", line, column);
    }
    std::string v = token.substr(key.size() + 1);
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos || v.size() > 6) {
        throw ParseError("expected " + key + "=<int>", line, column);
    }
    return std::stoi(v);
}

DenseOperator projector(const DenseVector &v) {
    return v * v.adjoint();
}

}  // namespace

std::string format_header(const std::string &rest) {
    std::string h = "# wigsim format=" + std::to_string(kFormatVersion);
    if (!rest.empty()) {
        h += " " + rest;
    }
    return h;
}

std::string fmt12(double v) {
    if (v == 0.0) {
        v = 0.0;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

mpq_class parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) {
        throw InvalidArgument("empty number");
    }
    auto bad = [&]() { return InvalidArgument("bad rational '" + s + "'"); };
    size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) {
        throw bad();
    }
    size_t slash = s.find('/');
    size_t dot = s.find('.');
    if (slash != std::string::npos && dot != std::string::npos) {
        throw bad();
    }
    auto digits = [](const std::string &t) {
        return !t.empty() && t.find_first_not_of("0123456789") == std::string::npos;
    };
    mpq_class q;
    if (slash != std::string::npos) {
        std::string num = s.substr(start, slash - start);
        std::string den = s.substr(slash + 1);
        if (!digits(num) || !digits(den)) {
            throw bad();
        }
        mpz_class d(den);
        if (d == 0) {
            throw InvalidArgument("zero denominator in '" + s + "'");
        }
        q = mpq_class(mpz_class(num), d);
    } else if (dot != std::string::npos) {
        std::string ip = s.substr(start, dot - start);
        std::string fp = s.substr(dot + 1);
        if ((!ip.empty() && !digits(ip)) || (!fp.empty() && !digits(fp)) || (ip.empty() && fp.empty())) {
            throw bad();
        }
        mpz_class scale = 1;
        for (size_t k = 0; k < fp.size(); k++) {
            scale *= 10;
        }
        mpz_class whole(ip.empty() ? "0" : ip);
        mpz_class frac(fp.empty() ? "0" : fp);
        q = mpq_class(whole * scale + frac, scale);
    } else {
        std::string num = s.substr(start);
        if (!digits(num)) {
            throw bad();
        }
        q = mpq_class(mpz_class(num));
    }
    q.canonicalize();
    if (s[0] == '-') {
        q = -q;
    }
    return q;
}

std::vector<SourceLine> source_lines(const std::string &text) {
    std::vector<SourceLine> out;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        number++;
        size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
            line.pop_back();
        }
        size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos) {
            continue;
        }
        out.push_back({number, line});
    }
    return out;
}

std::vector<Token> tokenize(const std::string &line) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
            i++;
        }
        if (i >= line.size()) {
            break;
        }
        size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) {
            j++;
        }
        out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
    }
    return out;
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidArgument("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

DenseOperator parse_matrix_text(const std::string &text) {
    int header_line = 0;
    std::string header;
    auto toks = data_tokens(text, header_line, header);
    auto head = tokenize(header);
    if (head.size() != 2 || head[0].text != "dim") {
        throw ParseError("matrix file must start with 'dim <D>'", header_line);
    }
    int d = 0;
    try {
        d = std::stoi(head[1].text);
    } catch (const std::logic_error &) {
        throw ParseError("bad dimension", header_line, head[1].column);
    }
    if (d < 1 || d > 4096) {
        throw ParseError("dimension out of range", header_line, head[1].column);
    }
    size_t need = 2 * static_cast<size_t>(d) * static_cast<size_t>(d);
    if (toks.size() != need) {
        throw ParseError("expected " + std::to_string(need) + " numbers after the header, found " +
                             std::to_string(toks.size()),
                         header_line);
    }
    DenseOperator m(d, d);
    size_t k = 0;
    for (int r = 0; r < d; r++) {
        for (int c = 0; c < d; c++) {
            double re = parse_double(toks[k++], header_line);
            double im = parse_double(toks[k++], header_line);
            m(r, c) = cplx(re, im);
        }
    }
    return m;
}

DenseOperator read_matrix_file(const std::filesystem::path &path) {
    return parse_matrix_text(read_text_file(path));
}

std::string matrix_to_text(const DenseOperator &m) {
    std::string out = "dim " + std::to_string(m.rows()) + "\n";
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            if (c) {
                out += "  ";
            }
            out += fmt12(m(r, c).real()) + " " + fmt12(m(r, c).imag());
        }
        out += "\n";
    }
    return out;
}

WignerFileData parse_wigner_text(const std::string &text) {
    int header_line = 0;
    std::string header;
    auto toks = data_tokens(text, header_line, header);
    auto head = tokenize(header);
    if (head.size() != 3 || head[0].text != "wigner") {
        throw ParseError("Wigner file must start with 'wigner p=<p> n=<n>'", header_line);
    }
    int p = parse_key_int(head[1].text, "p", header_line, head[1].column);
    int n = parse_key_int(head[2].text, "n", header_line, head[2].column);
    try {
        require_odd_prime(p);
    } catch (const InvalidArgument &e) {
        throw ParseError(e.what(), header_line, head[1].column);
    }
    if (n < 1 || n > 6) {
        throw ParseError("n out of range", header_line, head[2].column);
    }
    uint64_t count = checked_pow(p, 2 * n);
    if (toks.size() != count) {
        throw ParseError("expected " + std::to_string(count) + " Wigner values, found " + std::to_string(toks.size()),
                         header_line);
    }
    WignerFileData data;
    data.w.p = p;
    data.w.n = n;
    data.w.kind = WignerKind::State;
    for (const auto &t : toks) {
        try {
            data.exact.push_back(parse_rational(t));
        } catch (const InvalidArgument &e) {
            throw ParseError(e.what(), header_line);
        }
        data.w.values.push_back(data.exact.back().get_d());
    }
    return data;
}

DenseVector strange_vector(int p) {
    require_odd_prime(p);
    DenseVector v = DenseVector::Zero(p);
    v(1) = 1.0 / std::sqrt(2.0);
    v(p - 1) = -1.0 / std::sqrt(2.0);
    return v;
}

DenseOperator resolve_preset(const std::string &name, int p, const std::filesystem::path &base) {
    require_odd_prime(p);
    if (name == "zero") {
        return projector(mub_vector(p, 0, 0));
    }
    if (name == "mixed") {
        return DenseOperator::Identity(p, p) / static_cast<double>(p);
    }
    if (name == "strange") {
        return projector(strange_vector(p));
    }
    if (starts_with(name, "basis(") && name.back() == ')') {
        std::string inner = name.substr(6, name.size() - 7);
        if (inner.empty() || inner.find_first_not_of("0123456789") != std::string::npos || inner.size() > 6) {
            throw InvalidArgument("bad preset '" + name + "'");
        }
        int k = std::stoi(inner);
        if (k >= p) {
            throw InvalidArgument("basis index " + inner + " out of range for p=" + std::to_string(p));
        }
        return projector(mub_vector(p, 0, k));
    }
    if (starts_with(name, "matrix-file:")) {
        std::filesystem::path path = name.substr(12);
        DenseOperator m = read_matrix_file(path.is_absolute() ? path : base / path);
        if (m.rows() != p) {
            throw InvalidArgument("matrix file " + path.string() + " is not " + std::to_string(p) + "x" +
                                  std::to_string(p));
        }
        return m;
    }
    if (starts_with(name, "wigner-file:")) {
        std::filesystem::path path = name.substr(12);
        auto data = parse_wigner_text(read_text_file(path.is_absolute() ? path : base / path));
        if (data.w.p != p || data.w.n != 1) {
            throw InvalidArgument("Wigner file " + path.string() + " is not a single p=" + std::to_string(p) + " qudit");
        }
        return state_from_wigner(data.w);
    }
    throw InvalidArgument("unknown preset '" + name + "'");
}

DenseOperator load_state_argument(const std::string &arg, int p, int n, std::vector<mpq_class> *exact) {
    require_odd_prime(p);
    uint64_t d = checked_pow(p, n);
    std::filesystem::path path(arg);
    std::error_code ec;
    if (std::filesystem::is_regular_file(path, ec)) {
        std::string text = read_text_file(path);
        auto lines = source_lines(text);
        if (!lines.empty() && starts_with(lines[0].text, "wigner")) {
            auto data = parse_wigner_text(text);
            if (data.w.p != p || data.w.n != n) {
                throw InvalidArgument("Wigner file is for p=" + std::to_string(data.w.p) +
                                      " n=" + std::to_string(data.w.n));
            }
            if (exact) {
                *exact = data.exact;
            }
            return state_from_wigner(data.w);
        }
        DenseOperator m = parse_matrix_text(text);
        if (static_cast<uint64_t>(m.rows()) != d) {
            throw InvalidArgument("matrix file has dimension " + std::to_string(m.rows()) + ", expected " +
                                  std::to_string(d));
        }
        return m;
    }
    DenseOperator one = resolve_preset(arg, p, std::filesystem::current_path());
    DenseOperator out = one;
    for (int k = 1; k < n; k++) {
        out = kron(out, one);
    }
    return out;
}

}  // namespace wigsim
