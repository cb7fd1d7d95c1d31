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

#include "wigsim/slice.h"

#include <atomic>
#include <ostream>
#include <thread>

#include "wigsim/errors.h"
#include "wigsim/text_io.h"

namespace wigsim {

namespace {

PhasePoint parse_point(const Token &tok, int p, int n, int line) {
    const std::string &s = tok.text;
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
        throw ParseError("expected a phase point like (a1,a2)", line, tok.column);
    }
    std::vector<int> coords;
    std::string inner = s.substr(1, s.size() - 2);
    size_t start = 0;
    while (true) {
        size_t comma = inner.find(',', start);
        std::string part = inner.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        try {
            size_t used = 0;
            int v = std::stoi(part, &used);
            if (used != part.size()) {
                throw std::invalid_argument(part);
            }
            coords.push_back(mod(v, p));
        } catch (const std::logic_error &) {
            throw ParseError("bad coordinate '" + part + "'", line, tok.column);
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    if (coords.size() != static_cast<size_t>(2 * n)) {
        throw ParseError("phase point needs " + std::to_string(2 * n) + " coordinates", line, tok.column);
    }
    return PhasePoint(p, coords);
}

mpq_class rational_at(const std::vector<Token> &toks, size_t k, int line) {
    if (k >= toks.size()) {
        throw ParseError("missing number", line);
    }
    try {
        return parse_rational(toks[k].text);
    } catch (const InvalidArgument &e) {
        throw ParseError(e.what(), line, toks[k].column);
    }
}

void expect_word(const std::vector<Token> &toks, size_t k, const std::string &word, int line) {
    if (k >= toks.size() || toks[k].text != word) {
        throw ParseError("expected '" + word + "'", line, k < toks.size() ? toks[k].column : 0);
    }
}

// Grid coordinates for one swept axis: lo, lo + step, ... <= hi.
std::vector<mpq_class> axis_values(const SliceAxis &axis) {
    std::vector<mpq_class> out;
    for (mpq_class v = axis.lo; v <= axis.hi; v += axis.step) {
        out.push_back(v);
    }
    return out;
}

}  // namespace

size_t SliceSpec::swept_axes() const {
    size_t k = 0;
    for (const auto &a : free) {
        k += a.derived ? 0 : 1;
    }
    return k;
}

SliceSpec parse_slice_spec(const std::string &text) {
    auto lines = source_lines(text);
    if (lines.empty()) {
        throw ParseError("empty slice spec", 1);
    }
    {
        auto toks = tokenize(lines[0].text);
        if (toks.size() != 2 || toks[0].text != "slice" || toks[1].text != "v1") {
            throw ParseError("slice spec must start with 'slice v1'", lines[0].number);
        }
    }
    SliceSpec spec;
    bool have_qudits = false;
    bool have_norm = false;
    std::optional<mpq_class> default_value;
    int default_line = 0;
    std::vector<int> seen_line;

    for (size_t li = 1; li < lines.size(); li++) {
        const int ln = lines[li].number;
        auto toks = tokenize(lines[li].text);
        const std::string &kw = toks[0].text;
        if (kw == "qudits") {
            if (have_qudits || toks.size() != 3) {
                throw ParseError("expected a single 'qudits p=<p> n=<n>'", ln);
            }
            auto key = [&](const Token &t, const std::string &k) {
                if (t.text.rfind(k + "=", 0) != 0) {
                    throw ParseError("expected " + k + "=", ln, t.column);
                }
                try {
                    return std::stoi(t.text.substr(k.size() + 1));
                } catch (const std::logic_error &) {
                    throw ParseError("bad integer", ln, t.column);
                }
            };
            spec.p = key(toks[1], "p");
            spec.n = key(toks[2], "n");
            try {
                require_odd_prime(spec.p);
            } catch (const InvalidArgument &e) {
                throw ParseError(e.what(), ln, toks[1].column);
            }
            if (spec.n < 1 || spec.n > 2) {
                throw ParseError("slices support n = 1 or 2", ln, toks[2].column);
            }
            have_qudits = true;
            uint64_t count = checked_pow(spec.p, 2 * spec.n);
            spec.fixed.assign(count, std::nullopt);
            seen_line.assign(count, 0);
            continue;
        }
        if (!have_qudits) {
            throw ParseError("'qudits' must come before '" + kw + "'", ln, toks[0].column);
        }
        if (kw == "normalization") {
            if (have_norm || toks.size() != 2) {
                throw ParseError("expected a single 'normalization constrain|rescale'", ln);
            }
            if (toks[1].text == "constrain") {
                spec.normalization = SliceNormalization::Constrain;
            } else if (toks[1].text == "rescale") {
                spec.normalization = SliceNormalization::Rescale;
            } else {
                throw ParseError("unknown normalization '" + toks[1].text + "'", ln, toks[1].column);
            }
            have_norm = true;
        } else if (kw == "fixed") {
            if (toks.size() != 3) {
                throw ParseError("expected 'fixed <point|default> <value>'", ln);
            }
            mpq_class v = rational_at(toks, 2, ln);
            if (toks[1].text == "default") {
                if (default_value) {
                    throw ParseError("duplicate 'fixed default'", ln, toks[1].column);
                }
                default_value = v;
                default_line = ln;
                continue;
            }
            PhasePoint u = parse_point(toks[1], spec.p, spec.n, ln);
            if (seen_line[u.index()]) {
                throw ParseError("point " + u.str() + " already given on line " + std::to_string(seen_line[u.index()]),
                                 ln, toks[1].column);
            }
            seen_line[u.index()] = ln;
            spec.fixed[u.index()] = v;
        } else if (kw == "free") {
            if (toks.size() < 3) {
                throw ParseError("expected 'free <point> range ...' or 'free <point> derived'", ln);
            }
            SliceAxis axis;
            axis.point = parse_point(toks[1], spec.p, spec.n, ln);
            if (seen_line[axis.point.index()]) {
                throw ParseError("point " + axis.point.str() + " already given on line " +
                                     std::to_string(seen_line[axis.point.index()]),
                                 ln, toks[1].column);
            }
            seen_line[axis.point.index()] = ln;
            if (toks[2].text == "derived") {
                if (toks.size() != 3) {
                    throw ParseError("unexpected text after 'derived'", ln, toks[3].column);
                }
                axis.derived = true;
            } else {
                expect_word(toks, 2, "range", ln);
                axis.lo = rational_at(toks, 3, ln);
                axis.hi = rational_at(toks, 4, ln);
                expect_word(toks, 5, "step", ln);
                axis.step = rational_at(toks, 6, ln);
                if (toks.size() != 7) {
                    throw ParseError("unexpected text after the step", ln, toks[7].column);
                }
                if (sgn(axis.step) <= 0 || axis.hi < axis.lo) {
                    throw ParseError("range must have lo <= hi and a positive step", ln);
                }
                mpq_class count = (axis.hi - axis.lo) / axis.step;
                if (count > 100000) {
                    throw ParseError("axis has too many grid points", ln);
                }
            }
            spec.free.push_back(axis);
        } else {
            throw ParseError("unknown directive '" + kw + "'", ln, toks[0].column);
        }
    }
    if (!have_qudits) {
        throw ParseError("missing 'qudits' line", lines.back().number);
    }
    if (!have_norm) {
        throw ParseError("missing 'normalization' line", lines.back().number);
    }
    const int last = lines.back().number;
    if (spec.free.size() < 2 || spec.free.size() > 3) {
        throw ParseError("a slice needs 2 or 3 free points", last);
    }
    for (size_t k = 0; k < spec.free.size(); k++) {
        if (spec.free[k].derived) {
            if (k + 1 != spec.free.size()) {
                throw ParseError("only the last free point may be derived", last);
            }
            if (spec.normalization != SliceNormalization::Constrain) {
                throw ParseError("a derived free point requires 'normalization constrain'", last);
            }
        }
    }
    uint64_t grid = 1;
    for (const auto &a : spec.free) {
        if (!a.derived) {
            grid *= axis_values(a).size();
        }
    }
    if (grid > 2000000) {
        throw ParseError("slice grid has more than 2000000 points", last);
    }
    for (size_t k = 0; k < spec.fixed.size(); k++) {
        if (seen_line[k]) {
            continue;
        }
        if (!default_value) {
            throw ParseError("point " + PhasePoint::from_index(spec.p, spec.n, k).str() +
                                 " is neither fixed nor free and there is no 'fixed default'",
                             last);
        }
        spec.fixed[k] = *default_value;
        (void)default_line;
    }
    return spec;
}

SliceRow classify_slice_point(const SliceSpec &spec, const StabilizerSet &s, const std::vector<mpq_class> &values) {
    SliceRow row;
    row.label = "INVALID";
    mpq_class total = 0;
    for (const auto &v : values) {
        total += v;
    }
    std::vector<mpq_class> w = values;
    if (spec.normalization == SliceNormalization::Constrain) {
        if (total != 1) {
            return row;
        }
    } else {
        if (sgn(total) <= 0) {
            return row;
        }
        for (auto &v : w) {
            v /= total;
        }
    }
    WignerFunction wf;
    wf.p = spec.p;
    wf.n = spec.n;
    wf.kind = WignerKind::State;
    for (const auto &v : w) {
        wf.values.push_back(v.get_d());
    }
    DenseOperator rho = state_from_wigner(wf);
    Classification c = classify_state(rho, s, &w);
    row.label = label_name(c.label);
    row.min_eig = c.min_eig;
    mpq_class wmin = w[0];
    for (const auto &v : w) {
        if (v < wmin) {
            wmin = v;
        }
    }
    row.min_wigner = wmin.get_d();
    if (c.label == ClassLabel::Bound) {
        row.lp_margin = c.hull->margin;
    } else if (c.label == ClassLabel::StabilizerMix) {
        row.lp_margin = 0.0;
    }
    return row;
}

std::vector<SliceRow> slice_scan(const SliceSpec &spec, const StabilizerSet &s, int jobs) {
    if (s.p() != spec.p || s.n() != spec.n) {
        throw InvalidArgument("stabilizer set does not match the slice");
    }
    std::vector<std::vector<mpq_class>> grids;
    for (const auto &a : spec.free) {
        if (!a.derived) {
            grids.push_back(axis_values(a));
        }
    }
    size_t total = 1;
    for (const auto &g : grids) {
        total *= g.size();
    }
    mpq_class fixed_sum = 0;
    for (const auto &f : spec.fixed) {
        if (f) {
            fixed_sum += *f;
        }
    }

    std::vector<SliceRow> rows(total);
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            size_t idx = next.fetch_add(1);
            if (idx >= total) {
                return;
            }
            std::vector<mpq_class> coords(grids.size());
            size_t rem = idx;
            for (size_t k = grids.size(); k-- > 0;) {
                coords[k] = grids[k][rem % grids[k].size()];
                rem /= grids[k].size();
            }
            std::vector<mpq_class> values(spec.fixed.size());
            for (size_t k = 0; k < values.size(); k++) {
                if (spec.fixed[k]) {
                    values[k] = *spec.fixed[k];
                }
            }
            std::vector<mpq_class> axes;
            mpq_class swept_sum = 0;
            for (size_t k = 0; k < spec.free.size(); k++) {
                const auto &a = spec.free[k];
                mpq_class v = a.derived ? mpq_class(1 - fixed_sum - swept_sum) : coords[k];
                swept_sum += v;
                values[a.point.index()] = v;
                axes.push_back(v);
            }
            SliceRow row = classify_slice_point(spec, s, values);
            row.axes = std::move(axes);
            rows[idx] = std::move(row);
        }
    };
    int threads = std::max(1, jobs);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; t++) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    return rows;
}

void write_slice_csv(std::ostream &out, const SliceSpec &spec, const std::vector<SliceRow> &rows) {
    out << format_header("command=slice p=" + std::to_string(spec.p) + " n=" + std::to_string(spec.n) +
                         " normalization=" +
                         (spec.normalization == SliceNormalization::Constrain ? "constrain" : "rescale"))
        << "\n";
    for (size_t k = 0; k < spec.free.size(); k++) {
        out << "axis" << (k + 1) << ",";
    }
    out << "label,min_eig,min_wigner,lp_margin\n";
    for (const auto &r : rows) {
        for (const auto &a : r.axes) {
            out << fmt12(a.get_d()) << ",";
        }
        out << r.label << "," << fmt12(r.min_eig) << "," << fmt12(r.min_wigner) << "," << fmt12(r.lp_margin) << "\n";
    }
}

}  // namespace wigsim
