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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "wigsim/stabilizer.h"

namespace wigsim {

enum class SliceNormalization {
    /// Points whose values do not sum to 1 are INVALID.
    Constrain,
    /// rho = sum_u W(u) A_u / sum_u W(u); INVALID when the sum is <= 0.
    Rescale,
};

struct SliceAxis {
    PhasePoint point;
    /// Value fixed by normalization instead of swept (Constrain only, last axis).
    bool derived = false;
    mpq_class lo, hi, step;
};

struct SliceSpec {
    int p = 3;
    int n = 1;
    SliceNormalization normalization = SliceNormalization::Constrain;
    /// Value per phase-point index; unset entries are free.
    std::vector<std::optional<mpq_class>> fixed;
    std::vector<SliceAxis> free;

    size_t swept_axes() const;
};

/// Text format:
///   slice v1
///   qudits p=3 n=1
///   normalization constrain|rescale
///   fixed default <q>            (every point not otherwise named)
///   fixed (a1,a2) <q>
///   free (a1,a2) range <lo> <hi> step <s>
///   free (a1,a2) derived
/// Points for n > 1 are written (a1,a2,b1,b2,...).
SliceSpec parse_slice_spec(const std::string &text);

struct SliceRow {
    /// One value per free axis (derived axes included).
    std::vector<mpq_class> axes;
    /// Class label name, or INVALID.
    std::string label;
    double min_eig = NAN;
    double min_wigner = NAN;
    double lp_margin = NAN;
};

/// Grid in row-major order over the swept axes (first axis slowest). Points
/// are classified in parallel on `jobs` threads; the result does not depend
/// on `jobs`.
std::vector<SliceRow> slice_scan(const SliceSpec &spec, const StabilizerSet &s, int jobs = 1);

/// Classification of one point with the given full value vector.
SliceRow classify_slice_point(const SliceSpec &spec, const StabilizerSet &s, const std::vector<mpq_class> &values);

/// `axis1,axis2[,axis3],label,min_eig,min_wigner,lp_margin` after the format
/// comment line.
void write_slice_csv(std::ostream &out, const SliceSpec &spec, const std::vector<SliceRow> &rows);

}  // namespace wigsim
