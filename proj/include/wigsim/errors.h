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

#include <stdexcept>
#include <string>

namespace wigsim {

/// Base class for every error raised by the library. Callers that only need
/// to distinguish "bad input" from "bug" can catch this type.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// An argument broke a documented precondition (dimension mismatch, p not an
/// odd prime, register index out of range, ...).
class InvalidArgument : public Error {
   public:
    using Error::Error;
};

/// A unitary did not normalize the Heisenberg-Weyl group.
class NotClifford : public Error {
   public:
    using Error::Error;
};

/// Conjugated generators matched Weyl operators, but their phases do not come
/// from any single displacement.
class PhaseInconsistent : public Error {
   public:
    using Error::Error;
};

/// Text input could not be parsed. Line and column are 1-based; column 0 means
/// the whole line.
class ParseError : public Error {
   public:
    ParseError(std::string message, int line, int column = 0)
        : Error(format(message, line, column)), line_(line), column_(column) {
    }
    int line() const {
        return line_;
    }
    int column() const {
        return column_;
    }

   private:
    static std::string format(const std::string &message, int line, int column) {
        std::string where = "line " + std::to_string(line);
        if (column > 0) {
            where += ", column " + std::to_string(column);
        }
        return where + ": " + message;
    }
    int line_;
    int column_;
};

/// Stabilizer enumeration would have exceeded the caller's state budget.
class BudgetExceeded : public Error {
   public:
    using Error::Error;
};

/// The LP solver stopped without reaching optimality. Reported separately from
/// infeasibility.
class SolverError : public Error {
   public:
    using Error::Error;
};

/// Post-selection happened on an outcome of (numerically) zero probability.
class ZeroProbabilityBranch : public Error {
   public:
    using Error::Error;
};

/// A distillation input had F(rho) < 0 and the caller did not force the run.
class InputNegativelyRepresented : public Error {
   public:
    using Error::Error;
};

}  // namespace wigsim
