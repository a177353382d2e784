// Copyright 2026 The tnqs Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tnqs {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class NonDensityMatrix : public Error {
    using Error::Error;
};
class NonPOVMElement : public Error {
    using Error::Error;
};
class NonPhysicalChannel : public Error {
    using Error::Error;
};
class ArityMismatch : public Error {
    using Error::Error;
};
class LabelSideMismatch : public Error {
    using Error::Error;
};

/// A contraction would produce a tensor above the configured rank ceiling.
class RankCeilingExceeded : public Error {
  public:
    RankCeilingExceeded(int rank, int ceiling, const std::string &where = {})
        : Error("tensor rank " + std::to_string(rank) + " exceeds ceiling " +
                std::to_string(ceiling) + (where.empty() ? "" : " (" + where + ")")),
          rank_(rank), ceiling_(ceiling) {}
    [[nodiscard]] int rank() const noexcept { return rank_; }
    [[nodiscard]] int ceiling() const noexcept { return ceiling_; }

  private:
    int rank_;
    int ceiling_;
};

class BadTruncation : public Error {
    using Error::Error;
};
class WiringConflict : public Error {
    using Error::Error;
};
class GraphError : public Error {
    using Error::Error;
};

/// Circuit or schedule text could not be parsed. Line/column are 1-based, 0 if unknown.
class ParseError : public Error {
  public:
    ParseError(const std::string &what, std::size_t line = 0, std::size_t column = 0)
        : Error(format(what, line, column)), line_(line), column_(column) {}
    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

  private:
    static std::string format(const std::string &what, std::size_t line, std::size_t column) {
        if (line == 0) {
            return "parse error: " + what;
        }
        return "parse error at line " + std::to_string(line) + ", column " +
               std::to_string(column) + ": " + what;
    }
    std::size_t line_;
    std::size_t column_;
};

class UnknownGateName : public ParseError {
  public:
    explicit UnknownGateName(const std::string &name)
        : ParseError("unknown gate name '" + name + "'") {}
};

class DimensionError : public ParseError {
    using ParseError::ParseError;
};

/// Schedule breaks the set-forest rules; step() is the offending step (-1 for whole-schedule).
class StructuralViolation : public Error {
  public:
    StructuralViolation(const std::string &what, long step)
        : Error(step >= 0 ? "step " + std::to_string(step) + ": " + what : what),
          step_(step) {}
    [[nodiscard]] long step() const noexcept { return step_; }

  private:
    long step_;
};

class MissingLadderTags : public Error {
    using Error::Error;
};
class NotComposable : public Error {
    using Error::Error;
};
class NonRealResult : public Error {
    using Error::Error;
};
class DegenerateConditional : public Error {
    using Error::Error;
};
class TooLarge : public Error {
    using Error::Error;
};

} // namespace tnqs
