/*
 * errors.hpp — exception taxonomy for the ptkitaev library.
 *
 * Three failure classes, kept distinct so callers (and the CLI exit codes)
 * can tell bad inputs from numerical breakdowns:
 *   ParameterError   : invalid arguments or domain violations (CLI exit 1)
 *   SolverError      : eigensolver non-convergence / residual violation (exit 2)
 *   ConsistencyError : internal cross-checks failed, e.g. an eigenvalue that
 *                      should have a conjugate partner does not (exit 2)
 */

#pragma once

#include <stdexcept>
#include <string>

namespace ptkitaev {

struct ParameterError : std::invalid_argument {
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

struct ConsistencyError : std::runtime_error {
    explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ptkitaev
