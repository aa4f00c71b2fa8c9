#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace surfex {

// Exit-code aligned error categories. The CLI maps these directly to its
// process exit status.
enum class ErrorKind : int {
    precondition = 2,
    scale_refusal = 3,
    non_convergence = 4,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Violated operation contract (bad order, non-triangle face, etc).
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what)
        : Error(ErrorKind::precondition, what) {}
};

// Input is outside the exhaustive envelope of an exact procedure. Raised
// instead of returning a heuristic answer.
class ScaleRefusal : public Error {
public:
    explicit ScaleRefusal(const std::string& what)
        : Error(ErrorKind::scale_refusal, what) {}
};

class NonConvergence : public Error {
public:
    NonConvergence(const std::string& what, double best_estimate)
        : Error(ErrorKind::non_convergence, what), best_estimate_(best_estimate) {}

    double best_estimate() const noexcept { return best_estimate_; }

private:
    double best_estimate_;
};

class ParseError : public PreconditionError {
public:
    ParseError(const std::string& what, std::size_t offset)
        : PreconditionError(what + " (byte offset " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace surfex
