#pragma once

#include <stdexcept>
#include <string>

namespace sigmahyper {

enum class ErrorKind {
    validation,
    regime,
    no_representation,
    no_such_design,
    no_edges,
    budget_exceeded,
    overflow,
};

/// Base of every exception thrown by the library. `kind()` lets callers
/// (the CLI in particular) map failures to exit codes without RTTI chains.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& what) : Error(ErrorKind::validation, what) {}
};

/// A construction was asked to run outside the parameter range it is proven for.
struct RegimeError : Error {
    explicit RegimeError(const std::string& what) : Error(ErrorKind::regime, what) {}
};

struct NoRepresentation : Error {
    explicit NoRepresentation(const std::string& what) : Error(ErrorKind::no_representation, what) {}
};

struct NoSuchDesign : Error {
    explicit NoSuchDesign(const std::string& what) : Error(ErrorKind::no_such_design, what) {}
};

struct NoEdges : Error {
    explicit NoEdges(const std::string& what) : Error(ErrorKind::no_edges, what) {}
};

struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& what) : Error(ErrorKind::budget_exceeded, what) {}
};

struct OverflowError : Error {
    explicit OverflowError(const std::string& what) : Error(ErrorKind::overflow, what) {}
};

}  // namespace sigmahyper
