#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wiman {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Series scan exceeded its hard term cap without converging.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

// A padded-array or term budget would be exceeded; carries both sides.
class BudgetError : public Error {
public:
    BudgetError(std::size_t required, std::size_t allowed, const std::string& what_for)
        : Error(what_for + ": requires " + std::to_string(required) +
                " entries, budget allows " + std::to_string(allowed)),
          required_(required), allowed_(allowed) {}

    std::size_t required() const { return required_; }
    std::size_t allowed() const { return allowed_; }

private:
    std::size_t required_;
    std::size_t allowed_;
};

} // namespace wiman
