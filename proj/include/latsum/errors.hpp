#pragma once

#include <stdexcept>
#include <string>

namespace latsum {

// Evaluation requested exactly at a pole (zeta/L at s=1, gamma at -n, ...).
struct pole_error : std::domain_error {
    explicit pole_error(const std::string& msg) : std::domain_error(msg) {}
};

// A series or recursion cannot reach its accuracy target within its budget.
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Adaptive quadrature exhausted its subdivision/evaluation budget.
struct quadrature_error : std::runtime_error {
    explicit quadrature_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed user input: labels, moduli, sum parameters, catalog syntax.
struct input_error : std::invalid_argument {
    explicit input_error(const std::string& msg) : std::invalid_argument(msg) {}
};

} // namespace latsum
