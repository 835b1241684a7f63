#pragma once

#include <stdexcept>
#include <string>

namespace specrelax {

// Wrong basis, wrong lengths, malformed arguments.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Parameter outside the admissible range of a kernel or scheme.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Inverse transform of data that was not conjugate symmetric, and similar.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OracleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-finite or runaway values during time stepping.
class BlowupError : public std::runtime_error {
public:
    BlowupError(double t, long step, std::string field, double max_abs);
    double t;
    long step;
    std::string field;
    double max_abs;
};

// rho <= 0, p <= 0 or h <= 0 at some node.
class PositivityError : public std::runtime_error {
public:
    PositivityError(std::string quantity, int node, double x, double value, double t);
    std::string quantity;
    int node;
    double x;
    double value;
    double t;
};

} // namespace specrelax
