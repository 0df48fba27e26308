#pragma once

#include <stdexcept>
#include <string>

namespace d2dsec {

// Base for all library failures; CLI maps subtypes to exit codes.
class error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Invalid geometry (coincident nodes on a modeled link).
class geometry_error : public error {
  public:
    using error::error;
};

// Scenario text rejected; carries the offending line and field when known.
class parse_error : public error {
  public:
    parse_error(std::string message, int line, std::string field)
        : error(format(message, line, field)), line_(line), field_(std::move(field)) {}

    int line() const { return line_; }
    const std::string& field() const { return field_; }

  private:
    static std::string format(const std::string& message, int line, const std::string& field) {
        std::string out;
        if (line > 0) out += "line " + std::to_string(line);
        if (!field.empty()) out += (out.empty() ? "" : ", ") + std::string("field '") + field + "'";
        return out.empty() ? message : out + ": " + message;
    }

    int line_;
    std::string field_;
};

// Exact evaluation refused (power-set enumeration too large).
class capacity_error : public error {
  public:
    using error::error;
};

// Adaptive quadrature failed to converge; carries the partial estimate.
class quadrature_error : public error {
  public:
    quadrature_error(const std::string& message, double partial)
        : error(message + " (partial estimate " + std::to_string(partial) + ")"), partial_(partial) {}

    double partial() const { return partial_; }

  private:
    double partial_;
};

// Argument outside a function's numeric domain, or a non-finite result.
class numerical_error : public error {
  public:
    using error::error;
};

// API misuse (wrong network size for a case-study routine, unknown tag).
class usage_error : public error {
  public:
    using error::error;
};

}  // namespace d2dsec
