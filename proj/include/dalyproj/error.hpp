#pragma once

#include <stdexcept>
#include <string>

namespace dalyproj {

enum class ErrorKind {
    Parse,               // malformed CSV row or number
    Invariant,           // value or key violates a domain invariant
    DegenerateRegressor, // all x equal
    Domain,              // nonpositive response for a log-linear fit
    Singular,            // quadratic system without three distinct x
    UndefinedVariance,   // SStot == 0 in r_squared
    IncompleteSeries,    // missing observation year
    IncompleteChain,     // missing HDI year feeding a DALY projection
    InsufficientSample,
    Division,
    Io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Raised by fit_quadratic when fewer than three distinct regressor values are
// present. Always reports the system as poorly conditioned.
class SingularFitError : public Error {
public:
    explicit SingularFitError(const std::string& message)
        : Error(ErrorKind::Singular, message) {}

    bool poorly_conditioned() const noexcept { return true; }
};

} // namespace dalyproj
