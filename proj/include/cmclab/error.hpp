#pragma once

#include <stdexcept>
#include <string>

namespace cmclab {

enum class ErrorKind {
    NoHorizon,         // H > 0 across the whole domain
    NotOutermost,      // extra minimal spheres beyond the horizon
    OutOfRange,        // request outside the admissible range, e.g. h > h_max
    BarrierViolation,  // CMC barrier precondition fails
    OracleMismatch,    // brute-force oracle disagrees with the direct result
    BadMetric,         // positivity, flatness, or convergence failure
    BadConfig,         // config/table parse or usage error
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace cmclab
