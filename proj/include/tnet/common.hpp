#ifndef TNET_COMMON_HPP
#define TNET_COMMON_HPP

#include <stdexcept>
#include <string>

namespace tnet {

/// Invalid or inconsistent input data (bad events, malformed files, ...).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Floating-point integrity violation (negative kernel entries beyond
/// tolerance, eigendecomposition residual too large, ...).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class Direction { Forward, Backward };

inline const char* to_string(Direction d) {
    return d == Direction::Forward ? "forward" : "backward";
}

} // namespace tnet

#endif
