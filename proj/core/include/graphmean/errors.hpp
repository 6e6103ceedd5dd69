#pragma once

#include <stdexcept>
#include <string>

namespace graphmean {

// Malformed structured input (GXL, CXL index, native JSON). Carries an
// optional location string ("line 12, column 4" or a file path).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& message, const std::string& location = "")
        : std::runtime_error(location.empty() ? message : message + " (" + location + ")"),
          location_(location) {}

    const std::string& location() const noexcept { return location_; }

private:
    std::string location_;
};

// A graph is too large for an exhaustive solver's hard cap.
class SizeCapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace graphmean
