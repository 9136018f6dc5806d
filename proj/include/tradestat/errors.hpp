#ifndef TRADESTAT_ERRORS_HPP
#define TRADESTAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tradestat {

// Problem with input data content: malformed CSV, nonpositive values where
// positive ones are required, unknown country codes, and so on.
// The CLI maps this to exit code 1.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Problem with run configuration: bad flag combinations, invalid simulation
// bounds, unparseable config files. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace tradestat

#endif
