#pragma once

#include <stdexcept>
#include <string>

namespace castkit {

/// Raised for invalid configuration files or invalid parameter combinations.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised for unreadable or malformed data files (experiments, CSVs).
class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a numerical routine produces a non-finite or impossible state.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace castkit
