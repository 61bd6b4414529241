#pragma once

#include <stdexcept>
#include <string>

namespace bridgetrace {

// Error taxonomy shared by the whole pipeline. The CLI maps these onto
// process exit codes: validation -> 1, data gap -> 2, internal -> 3.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

class DataGapError : public std::runtime_error {
public:
    explicit DataGapError(const std::string& msg) : std::runtime_error(msg) {}
};

class InternalError : public std::runtime_error {
public:
    explicit InternalError(const std::string& msg) : std::runtime_error(msg) {}
};

class NotFoundError : public ValidationError {
public:
    explicit NotFoundError(const std::string& msg) : ValidationError(msg) {}
};

// Raised when a deposit's logs satisfy none of the configured mapping rules.
// Not fatal at pipeline level: such deposits count as zero hits downstream.
class UnparseableDeposit : public ValidationError {
public:
    explicit UnparseableDeposit(const std::string& msg) : ValidationError(msg) {}
};

} // namespace bridgetrace
