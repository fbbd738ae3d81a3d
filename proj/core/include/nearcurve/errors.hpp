#ifndef NEARCURVE_ERRORS_HPP
#define NEARCURVE_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace nearcurve {

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

struct ValidationError : std::runtime_error {
    std::vector<std::string> violations;
    explicit ValidationError(const std::string& what,
                             std::vector<std::string> v = {})
        : std::runtime_error(what), violations(std::move(v)) {}
};

struct AuditFailure : std::runtime_error {
    std::string witness;
    AuditFailure(const std::string& what, std::string w)
        : std::runtime_error(what), witness(std::move(w)) {}
};

struct HypothesisViolation : std::runtime_error {
    std::vector<std::string> rows;
    explicit HypothesisViolation(const std::string& what,
                                 std::vector<std::string> r = {})
        : std::runtime_error(what), rows(std::move(r)) {}
};

struct UnsupportedFormat : std::runtime_error {
    explicit UnsupportedFormat(const std::string& what) : std::runtime_error(what) {}
};

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace nearcurve

#endif
