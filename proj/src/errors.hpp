#pragma once

#include <stdexcept>
#include <string>

namespace hdist {

enum class ErrorKind {
    invalid_argument,
    parse,
    domain,
    inhomogeneous,
    degree_mismatch,
    degenerate_point,
    base_locus,
    not_morphism,
    unverified_morphism,
    invalid_certificate,
    wrong_point_count,
    degenerate_configuration,
    inconsistent_values,
    singular_matrix,
    empty_sample,
    resource_ceiling,
    internal,
};

const char* to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so callers (and the C
// API) can map it to a stable code without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace hdist
