#pragma once

#include <stdexcept>
#include <string>

namespace latspec {

/// Rejected input: family parameters out of range, dimension mismatch,
/// non-prime modulus, out-of-scope closed form, ...
class invalid_parameter_error : public std::invalid_argument {
public:
    explicit invalid_parameter_error(const std::string& what)
        : std::invalid_argument(what) {}
};

/// An instance exceeds the configured size limits.
class size_cap_error : public std::runtime_error {
public:
    explicit size_cap_error(const std::string& what)
        : std::runtime_error(what) {}
};

/// An identity that must hold exactly failed (internal bug indicator,
/// or a genuinely failing verification run).
class verification_error : public std::runtime_error {
public:
    explicit verification_error(const std::string& what)
        : std::runtime_error(what) {}
};

}  // namespace latspec
