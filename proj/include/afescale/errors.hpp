// SPDX-License-Identifier: Apache-2.0
#ifndef AFESCALE_ERRORS_HPP
#define AFESCALE_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace afescale {

/// A scenario or design requirement is physically unrealizable
/// (noise factor would have to drop to or below 1).
class infeasibility_error : public std::runtime_error {
public:
    explicit infeasibility_error(const std::string& what_arg)
        : std::runtime_error(what_arg) {}
};

/// A scaling factor lies outside the validity range of the requested law.
/// Carries the name of the violated constraint so callers can report it.
class validity_error : public std::runtime_error {
public:
    validity_error(std::string constraint, const std::string& what_arg)
        : std::runtime_error(what_arg), constraint_(std::move(constraint)) {}

    const std::string& constraint() const noexcept { return constraint_; }

private:
    std::string constraint_;
};

/// Iterative solver failed to reach its stopping criterion.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what_arg)
        : std::runtime_error(what_arg) {}
};

/// Invalid or malformed analysis configuration. `where` is the JSON
/// pointer (or file:line for syntax errors) of the offending element.
class config_error : public std::runtime_error {
public:
    config_error(std::string where, const std::string& what_arg)
        : std::runtime_error(where.empty() ? what_arg : where + ": " + what_arg),
          where_(std::move(where)) {}

    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

} // namespace afescale

#endif
