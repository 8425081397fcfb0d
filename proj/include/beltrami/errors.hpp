#pragma once

#include <stdexcept>
#include <string>

namespace beltrami {

/// Raised when a quantity is requested at the u = 0 rim, where the surface is
/// not differentiable and the metric degenerates.
class singular_coordinate : public std::domain_error {
public:
    explicit singular_coordinate(const std::string& what) : std::domain_error(what) {}
};

/// A parameter violated its contract. `key()` names the offending field.
class invalid_parameter : public std::invalid_argument {
public:
    invalid_parameter(std::string key, const std::string& what)
        : std::invalid_argument(key + ": " + what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// A finite-difference stencil is too coarse, too fine, or crosses u = 0.
class ill_conditioned : public std::runtime_error {
public:
    explicit ill_conditioned(const std::string& what) : std::runtime_error(what) {}
};

class convergence_failure : public std::runtime_error {
public:
    explicit convergence_failure(const std::string& what) : std::runtime_error(what) {}
};

} // namespace beltrami
