#pragma once

#include <stdexcept>
#include <string>

namespace stieltjes {

/// Argument outside an operation's documented domain.
class domain_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to reach its target (non-finite value,
/// quadrature that did not settle, a root that was not bracketed).
class computation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation exactly at a pole.
class pole_error : public computation_error {
public:
    using computation_error::computation_error;
};

} // namespace stieltjes
