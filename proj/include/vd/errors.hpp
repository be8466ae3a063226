#pragma once

#include <stdexcept>
#include <string>

namespace vd {

// Base class for every error thrown by this library.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Exact-arithmetic division by a value that is identically zero.
struct division_by_zero : error {
    explicit division_by_zero(const std::string& what = "division by zero")
        : error(what) {}
};

// A deformation base q outside the admissible range of the routine
// (e.g. q = 0, |q| = 1 where a series would not terminate or converge).
struct invalid_base : error {
    explicit invalid_base(const std::string& what) : error(what) {}
};

// An exact-mode series evaluation whose upper parameters never produce the
// terminating factor, so the sum cannot be completed exactly.
struct non_terminating_exact : error {
    explicit non_terminating_exact(const std::string& what) : error(what) {}
};

// A floating-point series evaluation that failed to meet its relative
// tolerance within the term budget.
struct no_convergence : error {
    explicit no_convergence(const std::string& what) : error(what) {}
};

// Arguments outside the mathematical domain of the function.
struct domain_error : error {
    explicit domain_error(const std::string& what) : error(what) {}
};

// Objects whose shapes do not line up (matrix products, state spaces...).
struct dimension_mismatch : error {
    explicit dimension_mismatch(const std::string& what) : error(what) {}
};

// A limit evaluation (formal variable sent to zero) that diverges.
struct divergent_limit : error {
    explicit divergent_limit(const std::string& what) : error(what) {}
};

// A weight evaluation that hits an uncancelled pole at the given parameters.
struct pole_error : error {
    explicit pole_error(const std::string& what) : error(what) {}
};

// An empirical-statistics routine called with an empty sample.
struct empty_sample : error {
    explicit empty_sample(const std::string& what = "empty sample") : error(what) {}
};

// An iterative numerical scheme that did not reach its target accuracy.
struct not_converged : error {
    explicit not_converged(const std::string& what) : error(what) {}
};

// A computation rejected up front because it would exceed configured
// memory/size limits.
struct resource_limit : error {
    explicit resource_limit(const std::string& what) : error(what) {}
};

// Malformed textual input (rationals, CLI values, config files).
struct parse_error : error {
    explicit parse_error(const std::string& what) : error(what) {}
};

} // namespace vd
