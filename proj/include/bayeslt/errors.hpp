#ifndef BAYESLT_ERRORS_HPP
#define BAYESLT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bayeslt {

/// Bad user-supplied data (malformed CSV rows, out-of-range levels, ...).
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Data that is syntactically fine but unusable for estimation.
class degenerate_data_error : public input_error {
public:
    explicit degenerate_data_error(const std::string& msg) : input_error(msg) {}
};

/// Bad configuration (unknown keys, invalid strategy names, bad bounds, ...).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Request would exceed a hard resource guard (e.g. grid cell budget).
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Sampler could not find a starting point with finite posterior density.
class sampler_init_error : public std::runtime_error {
public:
    explicit sampler_init_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace bayeslt

#endif
