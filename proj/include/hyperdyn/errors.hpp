#pragma once

#include <stdexcept>
#include <string>

namespace hyperdyn {

// Bad caller input: kind mismatches, malformed configs, out-of-domain values.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A configured cap (net size, frontier size, cover size) would be exceeded.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hyperdyn
