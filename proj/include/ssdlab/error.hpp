#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ssd {

enum class Errc {
    invalid_argument,
    shape_mismatch,
    size_exceeded,
    parse_error,
    not_scalar_identity,
    zero_gain,
    unstable_scaling,
    not_representable,
    reconstruction_failure,
    rank_exceeds_n,
    inconsistent_transition,
    degenerate_grid,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace ssd
