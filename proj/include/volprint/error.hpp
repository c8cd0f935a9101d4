// Copyright 2026 The volprint Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace volprint {

enum class Errc {
    invalid_argument,
    file_not_found,
    not_an_image,
    unsupported_format,
    unsupported_bit_depth,
    malformed_input,
    io_failure,
};

inline const char* to_string(Errc code) noexcept
{
    switch (code) {
    case Errc::invalid_argument: return "invalid argument";
    case Errc::file_not_found: return "file not found";
    case Errc::not_an_image: return "not an image";
    case Errc::unsupported_format: return "unsupported format";
    case Errc::unsupported_bit_depth: return "unsupported bit depth";
    case Errc::malformed_input: return "malformed input";
    case Errc::io_failure: return "i/o failure";
    }
    return "unknown";
}

/// Every failure in the library surfaces as this exception; `code()` tells
/// callers which class of problem occurred.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    [[nodiscard]] Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what)
{
    throw Error(code, what);
}

inline void require(bool condition, const std::string& what)
{
    if (!condition) {
        fail(Errc::invalid_argument, what);
    }
}

} // namespace volprint
