#pragma once

#include <stdexcept>
#include <string>

namespace fragile {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IdenticalIds : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct EmptyInput : Error { using Error::Error; };
struct RankOutOfRange : Error { using Error::Error; };
struct MalformedNetwork : Error { using Error::Error; };
struct WidthMismatch : Error { using Error::Error; };
struct NotPowerOfTwo : Error { using Error::Error; };
struct OddWidth : Error { using Error::Error; };
struct TooWide : Error { using Error::Error; };
struct NotSelectionNetwork : Error { using Error::Error; };
struct MultipleSinks : Error { using Error::Error; };
struct InconsistentClaim : Error { using Error::Error; };
struct UnsupportedAccessPattern : Error { using Error::Error; };
struct InvalidConfig : Error { using Error::Error; };
struct IoFailure : Error { using Error::Error; };

} // namespace fragile
