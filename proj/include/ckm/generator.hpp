#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace ckm {

enum class Generator { H, Xminus, Xplus };

constexpr std::string_view to_string(Generator g) noexcept
{
    switch (g) {
        case Generator::H: return "H";
        case Generator::Xminus: return "Xminus";
        case Generator::Xplus: return "Xplus";
    }
    return "?";
}

/// Accepts "H", "Xminus"/"X-" and "Xplus"/"X+".
inline Generator parse_generator(std::string_view s)
{
    if (s == "H") {
        return Generator::H;
    }
    if (s == "Xminus" || s == "X-") {
        return Generator::Xminus;
    }
    if (s == "Xplus" || s == "X+") {
        return Generator::Xplus;
    }
    throw Error(ErrorCode::InputSchemaError, "unknown generator '" + std::string(s) + "'");
}

/// A product of generators, written left to right.
using Word = std::vector<Generator>;

} // namespace ckm
