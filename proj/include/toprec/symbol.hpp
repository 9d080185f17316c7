#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace toprec {

using Sym = std::uint16_t;

// Process-wide interner. Thread-safe. Ids are never recycled.
Sym intern(std::string_view name);
std::optional<Sym> lookup_symbol(std::string_view name);
std::string symbol_name(Sym s);

// z1, z2, ... : canonical argument names of stored differentials.
Sym zvar(int i);

}  // namespace toprec
