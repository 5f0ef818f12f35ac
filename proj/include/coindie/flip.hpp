#pragma once

#include <cstdint>

namespace coindie {

// One coin-flip outcome. Heads maps to bit 1 everywhere in this project.
enum class Flip : std::uint8_t { tails = 0, heads = 1 };

constexpr bool is_heads(Flip flip) { return flip == Flip::heads; }

constexpr char to_char(Flip flip) { return is_heads(flip) ? 'H' : 'T'; }

}  // namespace coindie
