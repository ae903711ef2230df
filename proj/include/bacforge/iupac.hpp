#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace bacforge::iupac {

// Each code maps to a 4-bit set: A=1, C=2, G=4, T=8. Zero means "not a code".
std::uint8_t mask(char code) noexcept;

inline bool is_code(char c) noexcept { return mask(c) != 0; }
bool is_pattern(std::string_view pattern) noexcept;

inline bool matches(char pattern_code, char base) noexcept {
  return (mask(pattern_code) & mask(base)) != 0 && mask(base) != 0;
}

/// True when every pattern position admits the base at the same offset in
/// `window` (which must be at least as long as the pattern).
bool matches_at(std::string_view pattern, std::string_view window) noexcept;

std::string complement_pattern(std::string_view pattern);
bool is_palindromic(std::string_view pattern);

}  // namespace bacforge::iupac
