#include "bacforge/iupac.hpp"

#include <array>

namespace bacforge::iupac {
namespace {

constexpr std::array<std::uint8_t, 256> build_table() {
  std::array<std::uint8_t, 256> t{};
  constexpr std::uint8_t A = 1, C = 2, G = 4, T = 8;
  t['A'] = A;
  t['C'] = C;
  t['G'] = G;
  t['T'] = T;
  t['R'] = A | G;
  t['Y'] = C | T;
  t['S'] = C | G;
  t['W'] = A | T;
  t['K'] = G | T;
  t['M'] = A | C;
  t['B'] = C | G | T;
  t['D'] = A | G | T;
  t['H'] = A | C | T;
  t['V'] = A | C | G;
  t['N'] = A | C | G | T;
  return t;
}

constexpr auto kMasks = build_table();

char code_for_mask(std::uint8_t m) {
  for (char c : std::string_view("ACGTRYSWKMBDHVN")) {
    if (kMasks[static_cast<unsigned char>(c)] == m) return c;
  }
  return '?';
}

}  // namespace

std::uint8_t mask(char code) noexcept { return kMasks[static_cast<unsigned char>(code)]; }

bool is_pattern(std::string_view pattern) noexcept {
  if (pattern.empty()) return false;
  for (char c : pattern) {
    if (!is_code(c)) return false;
  }
  return true;
}

bool matches_at(std::string_view pattern, std::string_view window) noexcept {
  if (window.size() < pattern.size()) return false;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if ((kMasks[static_cast<unsigned char>(pattern[i])] &
         kMasks[static_cast<unsigned char>(window[i])]) == 0) {
      return false;
    }
  }
  return true;
}

std::string complement_pattern(std::string_view pattern) {
  std::string out;
  out.reserve(pattern.size());
  for (auto it = pattern.rbegin(); it != pattern.rend(); ++it) {
    const std::uint8_t m = mask(*it);
    // Swap A<->T and C<->G bits.
    const std::uint8_t swapped = static_cast<std::uint8_t>(((m & 1) << 3) | ((m & 8) >> 3) |
                                                           ((m & 2) << 1) | ((m & 4) >> 1));
    out.push_back(code_for_mask(swapped));
  }
  return out;
}

bool is_palindromic(std::string_view pattern) { return complement_pattern(pattern) == pattern; }

}  // namespace bacforge::iupac
