#pragma once

// Binary <-> nucleotide state machine shared by the codec and its kernels.
//
//   previous | bit 0 | bit 1
//   ---------+-------+------
//       A    |   C   |   G
//       T    |   G   |   C
//       G    |   A   |   T
//       C    |   T   |   A
//
// The first base of a block is G for 0 and C for 1.

#include <cstdint>

namespace bacforge::detail {

inline constexpr char kStartBase[2] = {'G', 'C'};

inline char next_base(char previous, unsigned bit) noexcept {
  switch (previous) {
    case 'A': return bit ? 'G' : 'C';
    case 'T': return bit ? 'C' : 'G';
    case 'G': return bit ? 'T' : 'A';
    case 'C': return bit ? 'A' : 'T';
    default: return '?';
  }
}

/// Inverse lookup: -1 when `current` cannot follow `previous`.
inline int transition_bit(char previous, char current) noexcept {
  switch (previous) {
    case 'A': return current == 'C' ? 0 : current == 'G' ? 1 : -1;
    case 'T': return current == 'G' ? 0 : current == 'C' ? 1 : -1;
    case 'G': return current == 'A' ? 0 : current == 'T' ? 1 : -1;
    case 'C': return current == 'T' ? 0 : current == 'A' ? 1 : -1;
    default: return -1;
  }
}

inline int start_bit(char first) noexcept {
  return first == 'G' ? 0 : first == 'C' ? 1 : -1;
}

}  // namespace bacforge::detail
