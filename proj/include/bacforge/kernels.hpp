#pragma once

// Data-parallel inner loops. Every kernel has a Serial form, written the
// direct way and kept as the reference the tests compare against, and a
// Parallel form (OpenMP) used by the public API.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bacforge/biodata.hpp"
#include "bacforge/codec.hpp"

namespace bacforge::kernels {

enum class Exec { Serial, Parallel };

/// Each framed chunk becomes an independent 40-base block; the state machine
/// restarts at every block boundary.
std::string encode_blocks(std::span<const FramedChunk> chunks, Exec exec);

struct BlockDecode {
  std::optional<std::uint64_t> word;  // header << 32 | payload
  std::string error;
};

/// `bases.size()` must be a multiple of the block width.
std::vector<BlockDecode> decode_blocks(std::string_view bases, Exec exec);

/// 0-based starts of top-strand matches, ascending.
std::vector<std::size_t> scan_pattern(std::string_view bases, std::string_view pattern,
                                      bool circular, Exec exec);

/// One scan_pattern result per pattern.
std::vector<std::vector<std::size_t>> scan_patterns(std::string_view bases,
                                                    std::span<const std::string> patterns,
                                                    bool circular, Exec exec);

}  // namespace bacforge::kernels
