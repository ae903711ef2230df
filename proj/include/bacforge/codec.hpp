#pragma once

// Constrained DNA codec: payload bytes are cut into 32-bit chunks, mixed by a
// sliding three-chunk XOR code, framed with an 8-bit index header and walked
// through a two-state-class transition table so that every emitted base
// differs from its predecessor and G/C alternate with A/T.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bacforge/dna.hpp"

namespace bacforge {

inline constexpr std::size_t kPayloadBits = 32;
inline constexpr std::size_t kHeaderBits = 8;
inline constexpr std::size_t kBlockBits = kPayloadBits + kHeaderBits;
inline constexpr std::size_t kBlockBases = kBlockBits;

/// How decoded bytes are trimmed. Text strips the zero padding; Raw needs the
/// original byte length because trailing zeros may be genuine data.
enum class PayloadMode { Text, Raw };

PayloadMode parse_payload_mode(std::string_view name);
std::string_view to_string(PayloadMode mode);

class BitString {
 public:
  BitString() = default;
  /// From a textual "0101..." form.
  explicit BitString(std::string_view digits);
  explicit BitString(std::vector<std::uint8_t> bits);

  /// The low `width` bits of `value`, most significant first.
  static BitString from_uint(std::uint64_t value, std::size_t width);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  /// Big-endian value of bits [offset, offset + width); width <= 64.
  std::uint64_t to_uint(std::size_t offset, std::size_t width) const;
  std::string to_string() const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

struct SourceChunk {
  std::uint32_t payload = 0;
  std::size_t index = 0;

  friend bool operator==(const SourceChunk&, const SourceChunk&) = default;
};

/// 40-bit transmission unit: header (index mod 256) followed by the payload.
struct FramedChunk {
  std::uint8_t header = 0;
  std::uint32_t payload = 0;
  std::size_t index = 0;

  static FramedChunk make(std::size_t index, std::uint32_t payload) {
    return {static_cast<std::uint8_t>(index % 256), payload, index};
  }
  static FramedChunk from_word(std::uint64_t word, std::size_t index) {
    return {static_cast<std::uint8_t>((word >> kPayloadBits) & 0xFF),
            static_cast<std::uint32_t>(word & 0xFFFFFFFFu), index};
  }

  std::uint64_t word() const noexcept {
    return (static_cast<std::uint64_t>(header) << kPayloadBits) | payload;
  }
  BitString bits() const { return BitString::from_uint(word(), kBlockBits); }

  friend bool operator==(const FramedChunk&, const FramedChunk&) = default;
};

struct ConstraintReport {
  std::size_t gc_count = 0;
  double gc_fraction = 0.0;
  std::size_t max_homopolymer_run = 0;
  std::size_t length = 0;
};

struct DecodeReport {
  std::string recovered_text;
  std::set<std::size_t> recovered_chunk_indices;
  std::set<std::size_t> unrecoverable_chunk_indices;
  std::vector<std::string> warnings;
};

/// One slot of the received stream; an empty `chunk` is an erasure.
struct ReceivedChunk {
  std::size_t position = 0;
  std::optional<FramedChunk> chunk;
};

struct XorDecodeResult {
  /// Recovered sources in index order; gaps are listed in the report.
  std::vector<SourceChunk> sources;
  DecodeReport report;
};

std::vector<SourceChunk> chunk_source(std::string_view payload, PayloadMode mode);

/// k == n. The first two outputs are systematic copies; output i >= 2 is
/// x[i-2] ^ x[i-1] ^ x[i].
std::vector<FramedChunk> xor_encode(std::span<const SourceChunk> sources);

/// Solves for every source chunk that the received relations determine.
/// Peels degree-one relations to a fixpoint, then eliminates what is left
/// over GF(2) per connected component, so the recovered set is exactly the
/// algebraically determined set. Positions absent from `received` count as
/// erasures.
XorDecodeResult xor_decode(std::span<const ReceivedChunk> received, std::size_t n);

BitString dna_to_bits(const DnaSequence& seq);
DnaSequence bits_to_dna(const BitString& bits);

DnaSequence encode_message(std::string_view payload, PayloadMode mode);

/// `byte_length` is required in Raw mode and ignored in Text mode.
DecodeReport decode_message(const DnaSequence& seq, PayloadMode mode,
                            std::optional<std::size_t> byte_length = std::nullopt);

ConstraintReport analyze_constraints(const DnaSequence& seq);

}  // namespace bacforge
