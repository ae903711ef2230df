#include "bacforge/kernels.hpp"

#include <omp.h>

#include <algorithm>

#include "bacforge/error.hpp"
#include "bacforge/iupac.hpp"
#include "transition_table.hpp"

namespace bacforge::kernels {

// ---------------------------------------------------------------------------
// Block encode

namespace {

void encode_word(std::uint64_t word, char* out) {
  unsigned bit = static_cast<unsigned>((word >> (kBlockBits - 1)) & 1u);
  char prev = detail::kStartBase[bit];
  out[0] = prev;
  for (std::size_t i = 1; i < kBlockBits; ++i) {
    bit = static_cast<unsigned>((word >> (kBlockBits - 1 - i)) & 1u);
    prev = detail::next_base(prev, bit);
    out[i] = prev;
  }
}

BlockDecode decode_word(const char* block) {
  BlockDecode r;
  int bit = detail::start_bit(block[0]);
  if (bit < 0) {
    r.error = "invalid start base";
    return r;
  }
  std::uint64_t word = static_cast<std::uint64_t>(bit);
  for (std::size_t i = 1; i < kBlockBases; ++i) {
    bit = detail::transition_bit(block[i - 1], block[i]);
    if (bit < 0) {
      r.error = "invalid transition at position " + std::to_string(i);
      return r;
    }
    word = (word << 1) | static_cast<std::uint64_t>(bit);
  }
  r.word = word;
  return r;
}

}  // namespace

std::string encode_blocks(std::span<const FramedChunk> chunks, Exec exec) {
  if (exec == Exec::Serial) {
    std::string out;
    out.reserve(chunks.size() * kBlockBases);
    for (const auto& c : chunks) out += bits_to_dna(c.bits()).bases();
    return out;
  }

  std::string out(chunks.size() * kBlockBases, '\0');
  const auto n = static_cast<std::ptrdiff_t>(chunks.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    encode_word(chunks[static_cast<std::size_t>(i)].word(),
                out.data() + static_cast<std::size_t>(i) * kBlockBases);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Block decode

std::vector<BlockDecode> decode_blocks(std::string_view bases, Exec exec) {
  if (bases.size() % kBlockBases != 0) {
    throw Error(ErrorCode::BadInput, "sequence length is not a multiple of the block width");
  }
  const std::size_t n = bases.size() / kBlockBases;
  std::vector<BlockDecode> out(n);

  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        const DnaSequence block(std::string(bases.substr(i * kBlockBases, kBlockBases)));
        out[i].word = dna_to_bits(block).to_uint(0, kBlockBits);
      } catch (const Error& e) {
        out[i].error = e.what();
      }
    }
    return out;
  }

  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = decode_word(bases.data() + static_cast<std::size_t>(i) * kBlockBases);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pattern scanning

namespace {

std::vector<std::size_t> scan_serial(std::string_view bases, std::string_view pattern, bool circular) {
  std::vector<std::size_t> hits;
  const std::size_t n = bases.size();
  const std::size_t m = pattern.size();
  if (n == 0 || m == 0) return hits;
  if (!circular && m > n) return hits;
  const std::size_t limit = circular ? n : n - m + 1;
  for (std::size_t start = 0; start < limit; ++start) {
    const std::string window = circular_slice(bases, start, m);
    if (iupac::matches_at(pattern, window)) hits.push_back(start);
  }
  return hits;
}

/// Bit masks of the sequence, extended by m-1 wrapped bases when circular.
std::vector<std::uint8_t> extended_masks(std::string_view bases, std::size_t m, bool circular) {
  const std::size_t n = bases.size();
  const std::size_t extra = circular ? m - 1 : 0;
  std::vector<std::uint8_t> masks(n + extra);
  for (std::size_t i = 0; i < n + extra; ++i) masks[i] = iupac::mask(bases[i % n]);
  return masks;
}

std::vector<std::size_t> scan_masks(const std::vector<std::uint8_t>& seq, std::size_t n,
                                    std::string_view pattern, bool circular, bool parallel) {
  const std::size_t m = pattern.size();
  std::vector<std::uint8_t> pat(m);
  for (std::size_t j = 0; j < m; ++j) pat[j] = iupac::mask(pattern[j]);
  const std::size_t limit = circular ? n : n - m + 1;

  auto match = [&](std::size_t s) {
    for (std::size_t j = 0; j < m; ++j) {
      if ((seq[s + j] & pat[j]) == 0) return false;
    }
    return true;
  };

  if (!parallel) {
    std::vector<std::size_t> hits;
    for (std::size_t s = 0; s < limit; ++s) {
      if (match(s)) hits.push_back(s);
    }
    return hits;
  }

  std::vector<std::vector<std::size_t>> per_thread(static_cast<std::size_t>(omp_get_max_threads()));
  const auto count = static_cast<std::ptrdiff_t>(limit);
#pragma omp parallel
  {
    auto& local = per_thread[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t s = 0; s < count; ++s) {
      if (match(static_cast<std::size_t>(s))) local.push_back(static_cast<std::size_t>(s));
    }
  }
  std::vector<std::size_t> hits;
  for (auto& v : per_thread) hits.insert(hits.end(), v.begin(), v.end());
  std::sort(hits.begin(), hits.end());
  return hits;
}

}  // namespace

std::vector<std::size_t> scan_pattern(std::string_view bases, std::string_view pattern,
                                      bool circular, Exec exec) {
  if (exec == Exec::Serial) return scan_serial(bases, pattern, circular);
  const std::size_t n = bases.size();
  const std::size_t m = pattern.size();
  if (n == 0 || m == 0 || (!circular && m > n)) return {};
  return scan_masks(extended_masks(bases, m, circular), n, pattern, circular, true);
}

std::vector<std::vector<std::size_t>> scan_patterns(std::string_view bases,
                                                    std::span<const std::string> patterns,
                                                    bool circular, Exec exec) {
  std::vector<std::vector<std::size_t>> out(patterns.size());
  if (exec == Exec::Serial) {
    for (std::size_t k = 0; k < patterns.size(); ++k) out[k] = scan_serial(bases, patterns[k], circular);
    return out;
  }

  const std::size_t n = bases.size();
  if (n == 0) return out;
  std::size_t longest = 1;
  for (const auto& p : patterns) longest = std::max(longest, p.size());
  const auto masks = extended_masks(bases, longest, circular);
  const auto count = static_cast<std::ptrdiff_t>(patterns.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const auto& p = patterns[static_cast<std::size_t>(k)];
    if (p.empty() || (!circular && p.size() > n)) continue;
    out[static_cast<std::size_t>(k)] = scan_masks(masks, n, p, circular, false);
  }
  return out;
}

}  // namespace bacforge::kernels
