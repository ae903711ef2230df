#include "bacforge/codec.hpp"

#include <algorithm>
#include <numeric>

#include "bacforge/error.hpp"
#include "bacforge/kernels.hpp"
#include "transition_table.hpp"

namespace bacforge {

PayloadMode parse_payload_mode(std::string_view name) {
  if (name == "text") return PayloadMode::Text;
  if (name == "raw" || name == "raw-binary") return PayloadMode::Raw;
  throw Error(ErrorCode::BadInput, "unknown mode '" + std::string(name) + "' (expected text or raw)");
}

std::string_view to_string(PayloadMode mode) {
  return mode == PayloadMode::Text ? "text" : "raw";
}

// ---------------------------------------------------------------------------
// BitString

BitString::BitString(std::string_view digits) {
  bits_.reserve(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] != '0' && digits[i] != '1') {
      throw Error(ErrorCode::BadInput, "invalid bit character at position " + std::to_string(i));
    }
    bits_.push_back(static_cast<std::uint8_t>(digits[i] - '0'));
  }
}

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] > 1) {
      throw Error(ErrorCode::BadInput, "bit value out of range at position " + std::to_string(i));
    }
  }
}

BitString BitString::from_uint(std::uint64_t value, std::size_t width) {
  std::vector<std::uint8_t> bits(width);
  for (std::size_t i = 0; i < width; ++i) {
    bits[i] = static_cast<std::uint8_t>((value >> (width - 1 - i)) & 1u);
  }
  return BitString(std::move(bits));
}

std::uint64_t BitString::to_uint(std::size_t offset, std::size_t width) const {
  if (width > 64 || offset + width > bits_.size()) {
    throw Error(ErrorCode::BadInput, "bit range out of bounds");
  }
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < width; ++i) v = (v << 1) | bits_[offset + i];
  return v;
}

std::string BitString::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = static_cast<char>('0' + bits_[i]);
  return s;
}

// ---------------------------------------------------------------------------
// Chunking and the XOR code

std::vector<SourceChunk> chunk_source(std::string_view payload, PayloadMode /*mode*/) {
  if (payload.empty()) throw Error(ErrorCode::BadInput, "empty input");
  const std::size_t n = (payload.size() + 3) / 4;
  std::vector<SourceChunk> chunks(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t word = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t at = 4 * i + b;
      const auto byte = at < payload.size() ? static_cast<unsigned char>(payload[at]) : 0u;
      word = (word << 8) | byte;
    }
    chunks[i] = {word, i};
  }
  return chunks;
}

std::vector<FramedChunk> xor_encode(std::span<const SourceChunk> sources) {
  if (sources.empty()) throw Error(ErrorCode::BadInput, "empty input");
  const std::size_t n = sources.size();
  std::vector<FramedChunk> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t v = sources[i].payload;
    if (i >= 2) v ^= sources[i - 1].payload ^ sources[i - 2].payload;
    out.push_back(FramedChunk::make(i, v));
  }
  return out;
}

namespace {

// Variables a received relation touches. Relation i covers x[i] alone for the
// two systematic seeds and x[i-2..i] afterwards.
std::size_t relation_first(std::size_t i) { return i < 2 ? i : i - 2; }

class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

struct Row {
  std::vector<std::uint64_t> mask;
  std::uint32_t rhs = 0;

  bool test(std::size_t c) const { return (mask[c / 64] >> (c % 64)) & 1u; }
  void add(const Row& other) {
    for (std::size_t w = 0; w < mask.size(); ++w) mask[w] ^= other.mask[w];
    rhs ^= other.rhs;
  }
  std::size_t popcount() const {
    std::size_t c = 0;
    for (auto w : mask) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }
};

}  // namespace

XorDecodeResult xor_decode(std::span<const ReceivedChunk> received, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::BadInput, "chunk count must be positive");

  XorDecodeResult result;
  auto& warnings = result.report.warnings;

  std::vector<std::optional<std::uint32_t>> rel(n);
  std::vector<bool> seen(n, false);
  for (const auto& r : received) {
    if (r.position >= n) {
      throw Error(ErrorCode::BadInput, "position " + std::to_string(r.position) + " out of range");
    }
    if (seen[r.position]) {
      throw Error(ErrorCode::BadInput, "position " + std::to_string(r.position) + " received twice");
    }
    seen[r.position] = true;
    if (!r.chunk) continue;
    if (r.chunk->header != r.position % 256) {
      warnings.push_back("header mismatch at position " + std::to_string(r.position));
    }
    rel[r.position] = r.chunk->payload;
  }

  auto vars_of = [n](std::size_t i) {
    const std::size_t lo = (n <= 2) ? i : relation_first(i);
    return std::pair{lo, i};
  };

  std::vector<std::optional<std::uint32_t>> x(n);

  // Peeling: resolve relations with a single unknown until nothing changes.
  std::vector<std::size_t> unknown(n, 0);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < n; ++i) {
    if (!rel[i]) continue;
    const auto [lo, hi] = vars_of(i);
    unknown[i] = hi - lo + 1;
    if (unknown[i] == 1) stack.push_back(i);
  }
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    if (unknown[i] != 1) continue;
    const auto [lo, hi] = vars_of(i);
    std::uint32_t value = *rel[i];
    std::size_t target = n;
    for (std::size_t j = lo; j <= hi; ++j) {
      if (x[j]) {
        value ^= *x[j];
      } else {
        target = j;
      }
    }
    x[target] = value;
    // Relations touching x[target] are target, target+1, target+2 (when n > 2).
    const std::size_t last = (n <= 2) ? target : std::min(n - 1, target + 2);
    for (std::size_t k = target; k <= last; ++k) {
      if (!rel[k]) continue;
      const auto [klo, khi] = vars_of(k);
      if (target < klo || target > khi) continue;
      if (--unknown[k] == 1) stack.push_back(k);
    }
  }

  // Parity checks: fully known relations must agree.
  for (std::size_t i = 0; i < n; ++i) {
    if (!rel[i] || unknown[i] != 0) continue;
    const auto [lo, hi] = vars_of(i);
    std::uint32_t acc = *rel[i];
    for (std::size_t j = lo; j <= hi; ++j) acc ^= *x[j];
    if (acc != 0) warnings.push_back("parity check failed at position " + std::to_string(i));
  }

  // Residual elimination over connected components of still-unknown variables.
  std::vector<std::size_t> residual;
  for (std::size_t i = 0; i < n; ++i) {
    if (rel[i] && unknown[i] >= 2) residual.push_back(i);
  }
  if (!residual.empty()) {
    DisjointSet components(n);
    for (std::size_t i : residual) {
      const auto [lo, hi] = vars_of(i);
      std::size_t first = n;
      for (std::size_t j = lo; j <= hi; ++j) {
        if (x[j]) continue;
        if (first == n) {
          first = j;
        } else {
          components.unite(first, j);
        }
      }
    }
    // Group relations by component root, and index variables locally.
    std::vector<std::vector<std::size_t>> rows_of(n);
    for (std::size_t i : residual) {
      const auto [lo, hi] = vars_of(i);
      for (std::size_t j = lo; j <= hi; ++j) {
        if (!x[j]) {
          rows_of[components.find(j)].push_back(i);
          break;
        }
      }
    }
    std::vector<std::vector<std::size_t>> vars_in(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (!x[j]) vars_in[components.find(j)].push_back(j);
    }
    std::vector<std::size_t> local(n, 0);

    for (std::size_t root = 0; root < n; ++root) {
      const auto& rows_idx = rows_of[root];
      if (rows_idx.empty()) continue;
      const auto& vars = vars_in[root];
      for (std::size_t c = 0; c < vars.size(); ++c) local[vars[c]] = c;
      const std::size_t words = (vars.size() + 63) / 64;

      std::vector<Row> rows;
      rows.reserve(rows_idx.size());
      for (std::size_t i : rows_idx) {
        Row row{std::vector<std::uint64_t>(words, 0), *rel[i]};
        const auto [lo, hi] = vars_of(i);
        for (std::size_t j = lo; j <= hi; ++j) {
          if (x[j]) {
            row.rhs ^= *x[j];
          } else {
            row.mask[local[j] / 64] |= std::uint64_t{1} << (local[j] % 64);
          }
        }
        rows.push_back(std::move(row));
      }

      // Reduced row echelon form.
      std::size_t rank = 0;
      for (std::size_t c = 0; c < vars.size() && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && !rows[pivot].test(c)) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
          if (r != rank && rows[r].test(c)) rows[r].add(rows[rank]);
        }
        ++rank;
      }
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const std::size_t weight = rows[r].popcount();
        if (weight == 0 && rows[r].rhs != 0) {
          warnings.push_back("inconsistent relations near position " + std::to_string(rows_idx.front()));
        }
        if (weight != 1) continue;
        for (std::size_t c = 0; c < vars.size(); ++c) {
          if (rows[r].test(c)) {
            x[vars[c]] = rows[r].rhs;
            break;
          }
        }
      }
    }
  }

  for (std::size_t j = 0; j < n; ++j) {
    if (x[j]) {
      result.sources.push_back({*x[j], j});
      result.report.recovered_chunk_indices.insert(j);
    } else {
      result.report.unrecoverable_chunk_indices.insert(j);
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Binary <-> DNA

DnaSequence bits_to_dna(const BitString& bits) {
  if (bits.empty()) throw Error(ErrorCode::BadInput, "empty input");
  std::string out(bits.size(), '?');
  out[0] = detail::kStartBase[bits[0]];
  for (std::size_t i = 1; i < bits.size(); ++i) out[i] = detail::next_base(out[i - 1], bits[i]);
  return DnaSequence(std::move(out));
}

BitString dna_to_bits(const DnaSequence& seq) {
  if (seq.empty()) throw Error(ErrorCode::BadInput, "empty input");
  const auto& b = seq.bases();
  std::vector<std::uint8_t> bits(b.size());
  const int first = detail::start_bit(b[0]);
  if (first < 0) throw Error(ErrorCode::BadDna, "invalid start base");
  bits[0] = static_cast<std::uint8_t>(first);
  for (std::size_t i = 1; i < b.size(); ++i) {
    const int bit = detail::transition_bit(b[i - 1], b[i]);
    if (bit < 0) {
      throw Error(ErrorCode::BadDna, "invalid transition at position " + std::to_string(i));
    }
    bits[i] = static_cast<std::uint8_t>(bit);
  }
  return BitString(std::move(bits));
}

// ---------------------------------------------------------------------------
// Message pipeline

DnaSequence encode_message(std::string_view payload, PayloadMode mode) {
  const auto sources = chunk_source(payload, mode);
  const auto framed = xor_encode(sources);
  return DnaSequence(kernels::encode_blocks(framed, kernels::Exec::Parallel));
}

DecodeReport decode_message(const DnaSequence& seq, PayloadMode mode,
                            std::optional<std::size_t> byte_length) {
  if (seq.empty()) throw Error(ErrorCode::BadInput, "empty input");
  if (seq.size() % kBlockBases != 0) {
    throw Error(ErrorCode::BadInput, "sequence length " + std::to_string(seq.size()) +
                                         " is not a multiple of " + std::to_string(kBlockBases));
  }
  const std::size_t n = seq.size() / kBlockBases;
  if (mode == PayloadMode::Raw) {
    if (!byte_length) throw Error(ErrorCode::BadInput, "raw mode requires an explicit byte length");
    if (*byte_length == 0 || (*byte_length + 3) / 4 != n) {
      throw Error(ErrorCode::BadInput, "byte length " + std::to_string(*byte_length) +
                                           " does not match " + std::to_string(n) + " chunks");
    }
  }

  const auto blocks = kernels::decode_blocks(seq.bases(), kernels::Exec::Parallel);
  std::vector<ReceivedChunk> received(n);
  std::vector<std::string> block_warnings;
  for (std::size_t i = 0; i < n; ++i) {
    received[i].position = i;
    if (blocks[i].word) {
      received[i].chunk = FramedChunk::from_word(*blocks[i].word, i);
    } else {
      block_warnings.push_back("block " + std::to_string(i) + " treated as erasure: " + blocks[i].error);
    }
  }

  auto decoded = xor_decode(received, n);
  DecodeReport report = std::move(decoded.report);
  report.warnings.insert(report.warnings.begin(), block_warnings.begin(), block_warnings.end());
  for (std::size_t j : report.unrecoverable_chunk_indices) {
    report.warnings.push_back("chunk " + std::to_string(j) + " unrecoverable; filled with zero bytes");
  }

  std::string bytes(4 * n, '\0');
  for (const auto& src : decoded.sources) {
    for (std::size_t b = 0; b < 4; ++b) {
      bytes[4 * src.index + b] = static_cast<char>((src.payload >> (24 - 8 * b)) & 0xFF);
    }
  }
  if (mode == PayloadMode::Raw) {
    bytes.resize(*byte_length);
  } else {
    while (!bytes.empty() && bytes.back() == '\0') bytes.pop_back();
  }
  report.recovered_text = std::move(bytes);
  return report;
}

ConstraintReport analyze_constraints(const DnaSequence& seq) {
  if (seq.empty()) throw Error(ErrorCode::BadInput, "empty input");
  ConstraintReport r;
  r.length = seq.size();
  std::size_t run = 0;
  char prev = '\0';
  for (char c : seq.bases()) {
    if (c == 'G' || c == 'C') ++r.gc_count;
    run = (c == prev) ? run + 1 : 1;
    prev = c;
    r.max_homopolymer_run = std::max(r.max_homopolymer_run, run);
  }
  r.gc_fraction = static_cast<double>(r.gc_count) / static_cast<double>(r.length);
  return r;
}

}  // namespace bacforge
