#include "bacforge/dna.hpp"

#include <algorithm>

#include "bacforge/error.hpp"

namespace bacforge {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadInput: return "BAD_INPUT";
    case ErrorCode::BadDna: return "BAD_DNA";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::NoSites: return "NO_SITES";
    case ErrorCode::AmbiguousSites: return "AMBIGUOUS_SITES";
    case ErrorCode::NotFound: return "NOT_FOUND";
    case ErrorCode::PayloadTooLarge: return "PAYLOAD_TOO_LARGE";
  }
  return "UNKNOWN";
}

bool is_base(char c) noexcept {
  return c == 'A' || c == 'C' || c == 'G' || c == 'T';
}

DnaSequence::DnaSequence(std::string bases, Topology topology)
    : bases_(std::move(bases)), topology_(topology) {
  for (std::size_t i = 0; i < bases_.size(); ++i) {
    char& c = bases_[i];
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    if (!is_base(c)) {
      throw Error(ErrorCode::BadDna, "invalid nucleotide '" + std::string(1, bases_[i]) +
                                         "' at position " + std::to_string(i + 1));
    }
  }
}

char complement(char base) noexcept {
  switch (base) {
    case 'A': return 'T';
    case 'T': return 'A';
    case 'G': return 'C';
    case 'C': return 'G';
    default: return base;
  }
}

std::string reverse_complement(std::string_view bases) {
  std::string out(bases.rbegin(), bases.rend());
  std::transform(out.begin(), out.end(), out.begin(), complement);
  return out;
}

std::string circular_slice(std::string_view bases, std::size_t start, std::size_t len) {
  std::string out;
  if (bases.empty()) return out;
  out.reserve(len);
  for (std::size_t i = 0; i < len; ++i) out.push_back(bases[(start + i) % bases.size()]);
  return out;
}

}  // namespace bacforge
