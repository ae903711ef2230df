#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace bacforge {

enum class Topology { Linear, Circular };

/// A validated nucleotide string over {A,C,G,T}. Lowercase input is folded
/// to uppercase; anything else is rejected with ErrorCode::BadDna.
class DnaSequence {
 public:
  DnaSequence() = default;
  explicit DnaSequence(std::string bases, Topology topology = Topology::Linear);

  const std::string& bases() const noexcept { return bases_; }
  Topology topology() const noexcept { return topology_; }
  bool circular() const noexcept { return topology_ == Topology::Circular; }
  std::size_t size() const noexcept { return bases_.size(); }
  bool empty() const noexcept { return bases_.empty(); }
  char operator[](std::size_t i) const { return bases_[i]; }

  DnaSequence with_topology(Topology t) const { return DnaSequence(bases_, t, Trusted{}); }

  friend bool operator==(const DnaSequence&, const DnaSequence&) = default;

 private:
  struct Trusted {};
  DnaSequence(std::string bases, Topology topology, Trusted)
      : bases_(std::move(bases)), topology_(topology) {}

  std::string bases_;
  Topology topology_ = Topology::Linear;
};

bool is_base(char c) noexcept;
char complement(char base) noexcept;
std::string reverse_complement(std::string_view bases);

/// `len` bases starting at 0-based `start`, wrapping past the end.
std::string circular_slice(std::string_view bases, std::size_t start, std::size_t len);

}  // namespace bacforge
