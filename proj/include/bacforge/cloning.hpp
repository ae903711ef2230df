#pragma once

// Sequence-level cloning model: both recognition sites stay in the vector,
// everything strictly between them is replaced by the payload, and
// decloning returns the bases strictly between the two sites.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bacforge/biodata.hpp"
#include "bacforge/dna.hpp"

namespace bacforge {

/// Non-fatal condition carried alongside a successful result.
struct Warning {
  std::string code;  // CAPACITY_WARNING, INSUFFICIENT_GAP, ...
  std::string message;

  friend bool operator==(const Warning&, const Warning&) = default;
};

struct CloningSite {
  RestrictionEnzyme enzyme;
  SiteHit hit;
  std::string bases;  // concrete plasmid bases matched by the pattern
};

struct EnzymePair {
  CloningSite first;
  CloningSite second;
  std::vector<Warning> warnings;
};

struct AdaptedInsert {
  std::string adapted;  // site1 + payload + site2
  std::string payload;  // bases that end up strictly between the sites
  bool leading_added = false;
  bool trailing_added = false;
};

struct CloneManifest {
  std::string plasmid_id;
  std::string enzyme1;
  std::size_t site1 = 0;
  std::string enzyme2;
  std::size_t site2 = 0;
  std::size_t insert_start = 0;  // 1-based inclusive, cloned coordinates
  std::size_t insert_end = 0;
  bool leading_adapter = false;
  bool trailing_adapter = false;
  std::size_t insert_length_bp = 0;
  std::size_t cloned_length_bp = 0;
  std::vector<Warning> warnings;

  friend bool operator==(const CloneManifest&, const CloneManifest&) = default;
};

struct ClonedPlasmid {
  DnaSequence sequence;
  CloneManifest manifest;
  std::string base_record;
  RestrictionEnzyme enzyme1;
  RestrictionEnzyme enzyme2;
};

std::optional<Warning> capacity_check(const PlasmidRecord& plasmid, std::size_t insert_length);

/// Automatic site choice. Candidates are sticky, methylation-insensitive
/// enzymes of `category` whose site is absent from the insert (either
/// strand). The first site is the lowest-positioned candidate; the second is
/// the nearest downstream site of another enzyme whose gap covers the
/// adapted insert, else the widest gap with an INSUFFICIENT_GAP warning.
/// Throws ErrorCode::NoSites.
EnzymePair select_enzyme_pair(const PlasmidRecord& plasmid, std::span<const RestrictionEnzyme> table,
                              EnzymeCategory category, const DnaSequence& insert);

/// Pair from explicit enzymes; each must cut the plasmid exactly once and
/// neither may cut the insert.
EnzymePair pair_from_enzymes(const PlasmidRecord& plasmid, const RestrictionEnzyme& first,
                             const RestrictionEnzyme& second, const DnaSequence& insert);

AdaptedInsert adapt_insert(const DnaSequence& insert, const CloningSite& first, const CloningSite& second);

ClonedPlasmid clone_insert(const PlasmidRecord& plasmid, const DnaSequence& insert, const EnzymePair& pair);
ClonedPlasmid clone_insert(const PlasmidRecord& plasmid, const DnaSequence& insert,
                           std::span<const RestrictionEnzyme> table, EnzymeCategory category);

/// Throws ErrorCode::AmbiguousSites unless each site occurs exactly once.
DnaSequence declone_insert(const DnaSequence& cloned, const RestrictionEnzyme& first,
                           const RestrictionEnzyme& second);
DnaSequence declone_insert(const ClonedPlasmid& cloned);

/// Vector record for the clone: features outside the replaced segment are
/// carried over (shifted), plus a misc ENCODED_DATA feature over the insert.
PlasmidRecord cloned_record(const PlasmidRecord& base, const ClonedPlasmid& cloned);

}  // namespace bacforge
