#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bacforge/dna.hpp"

namespace bacforge {

inline constexpr std::size_t kDefaultInsertCapacity = 5000;

enum class FeatureKind { Gene, Cds, RepOrigin, Promoter, Misc };
enum class Strand { Forward, Reverse };

std::string_view to_string(FeatureKind kind);

/// Annotated span, 1-based inclusive. A span with start > end wraps the
/// origin of a circular record.
struct Feature {
  FeatureKind kind = FeatureKind::Misc;
  std::string label;
  std::size_t start = 1;
  std::size_t end = 1;
  Strand strand = Strand::Forward;

  bool wraps() const noexcept { return start > end; }
  friend bool operator==(const Feature&, const Feature&) = default;
};

struct PlasmidRecord {
  std::string id;
  std::string definition;
  DnaSequence sequence;
  std::vector<Feature> features;
  std::size_t max_insert_capacity_bp = kDefaultInsertCapacity;

  std::size_t length_bp() const noexcept { return sequence.size(); }
  friend bool operator==(const PlasmidRecord&, const PlasmidRecord&) = default;
};

enum class EndType { Sticky, Blunt };

struct RestrictionEnzyme {
  std::string name;
  std::string recognition;  // IUPAC pattern, top strand 5'->3'
  std::size_t cut_top = 0;
  std::size_t cut_bottom = 0;
  bool methylation_sensitive = false;

  std::size_t length() const noexcept { return recognition.size(); }
  EndType end_type() const noexcept { return cut_top == cut_bottom ? EndType::Blunt : EndType::Sticky; }
  friend bool operator==(const RestrictionEnzyme&, const RestrictionEnzyme&) = default;
};

std::string_view to_string(EndType type);

enum class EnzymeCategory { All, SixPlus, Unique, UniqueSixPlus, UniqueAndDual };

EnzymeCategory parse_category(std::string_view name);
std::string_view to_string(EnzymeCategory category);

struct SiteHit {
  std::string enzyme;
  std::size_t position = 0;  // 1-based start of the top-strand match
  bool wraps_origin = false;

  friend bool operator==(const SiteHit&, const SiteHit&) = default;
};

struct EnzymeSites {
  RestrictionEnzyme enzyme;
  std::vector<SiteHit> sites;
};

// GenBank subset ------------------------------------------------------------

PlasmidRecord parse_plasmid(std::string_view text);
std::string serialize_plasmid(const PlasmidRecord& record);

// Enzyme table --------------------------------------------------------------

/// Comma-separated, header "name,recognition,cut_top,cut_bottom,methylation_sensitive".
/// The last column may be omitted (defaults to false).
std::vector<RestrictionEnzyme> load_enzyme_table(std::string_view csv);
std::string serialize_enzyme_table(std::span<const RestrictionEnzyme> enzymes);

// Site scanning -------------------------------------------------------------

/// Top-strand matches of the enzyme's pattern, ascending. Circular
/// sequences are scanned across the origin.
std::vector<SiteHit> find_sites(const DnaSequence& seq, const RestrictionEnzyme& enzyme);
std::vector<SiteHit> find_sites(const PlasmidRecord& plasmid, const RestrictionEnzyme& enzyme);

bool in_category(const RestrictionEnzyme& enzyme, std::size_t site_count, EnzymeCategory category);

/// Enzymes from `table` that cut `plasmid` and satisfy `category`, in table order.
std::vector<EnzymeSites> classify_enzymes(const PlasmidRecord& plasmid,
                                          std::span<const RestrictionEnzyme> table,
                                          EnzymeCategory category);

// On-disk store ---------------------------------------------------------------

/// Plasmid directory (*.gb plus capacities.csv) and the enzyme table,
/// loaded once and read-only afterwards.
class Database {
 public:
  /// Layout: <dir>/plasmids/*.gb, <dir>/plasmids/capacities.csv, <dir>/enzymes.csv.
  static Database load(const std::filesystem::path& dir);

  Database(std::vector<PlasmidRecord> plasmids, std::vector<RestrictionEnzyme> enzymes);

  const std::vector<PlasmidRecord>& plasmids() const noexcept { return plasmids_; }
  const std::vector<RestrictionEnzyme>& enzymes() const noexcept { return enzymes_; }

  /// Throws ErrorCode::NotFound.
  const PlasmidRecord& plasmid(std::string_view id) const;
  const RestrictionEnzyme& enzyme(std::string_view name) const;
  bool has_plasmid(std::string_view id) const;

 private:
  std::vector<PlasmidRecord> plasmids_;
  std::vector<RestrictionEnzyme> enzymes_;
  std::map<std::string, std::size_t, std::less<>> plasmid_index_;
  std::map<std::string, std::size_t, std::less<>> enzyme_index_;
};

/// Parses "id,max_insert_capacity_bp" rows.
std::map<std::string, std::size_t> parse_capacities(std::string_view csv);

}  // namespace bacforge
