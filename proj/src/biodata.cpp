#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "bacforge/biodata.hpp"
#include "bacforge/error.hpp"
#include "bacforge/iupac.hpp"
#include "bacforge/kernels.hpp"

namespace bacforge {
namespace {

std::string trimmed(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::vector<std::string> split_csv_row(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    cells.push_back(trimmed(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return cells;
}

std::vector<std::string_view> csv_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  return lines;
}

std::optional<std::size_t> parse_size(const std::string& s) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

bool parse_flag(const std::string& s, bool& out) {
  std::string lower;
  for (char c : s) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower.empty() || lower == "0" || lower == "false" || lower == "no") {
    out = false;
    return true;
  }
  if (lower == "1" || lower == "true" || lower == "yes") {
    out = true;
    return true;
  }
  return false;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::NotFound, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string_view to_string(EndType type) { return type == EndType::Sticky ? "sticky" : "blunt"; }

EnzymeCategory parse_category(std::string_view name) {
  if (name == "all" || name == "restriction_enzymes") return EnzymeCategory::All;
  if (name == "six_plus" || name == "6+") return EnzymeCategory::SixPlus;
  if (name == "unique") return EnzymeCategory::Unique;
  if (name == "unique_six_plus") return EnzymeCategory::UniqueSixPlus;
  if (name == "unique_and_dual") return EnzymeCategory::UniqueAndDual;
  throw Error(ErrorCode::BadInput, "unknown enzyme category '" + std::string(name) + "'");
}

std::string_view to_string(EnzymeCategory category) {
  switch (category) {
    case EnzymeCategory::All: return "all";
    case EnzymeCategory::SixPlus: return "six_plus";
    case EnzymeCategory::Unique: return "unique";
    case EnzymeCategory::UniqueSixPlus: return "unique_six_plus";
    case EnzymeCategory::UniqueAndDual: return "unique_and_dual";
  }
  return "all";
}

// ---------------------------------------------------------------------------
// Enzyme table

std::vector<RestrictionEnzyme> load_enzyme_table(std::string_view csv) {
  const auto lines = csv_lines(csv);
  std::size_t first = 0;
  while (first < lines.size() && trimmed(lines[first]).empty()) ++first;
  if (first == lines.size()) throw Error(ErrorCode::ParseError, "enzyme table: missing header row");
  const auto header = split_csv_row(lines[first]);
  if (header.size() < 4 || header[0] != "name" || header[1] != "recognition" || header[2] != "cut_top" ||
      header[3] != "cut_bottom") {
    throw Error(ErrorCode::ParseError, "enzyme table: expected header name,recognition,cut_top,cut_bottom[,methylation_sensitive]");
  }

  std::vector<RestrictionEnzyme> out;
  std::set<std::string, std::less<>> names;
  for (std::size_t li = first + 1; li < lines.size(); ++li) {
    const std::string row_no = "enzyme table row " + std::to_string(li + 1);
    const std::string line = trimmed(lines[li]);
    if (line.empty() || line.front() == '#') continue;
    const auto cells = split_csv_row(line);
    if (cells.size() < 4 || cells.size() > 5) throw Error(ErrorCode::ParseError, row_no + ": expected 4 or 5 columns");

    RestrictionEnzyme e;
    e.name = cells[0];
    if (e.name.empty()) throw Error(ErrorCode::ParseError, row_no + ": empty name");
    for (char c : cells[1]) e.recognition.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    if (!iupac::is_pattern(e.recognition)) {
      throw Error(ErrorCode::ParseError, row_no + " (" + e.name + "): invalid IUPAC recognition '" + cells[1] + "'");
    }
    if (e.recognition.size() < 4) {
      throw Error(ErrorCode::ParseError, row_no + " (" + e.name + "): recognition shorter than 4");
    }
    const auto top = parse_size(cells[2]);
    const auto bottom = parse_size(cells[3]);
    if (!top || !bottom || *top > e.length() || *bottom > e.length()) {
      throw Error(ErrorCode::ParseError, row_no + " (" + e.name + "): cut offsets out of range 0.." +
                                             std::to_string(e.length()));
    }
    e.cut_top = *top;
    e.cut_bottom = *bottom;
    if (cells.size() == 5 && !parse_flag(cells[4], e.methylation_sensitive)) {
      throw Error(ErrorCode::ParseError, row_no + " (" + e.name + "): bad methylation flag '" + cells[4] + "'");
    }
    if (!names.insert(e.name).second) {
      throw Error(ErrorCode::ParseError, row_no + ": duplicate enzyme '" + e.name + "'");
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::string serialize_enzyme_table(std::span<const RestrictionEnzyme> enzymes) {
  std::string out = "name,recognition,cut_top,cut_bottom,methylation_sensitive\n";
  for (const auto& e : enzymes) {
    out += e.name + "," + e.recognition + "," + std::to_string(e.cut_top) + "," + std::to_string(e.cut_bottom) +
           "," + (e.methylation_sensitive ? "true" : "false") + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sites

namespace {

std::vector<SiteHit> to_hits(const std::vector<std::size_t>& starts, const RestrictionEnzyme& e, std::size_t n) {
  std::vector<SiteHit> hits;
  hits.reserve(starts.size());
  for (std::size_t s : starts) hits.push_back({e.name, s + 1, s + e.length() > n});
  return hits;
}

}  // namespace

std::vector<SiteHit> find_sites(const DnaSequence& seq, const RestrictionEnzyme& enzyme) {
  const auto starts = kernels::scan_pattern(seq.bases(), enzyme.recognition, seq.circular(), kernels::Exec::Parallel);
  return to_hits(starts, enzyme, seq.size());
}

std::vector<SiteHit> find_sites(const PlasmidRecord& plasmid, const RestrictionEnzyme& enzyme) {
  return find_sites(plasmid.sequence, enzyme);
}

bool in_category(const RestrictionEnzyme& enzyme, std::size_t sites, EnzymeCategory category) {
  if (sites == 0) return false;
  const bool six_plus = enzyme.length() >= 6;
  switch (category) {
    case EnzymeCategory::All: return true;
    case EnzymeCategory::SixPlus: return six_plus;
    case EnzymeCategory::Unique: return sites == 1;
    case EnzymeCategory::UniqueSixPlus: return sites == 1 && six_plus;
    case EnzymeCategory::UniqueAndDual: return sites <= 2;
  }
  return false;
}

std::vector<EnzymeSites> classify_enzymes(const PlasmidRecord& plasmid, std::span<const RestrictionEnzyme> table,
                                          EnzymeCategory category) {
  std::vector<std::string> patterns;
  patterns.reserve(table.size());
  for (const auto& e : table) patterns.push_back(e.recognition);
  const auto& seq = plasmid.sequence;
  const auto all = kernels::scan_patterns(seq.bases(), patterns, seq.circular(), kernels::Exec::Parallel);

  std::vector<EnzymeSites> out;
  for (std::size_t k = 0; k < table.size(); ++k) {
    if (!in_category(table[k], all[k].size(), category)) continue;
    out.push_back({table[k], to_hits(all[k], table[k], seq.size())});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Database

std::map<std::string, std::size_t> parse_capacities(std::string_view csv) {
  std::map<std::string, std::size_t> out;
  const auto lines = csv_lines(csv);
  bool header = true;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::string line = trimmed(lines[li]);
    if (line.empty() || line.front() == '#') continue;
    const auto cells = split_csv_row(line);
    if (header) {
      header = false;
      if (cells.size() == 2 && cells[0] == "id") continue;
    }
    const auto cap = cells.size() == 2 ? parse_size(cells[1]) : std::nullopt;
    if (!cap || *cap == 0) {
      throw Error(ErrorCode::ParseError, "capacities row " + std::to_string(li + 1) + ": expected id,positive integer");
    }
    out[cells[0]] = *cap;
  }
  return out;
}

Database::Database(std::vector<PlasmidRecord> plasmids, std::vector<RestrictionEnzyme> enzymes)
    : plasmids_(std::move(plasmids)), enzymes_(std::move(enzymes)) {
  for (std::size_t i = 0; i < plasmids_.size(); ++i) {
    if (!plasmid_index_.emplace(plasmids_[i].id, i).second) {
      throw Error(ErrorCode::ParseError, "duplicate plasmid id '" + plasmids_[i].id + "'");
    }
  }
  for (std::size_t i = 0; i < enzymes_.size(); ++i) enzyme_index_.emplace(enzymes_[i].name, i);
}

Database Database::load(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw Error(ErrorCode::NotFound, "data directory not found: " + dir.string());
  const fs::path plasmid_dir = dir / "plasmids";
  if (!fs::is_directory(plasmid_dir)) throw Error(ErrorCode::NotFound, "missing " + plasmid_dir.string());

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(plasmid_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".gb") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::map<std::string, std::size_t> capacities;
  if (fs::exists(plasmid_dir / "capacities.csv")) capacities = parse_capacities(read_file(plasmid_dir / "capacities.csv"));

  std::vector<PlasmidRecord> plasmids;
  for (const auto& f : files) {
    try {
      auto rec = parse_plasmid(read_file(f));
      if (auto it = capacities.find(rec.id); it != capacities.end()) rec.max_insert_capacity_bp = it->second;
      plasmids.push_back(std::move(rec));
    } catch (const Error& e) {
      throw Error(e.code(), f.filename().string() + ": " + e.what());
    }
  }
  return Database(std::move(plasmids), load_enzyme_table(read_file(dir / "enzymes.csv")));
}

const PlasmidRecord& Database::plasmid(std::string_view id) const {
  auto it = plasmid_index_.find(id);
  if (it == plasmid_index_.end()) throw Error(ErrorCode::NotFound, "unknown plasmid '" + std::string(id) + "'");
  return plasmids_[it->second];
}

const RestrictionEnzyme& Database::enzyme(std::string_view name) const {
  auto it = enzyme_index_.find(name);
  if (it == enzyme_index_.end()) throw Error(ErrorCode::NotFound, "unknown enzyme '" + std::string(name) + "'");
  return enzymes_[it->second];
}

bool Database::has_plasmid(std::string_view id) const { return plasmid_index_.contains(id); }

}  // namespace bacforge
