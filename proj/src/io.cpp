#include "bacforge/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "bacforge/error.hpp"

namespace bacforge {

std::string write_fasta(std::string_view id, const DnaSequence& seq) {
  std::string out = ">" + std::string(id) + "\n";
  const auto& b = seq.bases();
  for (std::size_t i = 0; i < b.size(); i += kFastaLineWidth) {
    out.append(b, i, kFastaLineWidth);
    out += '\n';
  }
  return out;
}

FastaRecord read_fasta(std::string_view text) {
  FastaRecord rec;
  std::string bases;
  bool seen_header = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.front() == '>') {
      if (seen_header || !bases.empty()) throw Error(ErrorCode::ParseError, "FASTA must hold a single record");
      seen_header = true;
      rec.id = std::string(line.substr(1));
      continue;
    }
    for (char c : line) {
      if (!std::isspace(static_cast<unsigned char>(c))) bases.push_back(c);
    }
  }
  if (bases.empty()) throw Error(ErrorCode::BadInput, "empty input");
  rec.sequence = DnaSequence(std::move(bases));
  return rec;
}

std::string write_length_sidecar(std::size_t byte_length) {
  return json{{"mode", "raw"}, {"byte_length", byte_length}}.dump() + "\n";
}

std::size_t read_length_sidecar(std::string_view text) {
  try {
    const auto j = json::parse(text);
    return j.at("byte_length").get<std::size_t>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad length sidecar: ") + e.what());
  }
}

std::filesystem::path sidecar_path(const std::filesystem::path& fasta) {
  auto p = fasta;
  p += ".meta.json";
  return p;
}

json to_json(const Warning& w) { return {{"code", w.code}, {"message", w.message}}; }

json to_json(const CloneManifest& m) {
  json warnings = json::array();
  for (const auto& w : m.warnings) warnings.push_back(to_json(w));
  return {
      {"plasmid_id", m.plasmid_id},
      {"enzyme1", m.enzyme1},
      {"site1", m.site1},
      {"enzyme2", m.enzyme2},
      {"site2", m.site2},
      {"insert_span", {{"start", m.insert_start}, {"end", m.insert_end}}},
      {"adapters_added", {{"leading", m.leading_adapter}, {"trailing", m.trailing_adapter}}},
      {"insert_length_bp", m.insert_length_bp},
      {"cloned_length_bp", m.cloned_length_bp},
      {"warnings", warnings},
  };
}

CloneManifest manifest_from_json(const json& j) {
  try {
    CloneManifest m;
    m.plasmid_id = j.at("plasmid_id").get<std::string>();
    m.enzyme1 = j.at("enzyme1").get<std::string>();
    m.site1 = j.at("site1").get<std::size_t>();
    m.enzyme2 = j.at("enzyme2").get<std::string>();
    m.site2 = j.at("site2").get<std::size_t>();
    m.insert_start = j.at("insert_span").at("start").get<std::size_t>();
    m.insert_end = j.at("insert_span").at("end").get<std::size_t>();
    m.leading_adapter = j.at("adapters_added").at("leading").get<bool>();
    m.trailing_adapter = j.at("adapters_added").at("trailing").get<bool>();
    m.insert_length_bp = j.at("insert_length_bp").get<std::size_t>();
    m.cloned_length_bp = j.at("cloned_length_bp").get<std::size_t>();
    if (j.contains("warnings")) {
      for (const auto& w : j.at("warnings")) {
        m.warnings.push_back({w.at("code").get<std::string>(), w.at("message").get<std::string>()});
      }
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad manifest: ") + e.what());
  }
}

json to_json(const ConstraintReport& r) {
  return {{"gc_count", r.gc_count},
          {"gc_fraction", r.gc_fraction},
          {"max_homopolymer_run", r.max_homopolymer_run},
          {"length", r.length}};
}

namespace {

std::string to_hex(std::string_view bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(kDigits[c >> 4]);
    out.push_back(kDigits[c & 0xF]);
  }
  return out;
}

}  // namespace

json to_json(const DecodeReport& r) {
  return {{"recovered_text", r.recovered_text},
          {"recovered_hex", to_hex(r.recovered_text)},
          {"recovered_chunk_indices", r.recovered_chunk_indices},
          {"unrecoverable_chunk_indices", r.unrecoverable_chunk_indices},
          {"warnings", r.warnings}};
}

json to_json(const RestrictionEnzyme& e) {
  return {{"name", e.name},
          {"recognition", e.recognition},
          {"cut_top", e.cut_top},
          {"cut_bottom", e.cut_bottom},
          {"end_type", to_string(e.end_type())},
          {"methylation_sensitive", e.methylation_sensitive}};
}

json to_json(const Feature& f) {
  return {{"kind", to_string(f.kind)},
          {"label", f.label},
          {"start", f.start},
          {"end", f.end},
          {"wraps", f.wraps()},
          {"strand", f.strand == Strand::Forward ? "+" : "-"}};
}

json plasmid_summary(const PlasmidRecord& p) {
  return {{"id", p.id},
          {"definition", p.definition},
          {"length_bp", p.length_bp()},
          {"topology", p.sequence.circular() ? "circular" : "linear"},
          {"max_insert_capacity_bp", p.max_insert_capacity_bp},
          {"feature_count", p.features.size()}};
}

json plasmid_detail(const PlasmidRecord& p) {
  json j = plasmid_summary(p);
  json features = json::array();
  for (const auto& f : p.features) features.push_back(to_json(f));
  j["features"] = features;
  j["sequence"] = p.sequence.bases();
  return j;
}

json to_json(const EnzymeSites& es) {
  json j = to_json(es.enzyme);
  json sites = json::array();
  for (const auto& s : es.sites) sites.push_back({{"position", s.position}, {"wraps_origin", s.wraps_origin}});
  j["sites"] = sites;
  return j;
}

GelParams gel_params_from_json(const json& j) {
  GelParams p;
  try {
    if (j.contains("lane_height_px")) p.lane_height_px = j.at("lane_height_px").get<std::size_t>();
    if (j.contains("min_length_bp")) p.min_length_bp = j.at("min_length_bp").get<std::size_t>();
    if (j.contains("max_length_bp")) p.max_length_bp = j.at("max_length_bp").get<std::size_t>();
    if (j.contains("ladder")) p.ladder = j.at("ladder").get<std::vector<std::size_t>>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadInput, std::string("bad gel parameters: ") + e.what());
  }
  p.validate();
  return p;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::NotFound, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::BadInput, "cannot write " + path.string());
  out << content;
}

}  // namespace bacforge
