#pragma once

// File and wire formats shared by the CLI and the HTTP service: FASTA, the
// raw-mode length sidecar, and the JSON forms of manifests, reports and
// records.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "bacforge/biodata.hpp"
#include "bacforge/cloning.hpp"
#include "bacforge/codec.hpp"
#include "bacforge/gel.hpp"

namespace bacforge {

using json = nlohmann::json;

inline constexpr std::size_t kFastaLineWidth = 70;

struct FastaRecord {
  std::string id;
  DnaSequence sequence;
};

std::string write_fasta(std::string_view id, const DnaSequence& seq);

/// Single-record FASTA. A bare sequence without a '>' line is also accepted.
FastaRecord read_fasta(std::string_view text);

/// Raw-mode sidecar: {"mode":"raw","byte_length":N}.
std::string write_length_sidecar(std::size_t byte_length);
std::size_t read_length_sidecar(std::string_view text);
std::filesystem::path sidecar_path(const std::filesystem::path& fasta);

json to_json(const Warning& w);
json to_json(const CloneManifest& m);
CloneManifest manifest_from_json(const json& j);

json to_json(const ConstraintReport& r);
json to_json(const DecodeReport& r);
json to_json(const RestrictionEnzyme& e);
json to_json(const Feature& f);
json plasmid_summary(const PlasmidRecord& p);
json plasmid_detail(const PlasmidRecord& p);
json to_json(const EnzymeSites& es);

GelParams gel_params_from_json(const json& j);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace bacforge
