#include "bacforge/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>

#include "bacforge/biodata.hpp"
#include "bacforge/cloning.hpp"
#include "bacforge/codec.hpp"
#include "bacforge/error.hpp"
#include "bacforge/gel.hpp"
#include "bacforge/io.hpp"
#include "bacforge/service.hpp"

#ifndef BACFORGE_DEFAULT_DATA_DIR
#define BACFORGE_DEFAULT_DATA_DIR "data"
#endif

namespace bacforge {
namespace {

namespace fs = std::filesystem;

std::string default_data_dir() {
  if (const char* env = std::getenv("BACFORGE_DATA_DIR"); env && *env) return env;
  return BACFORGE_DEFAULT_DATA_DIR;
}

bool looks_like_genbank(std::string_view text) {
  const auto start = text.find_first_not_of(" \t\r\n");
  return start != std::string_view::npos && text.substr(start, 5) == "LOCUS";
}

DnaSequence read_sequence_file(const fs::path& path) {
  const auto text = read_text_file(path);
  if (looks_like_genbank(text)) return parse_plasmid(text).sequence;
  return read_fasta(text).sequence;
}

std::pair<std::string, std::string> split_pair(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::BadInput, "--enzymes expects NAME1,NAME2");
  return {s.substr(0, comma), s.substr(comma + 1)};
}

void emit(const std::string& path, std::string_view content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_text_file(path, content);
  }
}

void print_warnings(const std::vector<Warning>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning [" << w.code << "]: " << w.message << "\n";
}

GelLane parse_lane_spec(const std::string& spec) {
  if (fs::exists(spec)) {
    return {fs::path(spec).stem().string(), {read_sequence_file(spec).size()}};
  }
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw Error(ErrorCode::BadInput, "lane '" + spec + "' is neither a file nor LABEL:LEN[,LEN...]");
  }
  GelLane lane{spec.substr(0, colon), {}};
  std::stringstream lens(spec.substr(colon + 1));
  std::string item;
  while (std::getline(lens, item, ',')) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      lane.fragment_lengths.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadInput, "bad fragment length '" + item + "' in lane '" + spec + "'");
    }
  }
  return lane;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"bacforge: encode data as constrained DNA and clone it into plasmid vectors"};
  app.require_subcommand(1);

  std::string data_dir = default_data_dir();
  app.add_option("--data-dir", data_dir, "Plasmid store and enzyme table (env BACFORGE_DATA_DIR)");

  std::string in, out_path, mode_name = "text", plasmid_id, category_name = "unique", insert_path, manifest_path,
                            format_name = "svg", enzymes, host = "127.0.0.1", static_dir;
  std::optional<std::size_t> byte_length;
  std::vector<std::string> lanes;
  int port = 8080;
  GelParams gel_params;
  TextGridOptions grid;

  auto* encode = app.add_subcommand("encode", "Encode a file into a constrained DNA FASTA");
  encode->add_option("--in", in, "Input file")->required();
  encode->add_option("--out", out_path, "Output FASTA (default stdout)");
  encode->add_option("--mode", mode_name, "text or raw")->check(CLI::IsMember({"text", "raw"}));

  auto* decode = app.add_subcommand("decode", "Decode a DNA FASTA back to bytes");
  decode->add_option("--in", in, "Input FASTA")->required();
  decode->add_option("--out", out_path, "Output file (default stdout)");
  decode->add_option("--mode", mode_name, "text or raw")->check(CLI::IsMember({"text", "raw"}));
  decode->add_option("--length", byte_length, "Raw-mode byte length (default: from the .meta.json sidecar)");

  auto* clone = app.add_subcommand("clone", "Clone an insert into a plasmid");
  clone->add_option("--insert", insert_path, "Insert FASTA or bare sequence file")->required();
  clone->add_option("--plasmid", plasmid_id, "Plasmid id")->required();
  clone->add_option("--category", category_name, "Enzyme category");
  clone->add_option("--enzymes", enzymes, "Force the pair, e.g. HindIII,BamHI");
  clone->add_option("--out", out_path, "Cloned GenBank record (default stdout)");
  clone->add_option("--manifest", manifest_path, "Clone manifest JSON");

  auto* declone = app.add_subcommand("declone", "Extract the insert from a cloned record");
  declone->add_option("--in", in, "Cloned GenBank or FASTA")->required();
  declone->add_option("--manifest", manifest_path, "Clone manifest JSON");
  declone->add_option("--enzymes", enzymes, "Enzyme pair, e.g. HindIII,BamHI");
  declone->add_option("--out", out_path, "Output FASTA (default stdout)");

  auto* gel = app.add_subcommand("gel", "Simulate an agarose gel");
  gel->add_option("--lanes", lanes, "LABEL:LEN[,LEN...] or a sequence file; repeatable")->required();
  gel->add_option("--format", format_name, "svg or text")->check(CLI::IsMember({"svg", "text"}));
  gel->add_option("--out", out_path, "Output file (default stdout)");
  gel->add_option("--lane-height", gel_params.lane_height_px, "Lane height in px");
  gel->add_option("--min-length", gel_params.min_length_bp, "Shortest resolvable fragment");
  gel->add_option("--max-length", gel_params.max_length_bp, "Longest resolvable fragment");
  gel->add_option("--columns", grid.columns, "Text grid width");
  gel->add_option("--rows", grid.rows, "Text grid height");

  auto* list_plasmids = app.add_subcommand("list-plasmids", "List available plasmids");

  auto* list_enzymes = app.add_subcommand("list-enzymes", "List enzymes, optionally those cutting a plasmid");
  list_enzymes->add_option("--plasmid", plasmid_id, "Plasmid id");
  std::string list_category = "all";
  list_enzymes->add_option("--category", list_category, "Enzyme category");

  auto* inspect = app.add_subcommand("inspect", "Constraint report for a sequence, or a plasmid summary");
  inspect->add_option("--in", in, "FASTA or GenBank file");
  inspect->add_option("--plasmid", plasmid_id, "Plasmid id");

  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP/JSON service");
  serve_cmd->add_option("--port", port, "TCP port");
  serve_cmd->add_option("--host", host, "Bind address");
  serve_cmd->add_option("--static", static_dir, "Serve a UI bundle from this directory");

  std::vector<const char*> argv{"bacforge"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  auto database = [&]() {
    if (!fs::is_directory(data_dir)) throw Error(ErrorCode::NotFound, "data directory not found: " + data_dir);
    return std::make_shared<const Database>(Database::load(data_dir));
  };

  try {
    if (*encode) {
      const auto mode = parse_payload_mode(mode_name);
      const auto payload = read_text_file(in);
      const auto seq = encode_message(payload, mode);
      const auto report = analyze_constraints(seq);
      emit(out_path, write_fasta(fs::path(in).filename().string(), seq), out);
      if (mode == PayloadMode::Raw) {
        if (out_path.empty() || out_path == "-") {
          err << "note: raw byte length " << payload.size() << " (no sidecar written to stdout)\n";
        } else {
          write_text_file(sidecar_path(out_path), write_length_sidecar(payload.size()));
        }
      }
      err << "encoded " << payload.size() << " bytes into " << seq.size() << " nt (GC " << std::fixed
          << std::setprecision(1) << 100.0 * report.gc_fraction << "%, max run " << report.max_homopolymer_run
          << ")\n";
      return kExitOk;
    }

    if (*decode) {
      const auto mode = parse_payload_mode(mode_name);
      const auto seq = read_fasta(read_text_file(in)).sequence;
      if (mode == PayloadMode::Raw && !byte_length) {
        const auto side = sidecar_path(in);
        if (!fs::exists(side)) throw Error(ErrorCode::BadInput, "raw mode needs --length or " + side.string());
        byte_length = read_length_sidecar(read_text_file(side));
      }
      const auto report = decode_message(seq, mode, byte_length);
      for (const auto& w : report.warnings) err << "warning: " << w << "\n";
      emit(out_path, report.recovered_text, out);
      return kExitOk;
    }

    if (*clone) {
      const auto db = database();
      const auto& plasmid = db->plasmid(plasmid_id);
      const auto insert = read_fasta(read_text_file(insert_path)).sequence;
      ClonedPlasmid cloned;
      if (!enzymes.empty()) {
        const auto [a, b] = split_pair(enzymes);
        cloned = clone_insert(plasmid, insert, pair_from_enzymes(plasmid, db->enzyme(a), db->enzyme(b), insert));
      } else {
        cloned = clone_insert(plasmid, insert, db->enzymes(), parse_category(category_name));
      }
      const auto& m = cloned.manifest;
      print_warnings(m.warnings, err);
      emit(out_path, serialize_plasmid(cloned_record(plasmid, cloned)), out);
      if (!manifest_path.empty()) write_text_file(manifest_path, to_json(m).dump(2) + "\n");
      err << "cloned " << m.insert_length_bp << " bp into " << m.plasmid_id << " between " << m.enzyme1 << "@"
          << m.site1 << " and " << m.enzyme2 << "@" << m.site2 << " (" << m.cloned_length_bp << " bp)\n";
      return kExitOk;
    }

    if (*declone) {
      const auto db = database();
      std::string e1, e2;
      if (!enzymes.empty()) {
        std::tie(e1, e2) = split_pair(enzymes);
      } else if (!manifest_path.empty()) {
        const auto m = manifest_from_json(json::parse(read_text_file(manifest_path)));
        e1 = m.enzyme1;
        e2 = m.enzyme2;
      } else {
        throw Error(ErrorCode::BadInput, "declone needs --manifest or --enzymes");
      }
      const auto seq = read_sequence_file(in).with_topology(Topology::Circular);
      const auto insert = declone_insert(seq, db->enzyme(e1), db->enzyme(e2));
      emit(out_path, write_fasta("decloned", insert), out);
      err << "decloned " << insert.size() << " bp between " << e1 << " and " << e2 << "\n";
      return kExitOk;
    }

    if (*gel) {
      std::vector<GelLane> parsed;
      for (const auto& spec : lanes) parsed.push_back(parse_lane_spec(spec));
      const auto image = build_gel(parsed, gel_params);
      emit(out_path, render_gel(image, parse_gel_format(format_name), grid), out);
      return kExitOk;
    }

    if (*list_plasmids) {
      const auto db = database();
      out << "id\tlength_bp\ttopology\tmax_insert_capacity_bp\tfeatures\n";
      for (const auto& p : db->plasmids()) {
        out << p.id << "\t" << p.length_bp() << "\t" << (p.sequence.circular() ? "circular" : "linear") << "\t"
            << p.max_insert_capacity_bp << "\t" << p.features.size() << "\n";
      }
      return kExitOk;
    }

    if (*list_enzymes) {
      const auto db = database();
      if (plasmid_id.empty()) {
        out << serialize_enzyme_table(db->enzymes());
        return kExitOk;
      }
      const auto result = classify_enzymes(db->plasmid(plasmid_id), db->enzymes(), parse_category(list_category));
      out << "name\trecognition\tend_type\tpositions\n";
      for (const auto& es : result) {
        out << es.enzyme.name << "\t" << es.enzyme.recognition << "\t" << to_string(es.enzyme.end_type()) << "\t";
        for (std::size_t i = 0; i < es.sites.size(); ++i) out << (i ? "," : "") << es.sites[i].position;
        out << "\n";
      }
      err << result.size() << " enzymes\n";
      return kExitOk;
    }

    if (*inspect) {
      if (!plasmid_id.empty()) {
        const auto db = database();
        out << plasmid_detail(db->plasmid(plasmid_id)).dump(2) << "\n";
        return kExitOk;
      }
      if (in.empty()) throw Error(ErrorCode::BadInput, "inspect needs --in or --plasmid");
      const auto seq = read_sequence_file(in);
      out << to_json(analyze_constraints(seq)).dump(2) << "\n";
      return kExitOk;
    }

    if (*serve_cmd) {
      serve(database(), {host, port, static_dir});
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return kExitDomain;
  } catch (const json::exception& e) {
    err << "error [PARSE_ERROR]: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace bacforge
