#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bacforge/error.hpp"
#include "bacforge/io.hpp"
#include "oracles.hpp"

using namespace bacforge;

TEST_CASE("FASTA round trip") {
  std::mt19937_64 rng(6);
  for (std::size_t len : {1u, 69u, 70u, 71u, 500u}) {
    const DnaSequence seq(oracle::random_dna(rng, len));
    const auto text = write_fasta("x y", seq);
    const auto rec = read_fasta(text);
    CHECK(rec.id == "x y");
    CHECK(rec.sequence == seq);
    for (std::size_t p = 0, nl; (nl = text.find('\n', p)) != std::string::npos; p = nl + 1) {
      CHECK(nl - p <= kFastaLineWidth);
    }
  }
  CHECK(read_fasta("acgt\r\nACGT\n").sequence.bases() == "ACGTACGT");
  CHECK_THROWS_AS(read_fasta(">a\nAC\n>b\nGT\n"), Error);
  CHECK_THROWS_AS(read_fasta(">a\n"), Error);
  CHECK_THROWS_AS(read_fasta(">a\nACXT\n"), Error);
}

TEST_CASE("length sidecar") {
  CHECK(read_length_sidecar(write_length_sidecar(14)) == 14);
  CHECK(json::parse(write_length_sidecar(3)) == json{{"mode", "raw"}, {"byte_length", 3}});
  CHECK(sidecar_path("out/x.fasta").string() == "out/x.fasta.meta.json");
  CHECK_THROWS_AS(read_length_sidecar("{}"), Error);
  CHECK_THROWS_AS(read_length_sidecar("not json"), Error);
}

TEST_CASE("manifest JSON round trip") {
  CloneManifest m{"pBR322", "HindIII", 29, "BamHI", 375, 35, 354, true, true, 320, 4341,
                  {{"CAPACITY_WARNING", "too big"}}};
  const auto j = to_json(m);
  CHECK(j.at("insert_span").at("start") == 35);
  CHECK(j.at("adapters_added").at("trailing") == true);
  CHECK(manifest_from_json(j) == m);
  CHECK(manifest_from_json(json::parse(j.dump())) == m);
  CHECK_THROWS_AS(manifest_from_json(json{{"plasmid_id", "x"}}), Error);
}

TEST_CASE("decode report JSON carries hex") {
  DecodeReport r;
  r.recovered_text = std::string("\x00\xff", 2);
  r.recovered_chunk_indices = {0};
  const auto j = to_json(r);
  CHECK(j.at("recovered_hex") == "00ff");
  CHECK(j.at("recovered_chunk_indices") == json::array({0}));
}

TEST_CASE("gel parameters from JSON") {
  const auto p = gel_params_from_json(json{{"lane_height_px", 300}, {"ladder", {100, 1000}}});
  CHECK(p.lane_height_px == 300);
  CHECK(p.ladder == std::vector<std::size_t>{100, 1000});
  CHECK(p.max_length_bp == 12000);
  CHECK_THROWS_AS(gel_params_from_json(json{{"lane_height_px", "tall"}}), Error);
  CHECK_THROWS_AS(gel_params_from_json(json{{"min_length_bp", 0}}), Error);
}
