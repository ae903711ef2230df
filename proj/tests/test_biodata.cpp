#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bacforge/biodata.hpp"
#include "bacforge/error.hpp"
#include "bacforge/iupac.hpp"
#include "oracles.hpp"

using namespace bacforge;
namespace fs = std::filesystem;

namespace {

const fs::path kData = BACFORGE_TEST_DATA_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const Database& db() {
  static const Database d = Database::load(kData);
  return d;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::BadInput;
}

std::vector<std::size_t> positions(const std::vector<SiteHit>& hits) {
  std::vector<std::size_t> out;
  for (const auto& h : hits) out.push_back(h.position);
  return out;
}

const RestrictionEnzyme kHindIII{"HindIII", "AAGCTT", 1, 5, false};

constexpr const char* kMinimal = R"(LOCUS       toy                       24 bp    DNA     circular
DEFINITION  Toy record
            spanning two lines.
COMMENT     max_insert_capacity_bp: 777
FEATURES             Location/Qualifiers
     CDS             3..11
                     /label="TcR"
     rep_origin      complement(13..20)
                     /note="ignored"
                     /gene="ori"
     misc_feature    join(22..24,1..2)
                     /label="wrap"
ORIGIN
        1 acgtacgtac gtacgtacgt acgt
//
)";

}  // namespace

TEST_CASE("IUPAC masks") {
  const std::string codes = "ACGTRYSWKMBDHVN";
  for (char c : codes) CHECK(static_cast<int>(iupac::mask(c)) == oracle::iupac_bits(c));
  CHECK(iupac::mask('X') == 0);
  CHECK(iupac::is_pattern("GAATTC"));
  CHECK_FALSE(iupac::is_pattern("GAAXTC"));
  CHECK(iupac::is_palindromic("GAATTC"));
  CHECK(iupac::is_palindromic("RCCGGY"));
  CHECK_FALSE(iupac::is_palindromic("GCCGGT"));
}

TEST_CASE("GenBank subset parsing") {
  const auto rec = parse_plasmid(kMinimal);
  CHECK(rec.id == "toy");
  CHECK(rec.definition == "Toy record spanning two lines.");
  CHECK(rec.sequence.circular());
  CHECK(rec.length_bp() == 24);
  CHECK(rec.max_insert_capacity_bp == 777);
  REQUIRE(rec.features.size() == 3);
  CHECK(rec.features[0] == Feature{FeatureKind::Cds, "TcR", 3, 11, Strand::Forward});
  CHECK(rec.features[1] == Feature{FeatureKind::RepOrigin, "ori", 13, 20, Strand::Reverse});
  CHECK(rec.features[2].wraps());
  CHECK(rec.features[2].start == 22);
  CHECK(rec.features[2].end == 2);

  SUBCASE("round trip") {
    CHECK(parse_plasmid(serialize_plasmid(rec)) == rec);
  }
}

TEST_CASE("GenBank errors name the line") {
  auto message_of = [](const std::string& text) {
    try {
      parse_plasmid(text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message_of("ORIGIN\n        1 acgt\n//\n").find("missing LOCUS") != std::string::npos);
  CHECK(message_of("LOCUS x 4 bp DNA linear\n").find("missing ORIGIN") != std::string::npos);
  CHECK(message_of("LOCUS x 4 bp DNA linear\nORIGIN\n        1 acgx\n//\n").find("line 3") != std::string::npos);
  CHECK(message_of("LOCUS x 5 bp DNA linear\nORIGIN\n        1 acgt\n//\n").find("declares 5 bp") != std::string::npos);
  CHECK(message_of("LOCUS x 4 bp DNA linear\nFEATURES  Location/Qualifiers\n     CDS             2..9\nORIGIN\n"
                   "        1 acgt\n//\n")
            .find("outside") != std::string::npos);
}

TEST_CASE("shipped plasmids round trip through the serializer") {
  for (const auto& entry : fs::directory_iterator(kData / "plasmids")) {
    if (entry.path().extension() != ".gb") continue;
    CAPTURE(entry.path().string());
    const auto rec = parse_plasmid(slurp(entry.path()));
    CHECK(parse_plasmid(serialize_plasmid(rec)) == rec);
  }
}

TEST_CASE("database contents") {
  const auto& p = db().plasmid("pBR322");
  CHECK(p.length_bp() == 4361);
  CHECK(p.sequence.circular());
  CHECK(p.max_insert_capacity_bp == 5000);
  bool tet = false;
  for (const auto& f : p.features) tet |= (f.kind == FeatureKind::Cds && f.start == 86 && f.end == 1276);
  CHECK(tet);
  CHECK(db().plasmid("pUC19").length_bp() == 2686);
  CHECK(db().plasmid("pJAZZ-OK").max_insert_capacity_bp == 10000);
  CHECK_FALSE(db().plasmid("pJAZZ-OC").sequence.circular());
  CHECK(code_of([] { db().plasmid("nope"); }) == ErrorCode::NotFound);
  CHECK(code_of([] { db().enzyme("nope"); }) == ErrorCode::NotFound);
  CHECK(db().enzyme("BamHI").recognition == "GGATCC");
  CHECK(code_of([] { Database::load(kData / "missing"); }) == ErrorCode::NotFound);
}

TEST_CASE("enzyme table parsing") {
  const auto t = load_enzyme_table(
      "name,recognition,cut_top,cut_bottom,methylation_sensitive\n"
      "# comment\n"
      "EcoRI,GAATTC,1,5,false\n"
      "SmaI,CCCGGG,3,3\n"
      "ClaI,ATCGAT,2,4,true\n");
  REQUIRE(t.size() == 3);
  CHECK(t[0] == RestrictionEnzyme{"EcoRI", "GAATTC", 1, 5, false});
  CHECK(t[1].end_type() == EndType::Blunt);
  CHECK(t[2].methylation_sensitive);
  CHECK(load_enzyme_table(serialize_enzyme_table(t)) == t);

  const std::string header = "name,recognition,cut_top,cut_bottom\n";
  CHECK(code_of([] { load_enzyme_table("foo,bar\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { load_enzyme_table(header + "X,GAXTTC,1,5\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { load_enzyme_table(header + "X,GAATTC,1,9\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { load_enzyme_table(header + "X,GAATTC,1\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { load_enzyme_table(header + "X,GAT,1,2\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { load_enzyme_table(header + "X,GAATTC,1,5\nX,GAATTC,1,5\n"); }) == ErrorCode::ParseError);

  const auto shipped = load_enzyme_table(slurp(kData / "enzymes.csv"));
  CHECK(shipped.size() == db().enzymes().size());
  CHECK(load_enzyme_table(serialize_enzyme_table(shipped)) == shipped);
}

TEST_CASE("site finding") {
  CHECK(positions(find_sites(db().plasmid("pBR322"), kHindIII)) == std::vector<std::size_t>{29});
  CHECK(positions(find_sites(db().plasmid("pBR322"), db().enzyme("BamHI"))) == std::vector<std::size_t>{375});

  SUBCASE("origin wrap") {
    const DnaSequence seq("CTTGGGGGGAAG", Topology::Circular);
    const auto hits = find_sites(seq, kHindIII);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].position == 10);
    CHECK(hits[0].wraps_origin);
    CHECK(find_sites(seq.with_topology(Topology::Linear), kHindIII).empty());
  }
  SUBCASE("EcoRI spans the pBR322 origin") {
    const auto hits = find_sites(db().plasmid("pBR322"), db().enzyme("EcoRI"));
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].position == 4359);
    CHECK(hits[0].wraps_origin);
  }
  SUBCASE("random circular sequences against the doubled-string oracle") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 500; ++trial) {
      const std::size_t len = 20 + rng() % 300;
      const std::string pattern = oracle::random_pattern(rng, 4 + rng() % 5);
      std::string bases = oracle::random_dna(rng, len);
      // Plant a copy across the origin half the time.
      if (trial % 2 == 0) {
        std::string site;
        for (char c : pattern) {
          for (char b : std::string("ACGT")) {
            if (oracle::iupac_bits(c) & oracle::iupac_bits(b)) {
              site.push_back(b);
              break;
            }
          }
        }
        for (std::size_t k = 0; k < site.size(); ++k) bases[(len - 2 + k) % len] = site[k];
      }
      const DnaSequence seq(bases, Topology::Circular);
      const RestrictionEnzyme e{"X", pattern, 1, pattern.size() - 1, false};
      const auto hits = find_sites(seq, e);
      CHECK(positions(hits) == oracle::doubled_scan(bases, pattern));
      for (const auto& h : hits) CHECK(h.wraps_origin == (h.position + pattern.size() - 1 > len));
    }
  }
}

TEST_CASE("enzyme categories") {
  const RestrictionEnzyme four{"F", "GATC", 0, 4, false};
  const RestrictionEnzyme six{"S", "GAATTC", 1, 5, false};
  for (std::size_t n = 0; n < 5; ++n) {
    for (const auto* e : {&four, &six}) {
      const bool all = in_category(*e, n, EnzymeCategory::All);
      CHECK(all == (n > 0));
      CHECK(in_category(*e, n, EnzymeCategory::SixPlus) == (all && e->length() >= 6));
      CHECK(in_category(*e, n, EnzymeCategory::Unique) == (n == 1));
      CHECK(in_category(*e, n, EnzymeCategory::UniqueSixPlus) ==
            (in_category(*e, n, EnzymeCategory::Unique) && in_category(*e, n, EnzymeCategory::SixPlus)));
      CHECK(in_category(*e, n, EnzymeCategory::UniqueAndDual) == (n == 1 || n == 2));
    }
  }
  CHECK(parse_category("unique_six_plus") == EnzymeCategory::UniqueSixPlus);
  CHECK(code_of([] { parse_category("rare"); }) == ErrorCode::BadInput);

  SUBCASE("toy plasmid with two HindIII sites") {
    PlasmidRecord toy;
    toy.id = "toy";
    toy.sequence = DnaSequence("AAGCTTCCCCAAGCTTGGGGGAATTCGG", Topology::Circular);
    const std::vector<RestrictionEnzyme> table{kHindIII, {"EcoRI", "GAATTC", 1, 5, false}};
    CHECK(classify_enzymes(toy, table, EnzymeCategory::All).size() == 2);
    const auto unique = classify_enzymes(toy, table, EnzymeCategory::Unique);
    REQUIRE(unique.size() == 1);
    CHECK(unique[0].enzyme.name == "EcoRI");
    const auto dual = classify_enzymes(toy, table, EnzymeCategory::UniqueAndDual);
    REQUIRE(dual.size() == 2);
    CHECK(positions(dual[0].sites) == std::vector<std::size_t>{1, 11});
  }
  SUBCASE("pBR322 unique cutters") {
    const auto& p = db().plasmid("pBR322");
    const auto unique = classify_enzymes(p, db().enzymes(), EnzymeCategory::Unique);
    CHECK(unique.size() == 52);
    std::size_t oracle_count = 0;
    for (const auto& e : db().enzymes()) oracle_count += oracle::doubled_scan(p.sequence.bases(), e.recognition).size() == 1;
    CHECK(oracle_count == 52);
  }
}
