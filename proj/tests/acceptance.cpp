// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Tolerances are fixed here and printed with each result.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "bacforge/biodata.hpp"
#include "bacforge/cloning.hpp"
#include "bacforge/codec.hpp"
#include "bacforge/error.hpp"
#include "bacforge/gel.hpp"
#include "oracles.hpp"

using namespace bacforge;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr const char* kExample = "Start-up India.Stand-up India.";
constexpr double kEncodeLimitMs = 1.0;
constexpr double kConstraintLimitS = 5.0;
constexpr double kEndToEndLimitS = 30.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(const char* name, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("%s  %-22s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  std::fflush(stdout);
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

fs::path data_dir() {
  if (const char* env = std::getenv("BACFORGE_DATA_DIR"); env && *env) return env;
  return BACFORGE_TEST_DATA_DIR;
}

}  // namespace

int main() {
  const Database db = Database::load(data_dir());
  const auto& pbr = db.plasmid("pBR322");

  report("encode-length-320", [] {
    const auto seq = encode_message(kExample, PayloadMode::Text);
    std::vector<double> ms;
    for (int i = 0; i < 101; ++i) {
      const auto t0 = Clock::now();
      const auto s = encode_message(kExample, PayloadMode::Text);
      ms.push_back(seconds_since(t0) * 1e3);
      if (s.size() != seq.size()) return Outcome{false, "unstable length"};
    }
    std::nth_element(ms.begin(), ms.begin() + 50, ms.end());
    const double median = ms[50];
    return Outcome{seq.size() == 320 && median < kEncodeLimitMs,
                   fmt("%zu nt (expect 320), median %.4f ms over 101 runs (limit %.1f ms)", seq.size(), median,
                       kEncodeLimitMs)};
  });

  report("sites-text-example", [&] {
    const auto insert = encode_message(kExample, PayloadMode::Text);
    const auto pair = select_enzyme_pair(pbr, db.enzymes(), EnzymeCategory::Unique, insert);
    const bool ok = pair.first.enzyme.name == "HindIII" && pair.first.hit.position == 29 &&
                    pair.second.enzyme.name == "BamHI" && pair.second.hit.position == 375;
    return Outcome{ok, fmt("%s@%zu + %s@%zu (expect HindIII@29 + BamHI@375)", pair.first.enzyme.name.c_str(),
                           pair.first.hit.position, pair.second.enzyme.name.c_str(), pair.second.hit.position)};
  });

  report("sites-raw-example", [&] {
    const DnaSequence insert("AATTTTTTAAGGCC");
    const auto pair = select_enzyme_pair(pbr, db.enzymes(), EnzymeCategory::Unique, insert);
    const bool ok = pair.first.enzyme.name == "HindIII" && pair.first.hit.position == 29 &&
                    pair.second.enzyme.name == "BsrFI" && pair.second.hit.position == 160;
    return Outcome{ok, fmt("%s@%zu + %s@%zu (expect HindIII@29 + BsrFI@160)", pair.first.enzyme.name.c_str(),
                           pair.first.hit.position, pair.second.enzyme.name.c_str(), pair.second.hit.position)};
  });

  report("unique-cutter-count", [&] {
    const auto n = classify_enzymes(pbr, db.enzymes(), EnzymeCategory::Unique).size();
    return Outcome{n == 52, fmt("%zu unique cutters in pBR322 (expect 52)", n)};
  });

  report("constraint-suite", [] {
    std::mt19937_64 rng(1001);
    std::size_t violations = 0;
    const auto t0 = Clock::now();
    for (int i = 0; i < 1000; ++i) {
      const auto payload = oracle::random_bytes(rng, 1 + rng() % 2000);
      const auto r = analyze_constraints(encode_message(payload, PayloadMode::Raw));
      if (r.max_homopolymer_run != 1 || r.length % 2 != 0 || 2 * r.gc_count != r.length) ++violations;
    }
    const double s = seconds_since(t0);
    return Outcome{violations == 0 && s < kConstraintLimitS,
                   fmt("1000 payloads of 1-2000 B: %zu violations, %.3f s (limit %.0f s)", violations, s,
                       kConstraintLimitS)};
  });

  report("end-to-end-identity", [&] {
    std::mt19937_64 rng(2002);
    std::size_t ok = 0, total = 0;
    std::string first_failure;
    const auto t0 = Clock::now();
    for (const char* id : {"pBR322", "pUC18", "pUC19"}) {
      const auto& p = db.plasmid(id);
      for (int i = 0; i < 200; ++i) {
        ++total;
        // Alternate text and raw payloads so both trimming rules are exercised.
        const bool text = i % 2 == 0;
        const std::size_t len = 1 + rng() % 400;
        const auto payload = text ? oracle::random_text(rng, len) : oracle::random_bytes(rng, len);
        const auto mode = text ? PayloadMode::Text : PayloadMode::Raw;
        try {
          const auto cloned = clone_insert(p, encode_message(payload, mode), db.enzymes(), EnzymeCategory::Unique);
          const auto back = decode_message(declone_insert(cloned), mode, payload.size()).recovered_text;
          if (back == payload) {
            ++ok;
          } else if (first_failure.empty()) {
            first_failure = std::string(id) + " payload " + std::to_string(i) + " mismatched";
          }
        } catch (const Error& e) {
          if (first_failure.empty()) first_failure = std::string(id) + " payload " + std::to_string(i) + ": " + e.what();
        }
      }
    }
    const double s = seconds_since(t0);
    std::string detail = fmt("%zu/%zu identical, %.3f s (limit %.0f s)", ok, total, s, kEndToEndLimitS);
    if (!first_failure.empty()) detail += "; first failure: " + first_failure;
    return Outcome{ok == total && s < kEndToEndLimitS, detail};
  });

  report("xor-oracle-equivalence", [] {
    std::mt19937_64 rng(3003);
    std::size_t agree = 0, cases = 0;
    auto check = [&](std::size_t n, const std::vector<bool>& got) {
      std::vector<SourceChunk> src;
      for (std::size_t i = 0; i < n; ++i) src.push_back({static_cast<std::uint32_t>(rng()), i});
      const auto enc = xor_encode(src);
      std::vector<ReceivedChunk> rx;
      for (std::size_t i = 0; i < n; ++i) rx.push_back({i, got[i] ? std::optional<FramedChunk>(enc[i]) : std::nullopt});
      const auto res = xor_decode(rx, n);
      bool same = res.report.recovered_chunk_indices == oracle::solvable(n, got);
      for (const auto& s : res.sources) same = same && s.payload == src[s.index].payload;
      ++cases;
      agree += same;
    };
    for (std::size_t n = 1; n <= 6; ++n) {
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<bool> got(n);
        for (std::size_t i = 0; i < n; ++i) got[i] = (mask >> i) & 1u;
        check(n, got);
      }
    }
    const std::size_t exhaustive = cases;
    for (int k = 0; k < 10000; ++k) {
      const std::size_t n = 1 + rng() % 64;
      const double keep = std::uniform_real_distribution<double>(0.3, 1.0)(rng);
      std::vector<bool> got(n);
      for (std::size_t i = 0; i < n; ++i) got[i] = std::uniform_real_distribution<double>(0, 1)(rng) < keep;
      check(n, got);
    }
    return Outcome{agree == cases, fmt("%zu/%zu agree (%zu exhaustive n<=6, 10000 random n<=64)", agree, cases,
                                       exhaustive)};
  });

  report("circular-scan-oracle", [] {
    std::mt19937_64 rng(4004);
    std::size_t agree = 0;
    for (int k = 0; k < 500; ++k) {
      const std::size_t len = 10 + rng() % 500;
      auto bases = oracle::random_dna(rng, len);
      const auto pattern = oracle::random_pattern(rng, 4 + rng() % 5);
      if (k % 2 == 0) {
        // Force a candidate across the origin by copying a matching instance there.
        std::size_t off = rng() % pattern.size();
        for (std::size_t j = 0; j < pattern.size(); ++j) {
          const char code = pattern[j];
          for (char b : std::string("ACGT")) {
            if (oracle::iupac_bits(code) & oracle::iupac_bits(b)) {
              bases[(len - off + j) % len] = b;
              break;
            }
          }
        }
      }
      const DnaSequence seq(bases, Topology::Circular);
      const RestrictionEnzyme e{"X", pattern, 1, pattern.size() - 1, false};
      std::vector<std::size_t> got;
      bool wrap_ok = true;
      for (const auto& h : find_sites(seq, e)) {
        got.push_back(h.position);
        wrap_ok = wrap_ok && h.wraps_origin == (h.position + pattern.size() - 1 > len);
      }
      agree += (got == oracle::doubled_scan(bases, pattern)) && wrap_ok;
    }
    return Outcome{agree == 500, fmt("%zu/500 agree with the doubled-string scan", agree)};
  });

  report("capacity-warning", [&] {
    const auto& jazz = db.plasmid("pJAZZ-OK");
    // 1200 bytes encode to exactly 12,000 nt.
    std::mt19937_64 rng(5005);
    const auto big = encode_message(oracle::random_bytes(rng, 1200), PayloadMode::Raw);
    const DnaSequence small(big.bases().substr(0, 9999));
    auto warns = [&](const DnaSequence& insert) {
      const auto cloned = clone_insert(jazz, insert, db.enzymes(), EnzymeCategory::Unique);
      for (const auto& w : cloned.manifest.warnings) {
        if (w.code == "CAPACITY_WARNING") return true;
      }
      return false;
    };
    const bool w12000 = warns(big);
    const bool w9999 = warns(small);
    return Outcome{big.size() == 12000 && w12000 && !w9999,
                   fmt("capacity %zu bp: %zu nt warns=%s, 9999 nt warns=%s", jazz.max_insert_capacity_bp, big.size(),
                       w12000 ? "yes" : "no", w9999 ? "yes" : "no")};
  });

  report("gel-equality-monotone", [&] {
    const auto insert = encode_message(kExample, PayloadMode::Text);
    const auto cloned = clone_insert(pbr, insert, db.enzymes(), EnzymeCategory::Unique);
    const auto decloned = declone_insert(cloned);
    const GelParams params;
    const auto gel = build_gel({{"encoded", {insert.size()}}, {"decloned", {decloned.size()}}}, params);
    const double d_enc = gel.lanes[1].bands[0].distance_px;
    const double d_dec = gel.lanes[2].bands[0].distance_px;

    std::mt19937_64 rng(6006);
    std::uniform_int_distribution<std::size_t> len(params.min_length_bp, params.max_length_bp);
    std::size_t monotone = 0;
    const int pairs = 10000;
    for (int k = 0; k < pairs; ++k) {
      std::size_t a = len(rng), b = len(rng);
      while (a == b) b = len(rng);
      if (a > b) std::swap(a, b);
      monotone += migration_distance(a, params) > migration_distance(b, params);
    }
    return Outcome{d_enc == d_dec && monotone == static_cast<std::size_t>(pairs),
                   fmt("encoded %.3f px vs decloned %.3f px; strictly monotone on %zu/%d random pairs", d_enc, d_dec,
                       monotone, pairs)};
  });

  report("parser-round-trip", [&] {
    std::size_t ok = 0, total = 0;
    for (const auto& entry : fs::directory_iterator(data_dir() / "plasmids")) {
      if (entry.path().extension() != ".gb") continue;
      ++total;
      std::ifstream in(entry.path());
      std::stringstream ss;
      ss << in.rdbuf();
      const auto rec = parse_plasmid(ss.str());
      const auto text = serialize_plasmid(rec);
      ok += parse_plasmid(text) == rec && serialize_plasmid(parse_plasmid(text)) == text;
    }
    return Outcome{total > 0 && ok == total, fmt("%zu/%zu shipped records survive parse/serialize", ok, total)};
  });

  std::printf("%d failing\n", failures);
  return failures == 0 ? 0 : 1;
}
