#include "bacforge/cloning.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "bacforge/error.hpp"
#include "bacforge/iupac.hpp"
#include "bacforge/kernels.hpp"

namespace bacforge {
namespace {

bool occurs_in(std::string_view bases, const RestrictionEnzyme& e) {
  const auto fwd = kernels::scan_pattern(bases, e.recognition, false, kernels::Exec::Parallel);
  if (!fwd.empty()) return true;
  const std::string rc = reverse_complement(bases);
  return !kernels::scan_pattern(rc, e.recognition, false, kernels::Exec::Parallel).empty();
}

CloningSite make_site(const PlasmidRecord& plasmid, const RestrictionEnzyme& e, const SiteHit& hit) {
  return {e, hit, circular_slice(plasmid.sequence.bases(), hit.position - 1, e.length())};
}

bool starts_with_site(std::string_view s, const RestrictionEnzyme& e) {
  return s.size() >= e.length() && iupac::matches_at(e.recognition, s.substr(0, e.length()));
}

bool ends_with_site(std::string_view s, const RestrictionEnzyme& e) {
  return s.size() >= e.length() && iupac::matches_at(e.recognition, s.substr(s.size() - e.length()));
}

std::size_t adapted_length(const DnaSequence& insert, const RestrictionEnzyme& a, const RestrictionEnzyme& b) {
  std::size_t len = insert.size();
  if (!starts_with_site(insert.bases(), a)) len += a.length();
  if (!ends_with_site(insert.bases(), b)) len += b.length();
  return len;
}

/// Every site of both enzymes other than the chosen two must fall inside the
/// segment that the payload replaces, otherwise the clone has extra copies.
bool extra_sites_removed(const EnzymeSites& a, const SiteHit& ha, const EnzymeSites& b, const SiteHit& hb) {
  const std::size_t lo = ha.position + a.enzyme.length();  // first replaced base
  const std::size_t hi = hb.position;                      // one past the last replaced base
  auto inside = [&](const SiteHit& h, std::size_t len) {
    return !h.wraps_origin && h.position >= lo && h.position + len <= hi;
  };
  for (const auto& h : a.sites) {
    if (h.position != ha.position && !inside(h, a.enzyme.length())) return false;
  }
  for (const auto& h : b.sites) {
    if (h.position != hb.position && !inside(h, b.enzyme.length())) return false;
  }
  return true;
}

}  // namespace

std::optional<Warning> capacity_check(const PlasmidRecord& plasmid, std::size_t insert_length) {
  if (insert_length == 0) throw Error(ErrorCode::BadInput, "insert length must be at least 1");
  if (insert_length <= plasmid.max_insert_capacity_bp) return std::nullopt;
  return Warning{"CAPACITY_WARNING", "insert of " + std::to_string(insert_length) + " bp exceeds the " +
                                         std::to_string(plasmid.max_insert_capacity_bp) + " bp capacity of " +
                                         plasmid.id};
}

EnzymePair select_enzyme_pair(const PlasmidRecord& plasmid, std::span<const RestrictionEnzyme> table,
                              EnzymeCategory category, const DnaSequence& insert) {
  std::vector<EnzymeSites> candidates;
  for (auto& es : classify_enzymes(plasmid, table, category)) {
    const auto& e = es.enzyme;
    if (e.end_type() != EndType::Sticky || e.methylation_sensitive) continue;
    if (occurs_in(insert.bases(), e)) continue;
    candidates.push_back(std::move(es));
  }
  if (candidates.size() < 2) throw Error(ErrorCode::NoSites, "no cloning sites available");

  struct Ref {
    std::size_t enzyme;
    std::size_t hit;
    std::size_t position;
  };
  std::vector<Ref> hits;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    for (std::size_t h = 0; h < candidates[k].sites.size(); ++h) {
      if (!candidates[k].sites[h].wraps_origin) hits.push_back({k, h, candidates[k].sites[h].position});
    }
  }
  std::sort(hits.begin(), hits.end(), [&](const Ref& a, const Ref& b) {
    if (a.position != b.position) return a.position < b.position;
    return candidates[a.enzyme].enzyme.name < candidates[b.enzyme].enzyme.name;
  });

  for (const Ref& first : hits) {
    const auto& e1 = candidates[first.enzyme];
    const auto& h1 = e1.sites[first.hit];
    const Ref* best_fit = nullptr;
    const Ref* widest = nullptr;
    for (const Ref& second : hits) {
      if (second.enzyme == first.enzyme) continue;
      if (second.position < first.position + e1.enzyme.length()) continue;
      const auto& e2 = candidates[second.enzyme];
      const auto& h2 = e2.sites[second.hit];
      if (!extra_sites_removed(e1, h1, e2, h2)) continue;
      const std::size_t gap = second.position - first.position;
      if (gap >= adapted_length(insert, e1.enzyme, e2.enzyme)) {
        if (!best_fit || gap < best_fit->position - first.position) best_fit = &second;
      }
      if (!widest || gap > widest->position - first.position) widest = &second;
    }
    const Ref* chosen = best_fit ? best_fit : widest;
    if (!chosen) continue;

    const auto& e2 = candidates[chosen->enzyme];
    EnzymePair pair{make_site(plasmid, e1.enzyme, h1), make_site(plasmid, e2.enzyme, e2.sites[chosen->hit]), {}};
    if (!best_fit) {
      pair.warnings.push_back(
          {"INSUFFICIENT_GAP", "no site pair spans the " + std::to_string(adapted_length(insert, e1.enzyme, e2.enzyme)) +
                                   " bp adapted insert; using the widest gap (" +
                                   std::to_string(chosen->position - first.position) + " bp)"});
    }
    return pair;
  }
  throw Error(ErrorCode::NoSites, "no cloning sites available");
}

EnzymePair pair_from_enzymes(const PlasmidRecord& plasmid, const RestrictionEnzyme& first,
                             const RestrictionEnzyme& second, const DnaSequence& insert) {
  const auto s1 = find_sites(plasmid, first);
  const auto s2 = find_sites(plasmid, second);
  if (s1.size() != 1 || s2.size() != 1) {
    throw Error(ErrorCode::AmbiguousSites, "ambiguous or missing cloning sites");
  }
  for (const auto* e : {&first, &second}) {
    if (occurs_in(insert.bases(), *e)) {
      throw Error(ErrorCode::NoSites, e->name + " cuts inside the insert");
    }
  }
  if (s1[0].wraps_origin || s2[0].wraps_origin || s2[0].position < s1[0].position + first.length()) {
    throw Error(ErrorCode::NoSites, "site of " + second.name + " must lie downstream of " + first.name);
  }
  EnzymePair pair{make_site(plasmid, first, s1[0]), make_site(plasmid, second, s2[0]), {}};
  const std::size_t need = adapted_length(insert, first, second);
  if (s2[0].position - s1[0].position < need) {
    pair.warnings.push_back({"INSUFFICIENT_GAP", "site gap is smaller than the " + std::to_string(need) +
                                                     " bp adapted insert"});
  }
  return pair;
}

AdaptedInsert adapt_insert(const DnaSequence& insert, const CloningSite& first, const CloningSite& second) {
  const std::string& s = insert.bases();
  AdaptedInsert out;
  out.leading_added = !starts_with_site(s, first.enzyme);
  out.trailing_added = !ends_with_site(s, second.enzyme);
  // Sites that overlap inside a too-short insert cannot both be reused.
  if (!out.leading_added && !out.trailing_added && s.size() < first.enzyme.length() + second.enzyme.length()) {
    out.trailing_added = true;
  }
  const std::size_t lead = out.leading_added ? 0 : first.enzyme.length();
  const std::size_t trail = out.trailing_added ? 0 : second.enzyme.length();
  out.payload = s.substr(lead, s.size() - lead - trail);
  out.adapted = (out.leading_added ? first.bases : s.substr(0, lead)) + out.payload +
                (out.trailing_added ? second.bases : s.substr(s.size() - trail));
  return out;
}

ClonedPlasmid clone_insert(const PlasmidRecord& plasmid, const DnaSequence& insert, const EnzymePair& pair) {
  if (insert.empty()) throw Error(ErrorCode::BadInput, "empty insert");
  const auto adapted = adapt_insert(insert, pair.first, pair.second);
  const auto& bases = plasmid.sequence.bases();
  const std::size_t keep_left = pair.first.hit.position - 1 + pair.first.enzyme.length();
  const std::size_t right_from = pair.second.hit.position - 1;
  if (right_from < keep_left || right_from >= bases.size()) {
    throw Error(ErrorCode::NoSites, "cloning sites overlap or are out of order");
  }

  std::string seq = bases.substr(0, keep_left) + adapted.payload + bases.substr(right_from);

  ClonedPlasmid out;
  out.sequence = DnaSequence(std::move(seq), plasmid.sequence.topology());
  out.base_record = plasmid.id;
  out.enzyme1 = pair.first.enzyme;
  out.enzyme2 = pair.second.enzyme;

  auto& m = out.manifest;
  m.plasmid_id = plasmid.id;
  m.enzyme1 = pair.first.enzyme.name;
  m.site1 = pair.first.hit.position;
  m.enzyme2 = pair.second.enzyme.name;
  m.site2 = pair.second.hit.position;
  m.insert_start = keep_left + 1;
  m.insert_end = keep_left + adapted.payload.size();
  m.leading_adapter = adapted.leading_added;
  m.trailing_adapter = adapted.trailing_added;
  m.insert_length_bp = adapted.payload.size();
  m.cloned_length_bp = out.sequence.size();
  m.warnings = pair.warnings;
  if (auto w = capacity_check(plasmid, insert.size())) m.warnings.push_back(*w);

  if (find_sites(out.sequence, out.enzyme1).size() != 1 || find_sites(out.sequence, out.enzyme2).size() != 1) {
    throw Error(ErrorCode::AmbiguousSites, "cloning would leave ambiguous or missing cloning sites");
  }
  return out;
}

ClonedPlasmid clone_insert(const PlasmidRecord& plasmid, const DnaSequence& insert,
                           std::span<const RestrictionEnzyme> table, EnzymeCategory category) {
  if (insert.empty()) throw Error(ErrorCode::BadInput, "empty insert");
  return clone_insert(plasmid, insert, select_enzyme_pair(plasmid, table, category, insert));
}

DnaSequence declone_insert(const DnaSequence& cloned, const RestrictionEnzyme& first,
                           const RestrictionEnzyme& second) {
  const auto s1 = find_sites(cloned, first);
  const auto s2 = find_sites(cloned, second);
  if (s1.size() != 1 || s2.size() != 1) {
    throw Error(ErrorCode::AmbiguousSites, "ambiguous or missing cloning sites");
  }
  const std::size_t n = cloned.size();
  const std::size_t from = (s1[0].position - 1 + first.length()) % n;
  const std::size_t to = s2[0].position - 1;
  const std::size_t len = cloned.circular() ? (to + n - from) % n : (to >= from ? to - from : n);
  if (!cloned.circular() && to < from) {
    throw Error(ErrorCode::AmbiguousSites, "ambiguous or missing cloning sites");
  }
  return DnaSequence(circular_slice(cloned.bases(), from, len));
}

DnaSequence declone_insert(const ClonedPlasmid& cloned) {
  return declone_insert(cloned.sequence, cloned.enzyme1, cloned.enzyme2);
}

PlasmidRecord cloned_record(const PlasmidRecord& base, const ClonedPlasmid& cloned) {
  const auto& m = cloned.manifest;
  PlasmidRecord rec;
  rec.id = base.id + "_clone";
  rec.definition = base.id + " carrying a " + std::to_string(m.insert_length_bp) + " bp insert between " + m.enzyme1 +
                   " and " + m.enzyme2;
  rec.sequence = cloned.sequence;
  rec.max_insert_capacity_bp = base.max_insert_capacity_bp;

  const std::size_t first_replaced = m.insert_start;                 // plasmid coordinates too
  const std::size_t resume = m.site2;                                // first kept base after the gap
  const std::ptrdiff_t shift = static_cast<std::ptrdiff_t>(m.insert_end + 1) - static_cast<std::ptrdiff_t>(resume);
  auto map_pos = [&](std::size_t p) -> std::optional<std::size_t> {
    if (p < first_replaced) return p;
    if (p >= resume) return static_cast<std::size_t>(static_cast<std::ptrdiff_t>(p) + shift);
    return std::nullopt;
  };
  for (const auto& f : base.features) {
    auto s = map_pos(f.start);
    auto e = map_pos(f.end);
    if (!s || !e) continue;
    // A non-wrapping feature that straddles the gap lost its middle.
    if (!f.wraps() && f.start < first_replaced && f.end >= resume) continue;
    Feature g = f;
    g.start = *s;
    g.end = *e;
    rec.features.push_back(g);
  }
  if (m.insert_length_bp > 0) {
    rec.features.push_back({FeatureKind::Misc, "ENCODED_DATA", m.insert_start, m.insert_end, Strand::Forward});
  }
  return rec;
}

}  // namespace bacforge
