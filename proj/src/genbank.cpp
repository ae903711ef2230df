// GenBank subset: LOCUS, DEFINITION, COMMENT, FEATURES (gene, CDS,
// rep_origin, promoter; everything else folds into misc) and ORIGIN.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <iomanip>
#include <optional>
#include <sstream>

#include "bacforge/biodata.hpp"
#include "bacforge/error.hpp"

namespace bacforge {
namespace {

constexpr std::string_view kCapacityTag = "max_insert_capacity_bp:";

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<std::size_t> to_size(std::string_view s) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::optional<FeatureKind> kind_from_key(std::string_view key) {
  if (key == "gene") return FeatureKind::Gene;
  if (key == "CDS") return FeatureKind::Cds;
  if (key == "rep_origin") return FeatureKind::RepOrigin;
  if (key == "promoter") return FeatureKind::Promoter;
  return std::nullopt;
}

std::string_view key_for(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::Gene: return "gene";
    case FeatureKind::Cds: return "CDS";
    case FeatureKind::RepOrigin: return "rep_origin";
    case FeatureKind::Promoter: return "promoter";
    case FeatureKind::Misc: return "misc_feature";
  }
  return "misc_feature";
}

struct Range {
  std::size_t start;
  std::size_t end;
};

Range parse_range(std::string_view s, std::size_t line) {
  std::string cleaned;
  for (char c : s) {
    if (c != '<' && c != '>') cleaned.push_back(c);
  }
  const auto dots = cleaned.find("..");
  if (dots == std::string::npos) {
    auto v = to_size(cleaned);
    if (!v) fail(line, "bad location '" + std::string(s) + "'");
    return {*v, *v};
  }
  auto a = to_size(std::string_view(cleaned).substr(0, dots));
  auto b = to_size(std::string_view(cleaned).substr(dots + 2));
  if (!a || !b) fail(line, "bad location '" + std::string(s) + "'");
  return {*a, *b};
}

bool strip_call(std::string_view& s, std::string_view name) {
  if (s.size() > name.size() + 1 && s.substr(0, name.size()) == name && s[name.size()] == '(' &&
      s.back() == ')') {
    s = s.substr(name.size() + 1, s.size() - name.size() - 2);
    return true;
  }
  return false;
}

struct PendingFeature {
  std::size_t line = 0;
  std::string key;
  std::string location;
  std::string label;
  std::string gene;
  std::string* open_value = nullptr;  // quoted qualifier still being read

  std::string* slot(std::string_view name) {
    return name == "label" ? &label : name == "gene" ? &gene : nullptr;
  }
};

Feature finish_feature(const PendingFeature& p) {
  Feature f;
  std::string_view loc = p.location;
  if (strip_call(loc, "complement")) f.strand = Strand::Reverse;
  if (strip_call(loc, "join")) {
    const auto comma = loc.find(',');
    if (comma == std::string_view::npos || loc.find(',', comma + 1) != std::string_view::npos) {
      fail(p.line, "only two-part origin-wrapping joins are supported");
    }
    const Range left = parse_range(trim(loc.substr(0, comma)), p.line);
    const Range right = parse_range(trim(loc.substr(comma + 1)), p.line);
    if (right.start != 1) fail(p.line, "join must wrap the origin (second part starts at 1)");
    f.start = left.start;
    f.end = right.end;
    // left.end is checked against the sequence length once ORIGIN is read.
    if (left.end < left.start) fail(p.line, "bad join span");
  } else {
    const Range r = parse_range(trim(loc), p.line);
    if (r.start > r.end) fail(p.line, "span start after end outside a join");
    f.start = r.start;
    f.end = r.end;
  }

  const std::string& name = !p.label.empty() ? p.label : p.gene;
  if (auto kind = kind_from_key(p.key)) {
    f.kind = *kind;
    f.label = name;
  } else {
    f.kind = FeatureKind::Misc;
    f.label = (p.key == "misc_feature") ? name : p.key + ":" + name;
  }
  return f;
}

std::string format_location(const Feature& f, std::size_t length) {
  std::string core = f.wraps() ? "join(" + std::to_string(f.start) + ".." + std::to_string(length) +
                                     ",1.." + std::to_string(f.end) + ")"
                               : std::to_string(f.start) + ".." + std::to_string(f.end);
  return f.strand == Strand::Reverse ? "complement(" + core + ")" : core;
}

}  // namespace

std::string_view to_string(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::Gene: return "gene";
    case FeatureKind::Cds: return "CDS";
    case FeatureKind::RepOrigin: return "rep_origin";
    case FeatureKind::Promoter: return "promoter";
    case FeatureKind::Misc: return "misc";
  }
  return "misc";
}

PlasmidRecord parse_plasmid(std::string_view text) {
  const auto lines = split_lines(text);
  PlasmidRecord rec;
  std::optional<std::size_t> declared_length;
  Topology topology = Topology::Circular;
  bool have_locus = false;
  bool have_origin = false;
  bool in_features = false;
  bool in_origin = false;
  std::string bases;
  std::vector<PendingFeature> pending;
  std::string* continuation = nullptr;  // DEFINITION continuation lines

  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::size_t lineno = li + 1;
    std::string_view line = lines[li];
    if (trim(line).empty()) continue;

    if (in_origin) {
      if (trim(line) == "//") {
        in_origin = false;
        continue;
      }
      for (char c : line) {
        if (std::isspace(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c))) continue;
        const char up = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        if (!is_base(up)) fail(lineno, "invalid base '" + std::string(1, c) + "' in ORIGIN");
        bases.push_back(up);
      }
      continue;
    }

    if (!std::isspace(static_cast<unsigned char>(line.front()))) {
      in_features = false;
      continuation = nullptr;
      std::istringstream words{std::string(line)};
      std::string keyword;
      words >> keyword;
      if (keyword == "LOCUS") {
        if (!(words >> rec.id)) fail(lineno, "LOCUS without a name");
        std::string tok;
        while (words >> tok) {
          if (auto v = to_size(tok); v && !declared_length) declared_length = v;
          if (tok == "circular") topology = Topology::Circular;
          if (tok == "linear") topology = Topology::Linear;
        }
        have_locus = true;
      } else if (!have_locus) {
        fail(lineno, "missing LOCUS");
      } else if (keyword == "DEFINITION") {
        rec.definition = std::string(trim(line.substr(keyword.size())));
        continuation = &rec.definition;
      } else if (keyword == "COMMENT") {
        const auto body = trim(line.substr(keyword.size()));
        if (body.substr(0, kCapacityTag.size()) == kCapacityTag) {
          auto v = to_size(trim(body.substr(kCapacityTag.size())));
          if (!v || *v == 0) fail(lineno, "bad insert capacity");
          rec.max_insert_capacity_bp = *v;
        }
      } else if (keyword == "FEATURES") {
        in_features = true;
      } else if (keyword == "ORIGIN") {
        have_origin = true;
        in_origin = true;
      } else if (keyword == "//") {
        break;
      }
      // Other top-level keywords are outside the subset and skipped.
      continue;
    }

    if (continuation) {
      *continuation += " " + std::string(trim(line));
      continue;
    }
    if (!in_features) continue;

    // Feature table: key at column 6, qualifiers/locations from column 22.
    const std::size_t indent = line.find_first_not_of(' ');
    const auto body = trim(line);
    if (indent < 21) {
      PendingFeature p;
      p.line = lineno;
      const auto space = body.find_first_of(" \t");
      if (space == std::string_view::npos) fail(lineno, "feature without location");
      p.key = std::string(body.substr(0, space));
      p.location = std::string(trim(body.substr(space)));
      pending.push_back(std::move(p));
      continue;
    }
    if (pending.empty()) fail(lineno, "qualifier before any feature");
    PendingFeature& p = pending.back();
    if (p.open_value) {
      std::string_view chunk = body;
      if (!chunk.empty() && chunk.back() == '"') {
        chunk.remove_suffix(1);
        *p.open_value += " " + std::string(chunk);
        p.open_value = nullptr;
      } else {
        *p.open_value += " " + std::string(chunk);
      }
      continue;
    }
    if (body.front() != '/') {
      p.location += std::string(body);  // wrapped location
      continue;
    }
    const auto eq = body.find('=');
    const std::string_view name = body.substr(1, eq == std::string_view::npos ? body.size() - 1 : eq - 1);
    std::string_view value = eq == std::string_view::npos ? std::string_view{} : body.substr(eq + 1);
    std::string* target = p.slot(name);
    if (!target) continue;
    if (!value.empty() && value.front() == '"') {
      value.remove_prefix(1);
      if (!value.empty() && value.back() == '"') {
        value.remove_suffix(1);
      } else {
        p.open_value = target;
      }
    }
    *target = std::string(value);
  }

  const std::size_t last_line = lines.empty() ? 1 : lines.size();
  if (!have_locus) fail(1, "missing LOCUS");
  if (!have_origin) fail(last_line, "missing ORIGIN");
  if (declared_length && *declared_length != bases.size()) {
    fail(last_line, "LOCUS declares " + std::to_string(*declared_length) + " bp but ORIGIN holds " +
                         std::to_string(bases.size()));
  }
  rec.sequence = DnaSequence(std::move(bases), topology);

  const std::size_t n = rec.sequence.size();
  for (const auto& p : pending) {
    Feature f = finish_feature(p);
    if (f.start < 1 || f.end < 1 || f.start > n || f.end > n) {
      fail(p.line, "feature span outside 1.." + std::to_string(n));
    }
    rec.features.push_back(std::move(f));
  }
  return rec;
}

std::string serialize_plasmid(const PlasmidRecord& r) {
  std::ostringstream out;
  const std::size_t n = r.sequence.size();
  out << "LOCUS       " << std::left << std::setw(16) << r.id << std::right << std::setw(12) << n
      << " bp    DNA     " << (r.sequence.circular() ? "circular" : "linear  ") << " SYN\n";
  if (!r.definition.empty()) out << "DEFINITION  " << r.definition << "\n";
  out << "COMMENT     " << kCapacityTag << " " << r.max_insert_capacity_bp << "\n";
  out << "FEATURES             Location/Qualifiers\n";
  for (const auto& f : r.features) {
    out << "     " << std::left << std::setw(16) << key_for(f.kind) << format_location(f, n) << "\n";
    out << "                     /label=\"" << f.label << "\"\n";
  }
  out << "ORIGIN\n";
  const auto& b = r.sequence.bases();
  for (std::size_t i = 0; i < n; i += 60) {
    out << std::right << std::setw(9) << (i + 1);
    for (std::size_t j = i; j < std::min(n, i + 60); j += 10) {
      out << ' ';
      for (std::size_t k = j; k < std::min(n, j + 10); ++k) {
        out << static_cast<char>(std::tolower(static_cast<unsigned char>(b[k])));
      }
    }
    out << "\n";
  }
  out << "//\n";
  return out.str();
}

}  // namespace bacforge
