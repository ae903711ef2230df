#include "bacforge/service.hpp"

#include <httplib.h>

#include <iostream>

#include "bacforge/cloning.hpp"
#include "bacforge/codec.hpp"
#include "bacforge/error.hpp"
#include "bacforge/gel.hpp"

namespace bacforge {
namespace {

ApiResponse ok(json body, const std::vector<Warning>& warnings = {}) {
  json w = json::array();
  for (const auto& x : warnings) w.push_back(to_json(x));
  body["warnings"] = w;
  return {200, std::move(body)};
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFound: return 404;
    case ErrorCode::PayloadTooLarge: return 413;
    default: return 400;
  }
}

std::string url_decode(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '+') {
      out.push_back(' ');
    } else if (s[i] == '%' && i + 2 < s.size()) {
      out.push_back(static_cast<char>(std::stoi(std::string(s.substr(i + 1, 2)), nullptr, 16)));
      i += 2;
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

std::string query_param(std::string_view query, std::string_view key) {
  std::size_t pos = 0;
  while (pos <= query.size()) {
    auto amp = query.find('&', pos);
    if (amp == std::string_view::npos) amp = query.size();
    const auto pair = query.substr(pos, amp - pos);
    const auto eq = pair.find('=');
    if (pair.substr(0, eq) == key) return eq == std::string_view::npos ? "" : url_decode(pair.substr(eq + 1));
    pos = amp + 1;
  }
  return {};
}

std::string require_string(const json& req, const char* field) {
  if (!req.contains(field) || !req.at(field).is_string()) {
    throw Error(ErrorCode::BadInput, std::string("missing string field '") + field + "'");
  }
  return req.at(field).get<std::string>();
}

std::string optional_string(const json& req, const char* field, std::string fallback) {
  if (!req.contains(field) || req.at(field).is_null()) return fallback;
  if (!req.at(field).is_string()) throw Error(ErrorCode::BadInput, std::string("field '") + field + "' must be a string");
  return req.at(field).get<std::string>();
}

DnaSequence sequence_field(const json& req, const char* field) {
  const std::string s = require_string(req, field);
  if (s.size() > kMaxRequestBytes) throw Error(ErrorCode::PayloadTooLarge, "sequence exceeds 1 MB");
  return DnaSequence(s);
}

std::string from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw Error(ErrorCode::BadInput, "hex payload has odd length");
  std::string out;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(std::string(hex.substr(i, 2)), &used, 16);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != 2) throw Error(ErrorCode::BadInput, "invalid hex digit near offset " + std::to_string(i));
    out.push_back(static_cast<char>(v));
  }
  return out;
}

}  // namespace

json api_error(std::string_view code, std::string_view message, const json& detail) {
  return {{"error", {{"code", code}, {"message", message}, {"detail", detail}}}};
}

Service::Service(std::shared_ptr<const Database> db) : db_(std::move(db)) {}

ApiResponse Service::handle(std::string_view method, std::string_view target, std::string_view body) const {
  const auto qmark = target.find('?');
  const std::string_view path = target.substr(0, qmark);
  const std::string_view query = qmark == std::string_view::npos ? std::string_view{} : target.substr(qmark + 1);

  try {
    if (body.size() > kMaxRequestBytes) throw Error(ErrorCode::PayloadTooLarge, "request body exceeds 1 MB");

    constexpr std::string_view kPlasmids = "/api/plasmids";
    if (method == "GET" && path == kPlasmids) return list_plasmids();
    if (method == "GET" && path.substr(0, kPlasmids.size() + 1) == "/api/plasmids/") {
      std::string_view rest = path.substr(kPlasmids.size() + 1);
      const auto slash = rest.find('/');
      if (slash == std::string_view::npos) return get_plasmid(url_decode(rest));
      if (rest.substr(slash) == "/sites") {
        std::string category = query_param(query, "category");
        return get_sites(url_decode(rest.substr(0, slash)), category.empty() ? "all" : category);
      }
    }

    if (method == "POST") {
      json req;
      try {
        req = json::parse(body.empty() ? std::string_view("{}") : body);
      } catch (const json::parse_error& e) {
        throw Error(ErrorCode::BadInput, std::string("malformed JSON: ") + e.what());
      }
      if (!req.is_object()) throw Error(ErrorCode::BadInput, "request body must be a JSON object");
      if (path == "/api/encode") return encode(req);
      if (path == "/api/decode") return decode(req);
      if (path == "/api/clone") return clone(req);
      if (path == "/api/declone") return declone(req);
      if (path == "/api/gel") return gel(req);
    }
    return {404, api_error("NOT_FOUND", "no route for " + std::string(method) + " " + std::string(path))};
  } catch (const Error& e) {
    return {status_for(e.code()), api_error(to_string(e.code()), e.what())};
  } catch (const json::exception& e) {
    return {400, api_error("BAD_INPUT", e.what())};
  }
}

ApiResponse Service::list_plasmids() const {
  json list = json::array();
  for (const auto& p : db_->plasmids()) list.push_back(plasmid_summary(p));
  return ok({{"plasmids", list}});
}

ApiResponse Service::get_plasmid(std::string_view id) const { return ok(plasmid_detail(db_->plasmid(id))); }

ApiResponse Service::get_sites(std::string_view id, std::string_view category) const {
  const auto& p = db_->plasmid(id);
  const auto cat = parse_category(category);
  json enzymes = json::array();
  for (const auto& es : classify_enzymes(p, db_->enzymes(), cat)) enzymes.push_back(to_json(es));
  return ok({{"plasmid_id", p.id}, {"category", to_string(cat)}, {"count", enzymes.size()}, {"enzymes", enzymes}});
}

ApiResponse Service::encode(const json& req) const {
  const auto mode = parse_payload_mode(optional_string(req, "mode", req.contains("hex") ? "raw" : "text"));
  std::string payload;
  if (req.contains("hex")) {
    payload = from_hex(require_string(req, "hex"));
  } else {
    payload = require_string(req, "text");
  }
  if (payload.empty()) throw Error(ErrorCode::BadInput, "empty input");
  if (payload.size() > kMaxRequestBytes) throw Error(ErrorCode::PayloadTooLarge, "payload exceeds 1 MB");
  const auto seq = encode_message(payload, mode);
  return ok({{"mode", to_string(mode)},
             {"byte_length", payload.size()},
             {"sequence", seq.bases()},
             {"length", seq.size()},
             {"chunks", seq.size() / kBlockBases},
             {"constraints", to_json(analyze_constraints(seq))}});
}

ApiResponse Service::decode(const json& req) const {
  const auto seq = sequence_field(req, "sequence");
  const auto mode = parse_payload_mode(optional_string(req, "mode", "text"));
  std::optional<std::size_t> length;
  if (req.contains("byte_length") && !req.at("byte_length").is_null()) length = req.at("byte_length").get<std::size_t>();
  auto report = decode_message(seq, mode, length);
  std::vector<Warning> warnings;
  for (const auto& w : report.warnings) warnings.push_back({"DECODE_WARNING", w});
  json body = to_json(report);
  body.erase("warnings");
  return ok(body, warnings);
}

ApiResponse Service::clone(const json& req) const {
  const auto& plasmid = db_->plasmid(require_string(req, "plasmid_id"));
  const auto insert = sequence_field(req, "insert");
  if (insert.empty()) throw Error(ErrorCode::BadInput, "empty insert");

  ClonedPlasmid cloned;
  if (req.contains("enzymes") && !req.at("enzymes").is_null()) {
    const auto names = req.at("enzymes").get<std::vector<std::string>>();
    if (names.size() != 2) throw Error(ErrorCode::BadInput, "enzymes must name exactly two enzymes");
    cloned = clone_insert(plasmid, insert,
                          pair_from_enzymes(plasmid, db_->enzyme(names[0]), db_->enzyme(names[1]), insert));
  } else {
    const auto category = parse_category(optional_string(req, "category", "unique"));
    cloned = clone_insert(plasmid, insert, db_->enzymes(), category);
  }
  json manifest = to_json(cloned.manifest);
  manifest.erase("warnings");
  return ok({{"sequence", cloned.sequence.bases()},
             {"manifest", manifest},
             {"genbank", serialize_plasmid(cloned_record(plasmid, cloned))}},
            cloned.manifest.warnings);
}

ApiResponse Service::declone(const json& req) const {
  const auto seq = sequence_field(req, "sequence").with_topology(Topology::Circular);
  std::string e1, e2;
  if (req.contains("manifest")) {
    const auto m = manifest_from_json(req.at("manifest"));
    e1 = m.enzyme1;
    e2 = m.enzyme2;
  } else {
    e1 = require_string(req, "enzyme1");
    e2 = require_string(req, "enzyme2");
  }
  const auto insert = declone_insert(seq, db_->enzyme(e1), db_->enzyme(e2));
  return ok({{"insert", insert.bases()}, {"length", insert.size()}});
}

ApiResponse Service::gel(const json& req) const {
  const GelParams params = req.contains("params") ? gel_params_from_json(req.at("params")) : GelParams{};
  const auto format = parse_gel_format(optional_string(req, "format", "svg"));
  if (!req.contains("lanes") || !req.at("lanes").is_array()) throw Error(ErrorCode::BadInput, "missing lanes array");
  std::vector<GelLane> lanes;
  for (const auto& l : req.at("lanes")) {
    lanes.push_back({l.value("label", std::string("lane") + std::to_string(lanes.size() + 1)),
                     l.at("fragment_lengths").get<std::vector<std::size_t>>()});
  }
  const auto image = build_gel(lanes, params);
  json bands = json::array();
  for (const auto& lane : image.lanes) {
    for (const auto& b : lane.bands) {
      bands.push_back({{"lane", lane.label}, {"length_bp", b.length_bp}, {"distance_px", b.distance_px}});
    }
  }
  return ok({{"format", format == GelFormat::Svg ? "svg" : "text"},
             {"document", render_gel(image, format)},
             {"bands", bands}});
}

struct HttpServer::Impl {
  ServeOptions options;
  std::shared_ptr<Service> service;
  httplib::Server server;
};

HttpServer::HttpServer(std::shared_ptr<const Database> db, ServeOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->options = std::move(options);
  impl_->service = std::make_shared<Service>(std::move(db));
  auto& server = impl_->server;
  server.set_payload_max_length(kMaxRequestBytes + 1024);
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});

  auto dispatch = [service = impl_->service](const httplib::Request& req, httplib::Response& res) {
    std::string target = req.path;
    if (!req.params.empty()) {
      target += "?";
      bool first = true;
      for (const auto& [k, v] : req.params) {
        if (!first) target += "&";
        target += k + "=" + v;
        first = false;
      }
    }
    const auto reply = service->handle(req.method, target, req.body);
    res.status = reply.status;
    res.set_content(reply.body.dump(-1, ' ', false, json::error_handler_t::replace), "application/json");
  };
  server.Get(R"(/api/.*)", dispatch);
  server.Post(R"(/api/.*)", dispatch);
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  const auto& static_dir = impl_->options.static_dir;
  if (!static_dir.empty() && !server.set_mount_point("/", static_dir)) {
    throw Error(ErrorCode::NotFound, "static directory not found: " + static_dir);
  }
}

HttpServer::~HttpServer() = default;

int HttpServer::bind() {
  const auto& o = impl_->options;
  const int port = o.port == 0 ? impl_->server.bind_to_any_port(o.host) : o.port;
  if (port < 0 || (o.port != 0 && !impl_->server.bind_to_port(o.host, o.port))) {
    throw Error(ErrorCode::BadInput, "cannot bind " + o.host + ":" + std::to_string(o.port));
  }
  return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

void serve(std::shared_ptr<const Database> db, const ServeOptions& options) {
  HttpServer server(std::move(db), options);
  const int port = server.bind();
  std::cerr << "listening on http://" << options.host << ":" << port << "\n";
  server.listen();
}

}  // namespace bacforge
