#include "costshare/instance_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace costshare {

namespace {

std::string kind_name(const InstanceBody& body) {
  switch (body.index()) {
    case 0: return "facility-location";
    case 1: return "steiner";
    case 2: return "ssrob";
    case 3: return "set-cover";
    default: return "lower-bound-spec";
  }
}

const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw InvalidInput("expected an object", path);
  auto it = obj.find(key);
  if (it == obj.end()) throw InvalidInput("missing field '" + key + "'", path + "." + key);
  return *it;
}

std::size_t as_index(const Json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw InvalidInput("expected a nonnegative integer", path);
  }
  return v.get<std::size_t>();
}

Money as_money(const Json& v, const std::string& path) {
  if (!v.is_number()) throw InvalidInput("expected a number", path);
  const double x = v.get<double>();
  if (!std::isfinite(x) || x < 0.0) throw InvalidInput("expected a finite nonnegative number", path);
  return x;
}

const Json& as_array(const Json& v, const std::string& path) {
  if (!v.is_array()) throw InvalidInput("expected an array", path);
  return v;
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

std::size_t vertex_in(const Json& v, std::size_t n, const std::string& path) {
  const std::size_t x = as_index(v, path);
  if (x >= n) throw InvalidInput("vertex " + std::to_string(x) + " outside 0.." + std::to_string(n - 1), path);
  return x;
}

Graph parse_graph(const Json& body, const std::string& path) {
  Graph g;
  g.num_vertices = as_index(field(body, "vertices", path), path + ".vertices");
  if (g.num_vertices == 0) throw InvalidInput("at least one vertex is required", path + ".vertices");
  const std::string epath = path + ".edges";
  const Json& edges = as_array(field(body, "edges", path), epath);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const std::string p = at(epath, e);
    if (!edges[e].is_array() || edges[e].size() != 3) throw InvalidInput("expected [u, v, cost]", p);
    g.edges.push_back({vertex_in(edges[e][0], g.num_vertices, at(p, 0)),
                       vertex_in(edges[e][1], g.num_vertices, at(p, 1)), as_money(edges[e][2], at(p, 2))});
  }
  try {
    (void)shortest_path_closure(g);
  } catch (const InvalidInput& err) {
    throw InvalidInput(err.what(), epath);
  }
  return g;
}

SteinerInstance parse_steiner(const Json& body, const std::string& path) {
  Graph g = parse_graph(body, path);
  const std::size_t root = vertex_in(field(body, "root", path), g.num_vertices, path + ".root");
  const std::string ppath = path + ".players";
  const Json& players = as_array(field(body, "players", path), ppath);
  std::vector<VertexId> hosts;
  for (std::size_t i = 0; i < players.size(); ++i) hosts.push_back(vertex_in(players[i], g.num_vertices, at(ppath, i)));
  return SteinerInstance(std::move(g), root, std::move(hosts));
}

FacilityLocationInstance parse_facility_location(const Json& body, const std::string& path) {
  DistanceMatrix metric;
  if (body.is_object() && body.contains("metric")) {
    const std::string mpath = path + ".metric";
    const Json& rows = as_array(body["metric"], mpath);
    std::vector<std::vector<Money>> values;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Json& row = as_array(rows[r], at(mpath, r));
      if (row.size() != rows.size()) throw InvalidInput("metric must be square", at(mpath, r));
      std::vector<Money> out;
      for (std::size_t c = 0; c < row.size(); ++c) out.push_back(as_money(row[c], at(at(mpath, r), c)));
      values.push_back(std::move(out));
    }
    metric = DistanceMatrix::from_rows(values);
    try {
      validate_metric(metric);
    } catch (const InvalidInput& err) {
      throw InvalidInput(err.what(), mpath);
    }
  } else if (body.is_object() && body.contains("edges")) {
    metric = shortest_path_closure(parse_graph(body, path));
  } else {
    throw InvalidInput("facility-location body needs 'metric' or 'edges'", path + ".metric");
  }
  const std::size_t points = metric.size();
  if (body.contains("points") && as_index(body["points"], path + ".points") != points) {
    throw InvalidInput("point count disagrees with the metric", path + ".points");
  }
  const std::string fpath = path + ".facilities";
  const Json& facilities = as_array(field(body, "facilities", path), fpath);
  if (facilities.empty()) throw InvalidInput("at least one facility is required", fpath);
  std::vector<Facility> fs;
  for (std::size_t q = 0; q < facilities.size(); ++q) {
    const std::string p = at(fpath, q);
    fs.push_back({vertex_in(field(facilities[q], "point", p), points, p + ".point"),
                  as_money(field(facilities[q], "opening_cost", p), p + ".opening_cost")});
  }
  const std::string ppath = path + ".players";
  const Json& players = as_array(field(body, "players", path), ppath);
  std::vector<std::size_t> hosts;
  for (std::size_t i = 0; i < players.size(); ++i) hosts.push_back(vertex_in(players[i], points, at(ppath, i)));
  return FacilityLocationInstance(std::move(metric), std::move(fs), std::move(hosts));
}

SetCoverInstance parse_set_cover(const Json& body, const std::string& path) {
  const std::size_t n = as_index(field(body, "elements", path), path + ".elements");
  const std::string spath = path + ".sets";
  const Json& sets = as_array(field(body, "sets", path), spath);
  std::vector<CoverSet> out;
  for (std::size_t j = 0; j < sets.size(); ++j) {
    const std::string p = at(spath, j);
    CoverSet s;
    s.cost = as_money(field(sets[j], "cost", p), p + ".cost");
    const Json& members = as_array(field(sets[j], "members", p), p + ".members");
    for (std::size_t e = 0; e < members.size(); ++e) {
      const std::size_t x = as_index(members[e], at(p + ".members", e));
      if (x >= n) throw InvalidInput("element " + std::to_string(x) + " is not in the universe", at(p + ".members", e));
      s.members.push_back(x);
    }
    out.push_back(std::move(s));
  }
  return SetCoverInstance(n, std::move(out));
}

LowerBoundSpec parse_lower_bound(const Json& body, const std::string& path) {
  LowerBoundSpec spec;
  spec.k = as_index(field(body, "k", path), path + ".k");
  bool power_of_four = spec.k >= 4;
  for (std::size_t x = spec.k; power_of_four && x > 1; x /= 4) power_of_four = x % 4 == 0;
  if (!power_of_four) throw InvalidInput("k must be a power of 4 and at least 4", path + ".k");
  const Json& beta = field(body, "beta", path);
  if (!beta.is_number() || beta.get<double>() < 1.0) throw InvalidInput("beta must be a number >= 1", path + ".beta");
  spec.beta = beta.get<double>();
  if (body.contains("m") && !body["m"].is_null()) {
    spec.m = as_index(body["m"], path + ".m");
    if (*spec.m < 2) throw InvalidInput("m must be at least 2", path + ".m");
  }
  return spec;
}

Json graph_json(const Graph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.edges) edges.push_back({e.u, e.v, e.cost});
  return {{"vertices", g.num_vertices}, {"edges", edges}};
}

Json steiner_json(const SteinerInstance& s) {
  Json body = graph_json(s.graph());
  body["root"] = s.root();
  body["players"] = s.player_hosts();
  return body;
}

}  // namespace

std::string InstanceFile::kind() const { return kind_name(body); }

std::size_t InstanceFile::num_players() const {
  return std::visit(
      [](const auto& b) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(b)>, LowerBoundSpec>) {
          return 0;
        } else {
          return b.num_players();
        }
      },
      body);
}

InstanceFile parse_instance(const Json& document) {
  if (!document.is_object()) throw InvalidInput("instance file must be a JSON object", "$");
  const Json& version = field(document, "format_version", "$");
  if (!version.is_string()) throw InvalidInput("format_version must be a string", "$.format_version");
  if (version.get<std::string>() != kFormatVersion) {
    throw InvalidInput("unsupported format_version '" + version.get<std::string>() + "'", "$.format_version");
  }
  const Json& kind = field(document, "kind", "$");
  if (!kind.is_string()) throw InvalidInput("kind must be a string", "$.kind");
  const Json& body = field(document, "body", "$");
  if (!body.is_object()) throw InvalidInput("body must be an object", "$.body");
  const std::string k = kind.get<std::string>();
  const std::string path = "$.body";
  InstanceFile file{kFormatVersion, LowerBoundSpec{}};
  if (k == "facility-location") {
    file.body = parse_facility_location(body, path);
  } else if (k == "steiner") {
    file.body = parse_steiner(body, path);
  } else if (k == "ssrob") {
    const Json& m = field(body, "M", path);
    if (!m.is_number() || !(m.get<double>() >= 1.0)) throw InvalidInput("M must be a number >= 1", path + ".M");
    file.body = RentOrBuyInstance(parse_steiner(body, path), m.get<double>());
  } else if (k == "set-cover") {
    file.body = parse_set_cover(body, path);
  } else if (k == "lower-bound-spec") {
    file.body = parse_lower_bound(body, path);
  } else {
    throw InvalidInput("unknown kind '" + k + "'", "$.kind");
  }
  return file;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read file " + path, path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& err) {
    throw InvalidInput(std::string("malformed JSON: ") + err.what(), path);
  }
}

InstanceFile load_instance(const std::string& path) { return parse_instance(read_json_file(path)); }

Json to_json(const InstanceFile& file) {
  Json body;
  switch (file.body.index()) {
    case 0: {
      const auto& fl = std::get<FacilityLocationInstance>(file.body);
      Json facilities = Json::array();
      for (const Facility& f : fl.facilities()) facilities.push_back({{"point", f.point}, {"opening_cost", f.opening_cost}});
      body = {{"points", fl.metric().size()},
              {"metric", fl.metric().rows()},
              {"facilities", facilities},
              {"players", fl.player_points()}};
      break;
    }
    case 1: body = steiner_json(std::get<SteinerInstance>(file.body)); break;
    case 2: {
      const auto& r = std::get<RentOrBuyInstance>(file.body);
      body = steiner_json(r.network());
      body["M"] = r.buy_multiplier();
      break;
    }
    case 3: {
      const auto& sc = std::get<SetCoverInstance>(file.body);
      Json sets = Json::array();
      for (const CoverSet& s : sc.sets()) sets.push_back({{"cost", s.cost}, {"members", s.members}});
      body = {{"elements", sc.num_players()}, {"sets", sets}};
      break;
    }
    default: {
      const auto& spec = std::get<LowerBoundSpec>(file.body);
      body = {{"k", spec.k}, {"beta", spec.beta}};
      body["m"] = spec.m ? Json(*spec.m) : Json(nullptr);
      break;
    }
  }
  return {{"format_version", file.format_version}, {"kind", file.kind()}, {"body", body}};
}

void save_instance(const InstanceFile& file, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write file " + path, path);
  out << to_json(file).dump(2) << '\n';
}

std::string instance_digest(const InstanceFile& file) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_json(file).dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<Diagnostic> validate_instance(const Json& document) {
  try {
    (void)parse_instance(document);
  } catch (const InvalidInput& err) {
    return {{err.path().empty() ? "$.body" : err.path(), err.what()}};
  } catch (const InfeasibleError& err) {
    return {{"$.body.sets", err.what()}};
  }
  return {};
}

}  // namespace costshare
