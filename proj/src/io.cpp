#include "dpt/io.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "dpt/canonical.hpp"

namespace dpt::io {

namespace {

const Json& member(const Json& j, const char* key, const char* what) {
  if (!j.is_object()) throw InputError(std::string(what) + " must be a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string(what) + " lacks \"" + key + "\"");
  return *it;
}

std::string as_string(const Json& j, const char* what) {
  if (!j.is_string()) throw InputError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
  const auto x = j.get<std::int64_t>();
  if (x < -(1 << 30) || x > (1 << 30)) throw InputError(std::string(what) + " is out of range");
  return static_cast<int>(x);
}

double as_double(const Json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
  return j.get<double>();
}

std::vector<std::string> string_list(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(as_string(x, what));
  return out;
}

Json split_json(const SplitSpec& s) {
  return Json{{"kind", split_kind_name(s.kind)}, {"reattach", s.reattach}};
}

SplitSpec split_from_json(const Json& j) {
  SplitSpec s;
  const std::string kind = as_string(member(j, "kind", "split"), "split kind");
  if (kind == "parallel") s.kind = SplitKind::Parallel;
  else if (kind == "sequential") s.kind = SplitKind::Sequential;
  else throw InputError("split kind must be \"parallel\" or \"sequential\"");
  if (j.contains("reattach")) s.reattach = string_list(j["reattach"], "reattach");
  return s;
}

std::pair<std::string, std::string> id_pair(const Json& j, const char* what) {
  const auto ids = string_list(j, what);
  if (ids.size() != 2) throw InputError(std::string(what) + " must list exactly two edge ids");
  return {ids[0], ids[1]};
}

}  // namespace

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("JSON parse error: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json load(const std::string& path) { return parse(read_file(path)); }

Json to_json(const Tree& tree) {
  Json vs = Json::array();
  for (const Vertex& v : tree.vertices()) vs.push_back({{"id", v.id}, {"delta", v.delta}});
  Json es = Json::array();
  for (const Edge& e : tree.edges())
    es.push_back({{"id", e.id}, {"tail", tree.vertices()[static_cast<std::size_t>(e.tail)].id},
                  {"head", tree.vertices()[static_cast<std::size_t>(e.head)].id}});
  Json ps = Json::array();
  for (auto [a, b] : tree.pairs())
    ps.push_back({tree.edges()[static_cast<std::size_t>(a)].id, tree.edges()[static_cast<std::size_t>(b)].id});
  return Json{{"vertices", vs}, {"edges", es}, {"pairing", ps}};
}

Tree tree_from_json(const Json& j) {
  Tree t;
  const Json& vs = member(j, "vertices", "tree");
  if (!vs.is_array()) throw InputError("\"vertices\" must be an array");
  for (const auto& v : vs) t.add_vertex(as_string(member(v, "id", "vertex"), "vertex id"), as_int(member(v, "delta", "vertex"), "delta"));
  if (j.contains("edges")) {
    const Json& es = j["edges"];
    if (!es.is_array()) throw InputError("\"edges\" must be an array");
    for (const auto& e : es)
      t.add_edge(as_string(member(e, "id", "edge"), "edge id"), as_string(member(e, "tail", "edge"), "tail"),
                 as_string(member(e, "head", "edge"), "head"));
  }
  if (j.contains("pairing")) {
    const Json& ps = j["pairing"];
    if (!ps.is_array()) throw InputError("\"pairing\" must be an array");
    for (const auto& p : ps) {
      auto [a, b] = id_pair(p, "pairing entry");
      t.add_pair(a, b);
    }
  }
  return t;
}

Json to_json(const InvariantVector& v) {
  Json c = Json::object();
  for (const auto& [k, x] : v.coefficients()) c[std::to_string(k)] = x;
  return Json{{"coefficients", c}};
}

InvariantVector vector_from_json(const Json& j) {
  const Json& c = member(j, "coefficients", "vector");
  if (!c.is_object()) throw InputError("\"coefficients\" must be an object");
  InvariantVector v;
  for (const auto& [key, val] : c.items()) {
    if (!val.is_number_integer()) throw InputError("coefficient for '" + key + "' must be an integer");
    v.add_at(parse_term(key + ":0").first, val.get<std::int64_t>());
  }
  return v;
}

Json to_json(const Move& m) {
  return std::visit(
      [](const auto& mv) -> Json {
        using T = std::decay_t<decltype(mv)>;
        if constexpr (std::is_same_v<T, EBirth>) {
          return Json{{"type", "EBirth"}, {"v1", mv.v1}, {"v2", mv.v2}, {"d1", mv.d1}, {"d2", mv.d2}};
        } else if constexpr (std::is_same_v<T, EDeath>) {
          return Json{{"type", "EDeath"}, {"edges", {mv.e1, mv.e2}}};
        } else if constexpr (std::is_same_v<T, HMove>) {
          return Json{{"type", "HMove"}, {"pair", {mv.a1, mv.a2}}, {"side1", split_json(mv.side1)}, {"side2", split_json(mv.side2)}};
        } else {
          return Json{{"type", "HMerge"}, {"keep", {mv.a1, mv.a2}}, {"collapse", {mv.b1, mv.b2}}};
        }
      },
      m);
}

Move move_from_json(const Json& j) {
  const std::string type = as_string(member(j, "type", "move"), "move type");
  if (type == "EBirth")
    return EBirth{as_string(member(j, "v1", "EBirth"), "v1"), as_string(member(j, "v2", "EBirth"), "v2"),
                  as_int(member(j, "d1", "EBirth"), "d1"), as_int(member(j, "d2", "EBirth"), "d2")};
  if (type == "EDeath") {
    auto [a, b] = id_pair(member(j, "edges", "EDeath"), "EDeath edges");
    return EDeath{a, b};
  }
  if (type == "HMove") {
    auto [a, b] = id_pair(member(j, "pair", "HMove"), "HMove pair");
    return HMove{a, b, split_from_json(member(j, "side1", "HMove")), split_from_json(member(j, "side2", "HMove"))};
  }
  if (type == "HMerge") {
    auto [a1, a2] = id_pair(member(j, "keep", "HMerge"), "HMerge keep");
    auto [b1, b2] = id_pair(member(j, "collapse", "HMerge"), "HMerge collapse");
    return HMerge{a1, a2, b1, b2};
  }
  throw InputError("unknown move type '" + type + "'");
}

Json to_json(const GeneratingCurve& c) {
  Json pts = Json::array();
  for (const Point& p : c.points) pts.push_back({p.r, p.z});
  return Json{{"points", pts}, {"tolerance", c.tolerance}};
}

GeneratingCurve curve_from_json(const Json& j) {
  GeneratingCurve c;
  const Json& pts = member(j, "points", "curve");
  if (!pts.is_array()) throw InputError("\"points\" must be an array");
  for (const auto& p : pts) {
    if (!p.is_array() || p.size() != 2) throw InputError("each point must be an [r, z] pair");
    c.points.push_back({as_double(p[0], "r"), as_double(p[1], "z")});
  }
  if (j.contains("tolerance")) c.tolerance = as_double(j["tolerance"], "tolerance");
  return c;
}

Json to_json(const ValidationReport& r) {
  Json vs = Json::array();
  for (const auto& v : r.violations) vs.push_back({{"rule", rule_name(v.rule)}, {"witness", v.witness}});
  return Json{{"ok", r.ok}, {"violations", vs}};
}

Json to_json(const ReachResult& r) {
  Json path = Json::array();
  for (const Move& m : r.path) path.push_back(to_json(m));
  Json out{{"status", reach_status_name(r.status)}};
  if (r.status == ReachStatus::Reached) out["path"] = path;
  out["source_invariant"] = to_json(r.source_invariant);
  out["target_invariant"] = to_json(r.target_invariant);
  out["states_visited"] = r.states_visited;
  out["depth_searched"] = r.depth_searched;
  out["detail"] = r.detail;
  switch (r.status) {
    case ReachStatus::CertifiedUnreachable:
      out["note"] = "F differs, so no regular homotopy without triple points joins the two immersions";
      break;
    case ReachStatus::Reached:
      out["note"] = "evidence at the tree level only; moves can leave the geometrically realizable trees";
      break;
    case ReachStatus::Unknown:
      out["note"] = "equal invariants but no path within the limits";
      break;
  }
  return out;
}

std::string to_dot(const Tree& tree) {
  std::ostringstream out;
  std::string name = "dpt";
  if (validate(tree).ok) name += "_" + canonical_code_unchecked(tree).hex();
  out << "digraph \"" << name << "\" {\n";
  for (const Vertex& v : tree.vertices()) out << "  \"" << v.id << "\" [label=\"" << v.delta << "\"];\n";
  std::vector<int> color_of(tree.edge_count(), -1);
  const auto& pairs = tree.pairs();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (color_of[static_cast<std::size_t>(pairs[i].first)] < 0) color_of[static_cast<std::size_t>(pairs[i].first)] = static_cast<int>(i);
    if (color_of[static_cast<std::size_t>(pairs[i].second)] < 0) color_of[static_cast<std::size_t>(pairs[i].second)] = static_cast<int>(i);
  }
  for (std::size_t e = 0; e < tree.edge_count(); ++e) {
    const Edge& ed = tree.edges()[e];
    out << "  \"" << tree.vertices()[static_cast<std::size_t>(ed.tail)].id << "\" -> \""
        << tree.vertices()[static_cast<std::size_t>(ed.head)].id << "\" [label=\"" << ed.id << "\"";
    if (color_of[e] >= 0) {
      char hsv[32];
      std::snprintf(hsv, sizeof hsv, "%.4f 0.8 0.8", static_cast<double>(color_of[e]) / static_cast<double>(pairs.size()));
      out << ", color=\"" << hsv << "\"";
    }
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_pretty(const Tree& tree) {
  std::ostringstream out;
  out << tree.vertex_count() << " vertices, " << tree.edge_count() << " edges\n";
  for (const Vertex& v : tree.vertices()) out << "  vertex " << v.id << "  delta " << v.delta << '\n';
  for (const Edge& e : tree.edges()) {
    out << "  edge " << e.id << "  " << tree.vertices()[static_cast<std::size_t>(e.tail)].id << " -> "
        << tree.vertices()[static_cast<std::size_t>(e.head)].id;
    const int p = tree.partner(tree.edge_index(e.id));
    if (p >= 0) out << "  pair " << tree.edges()[static_cast<std::size_t>(p)].id;
    out << '\n';
  }
  return out.str();
}

}  // namespace dpt::io
