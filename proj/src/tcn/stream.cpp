#include "stged/tcn/stream.hpp"

#include <fstream>
#include <string>

#include "json.hpp"
#include "stged/core/errors.hpp"

namespace stged::tcn {
namespace {

using nlohmann::json;

json to_json(const Snapshot& s) {
  json nodes = json::array();
  for (const auto& n : s.nodes) nodes.push_back({{"id", n.id}, {"x", n.x}, {"y", n.y}, {"vx", n.vx}, {"vy", n.vy}});
  json edges = json::array();
  for (const auto& e : s.edges)
    edges.push_back({{"src", e.src},
                     {"dst", e.dst},
                     {"distance_m", e.distance_m},
                     {"path_loss_db", e.path_loss_db},
                     {"prop_delay_s", e.prop_delay_s},
                     {"timestamp_s", e.timestamp_s}});
  return json{{"t", s.t}, {"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

const json& field(const json& obj, const char* name, std::size_t line) {
  if (!obj.is_object()) throw FormatError(line, name, "enclosing record is not an object");
  auto it = obj.find(name);
  if (it == obj.end()) throw FormatError(line, name, "missing");
  return *it;
}

double real(const json& obj, const char* name, std::size_t line) {
  const json& v = field(obj, name, line);
  if (!v.is_number()) throw FormatError(line, name, "expected a number");
  return v.get<double>();
}

std::int64_t integer(const json& obj, const char* name, std::size_t line) {
  const json& v = field(obj, name, line);
  if (!v.is_number_integer()) throw FormatError(line, name, "expected an integer");
  return v.get<std::int64_t>();
}

NodeId node_id(const json& obj, const char* name, std::size_t line, std::size_t n) {
  const std::int64_t v = integer(obj, name, line);
  if (v < 0 || static_cast<std::uint64_t>(v) >= n)
    throw FormatError(line, name, "node id " + std::to_string(v) + " is not a known node");
  return static_cast<NodeId>(v);
}

const json& array(const json& obj, const char* name, std::size_t line) {
  const json& v = field(obj, name, line);
  if (!v.is_array()) throw FormatError(line, name, "expected an array");
  return v;
}

Snapshot parse_snapshot(const json& rec, std::size_t line) {
  Snapshot s;
  s.t = integer(rec, "t", line);
  const json& nodes = array(rec, "nodes", line);
  s.nodes.resize(nodes.size());
  std::vector<bool> seen(nodes.size(), false);
  for (const auto& n : nodes) {
    NodeState st;
    st.id = node_id(n, "id", line, nodes.size());
    if (seen[st.id]) throw FormatError(line, "id", "duplicate node id " + std::to_string(st.id));
    seen[st.id] = true;
    st.x = real(n, "x", line);
    st.y = real(n, "y", line);
    st.vx = real(n, "vx", line);
    st.vy = real(n, "vy", line);
    s.nodes[st.id] = st;
  }
  for (const auto& e : array(rec, "edges", line)) {
    EdgeRecord r;
    r.src = node_id(e, "src", line, s.nodes.size());
    r.dst = node_id(e, "dst", line, s.nodes.size());
    if (r.src == r.dst) throw FormatError(line, "dst", "self loop");
    r.distance_m = real(e, "distance_m", line);
    r.path_loss_db = real(e, "path_loss_db", line);
    r.prop_delay_s = real(e, "prop_delay_s", line);
    r.timestamp_s = real(e, "timestamp_s", line);
    if (r.distance_m < 0.0) throw FormatError(line, "distance_m", "negative");
    if (r.path_loss_db < 0.0) throw FormatError(line, "path_loss_db", "negative");
    if (r.timestamp_s < 0.0 || r.timestamp_s >= kStepSeconds) throw FormatError(line, "timestamp_s", "outside the step");
    s.edges.push_back(r);
  }
  return s;
}

json parse_line(const std::string& text, std::size_t line) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(line, "record", e.what());
  }
}

}  // namespace

void write_stream(std::ostream& out, const Dataset& d) {
  json header{{"format_version", kStreamFormatVersion},
              {"step_seconds", d.step_seconds},
              {"n_nodes", d.n_nodes},
              {"producer", {{"command", d.provenance.command}, {"seed", d.provenance.seed}}}};
  out << header.dump() << '\n';
  for (const auto& s : d.snapshots) out << to_json(*s).dump() << '\n';
}

void write_stream(const std::filesystem::path& path, const Dataset& d) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_stream(out, d);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Dataset read_stream(std::istream& in) {
  std::string text;
  std::size_t line = 0;
  if (!std::getline(in, text)) throw FormatError(1, "header", "missing header record");
  ++line;
  const json header = parse_line(text, line);
  if (integer(header, "format_version", line) != kStreamFormatVersion)
    throw FormatError(line, "format_version", "unsupported version");
  Dataset d;
  d.step_seconds = real(header, "step_seconds", line);
  if (d.step_seconds != kStepSeconds) throw FormatError(line, "step_seconds", "only 1-second steps are supported");
  const std::int64_t n = integer(header, "n_nodes", line);
  if (n < 0) throw FormatError(line, "n_nodes", "negative");
  d.n_nodes = static_cast<std::size_t>(n);
  if (auto it = header.find("producer"); it != header.end()) {
    if (auto c = it->find("command"); c != it->end() && c->is_string()) d.provenance.command = c->get<std::string>();
    if (auto s = it->find("seed"); s != it->end() && s->is_number_unsigned()) d.provenance.seed = s->get<std::uint64_t>();
  }

  while (std::getline(in, text)) {
    ++line;
    if (text.empty()) continue;
    Snapshot s = parse_snapshot(parse_line(text, line), line);
    if (s.node_count() != d.n_nodes)
      throw FormatError(line, "nodes", std::to_string(s.node_count()) + " nodes, header declares " +
                                           std::to_string(d.n_nodes));
    if (!d.snapshots.empty() && s.t != d.snapshots.back()->t + 1)
      throw FormatError(line, "t", "step index " + std::to_string(s.t) + " is not consecutive");
    d.snapshots.push_back(std::make_shared<const Snapshot>(std::move(s)));
  }
  return d;
}

Dataset read_stream(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_stream(in);
}

Dataset read_published_dataset(const std::filesystem::path& path) {
  throw std::runtime_error("cannot load " + path.string() +
                           ": the published CNTM/CNCM release format is not supported; convert it to the "
                           "snapshot stream format first");
}

}  // namespace stged::tcn
