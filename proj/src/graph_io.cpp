#include "liyau/graph_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace liyau {

namespace {

using json = nlohmann::ordered_json;

std::string pointer_key(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

struct Position {
  int line = 1;
  int column = 1;
};

// Start position of every value in an already-validated document, keyed by
// JSON pointer. Only structure is tracked; nlohmann does the real parsing.
class Locator {
 public:
  explicit Locator(const std::string& text) { scan(text); }

  Position at(const std::string& pointer) const {
    // Fall back to the nearest enclosing value.
    std::string p = pointer;
    while (true) {
      if (auto it = where_.find(p); it != where_.end()) return it->second;
      if (p.empty()) return {};
      p.erase(p.rfind('/'));
    }
  }

 private:
  struct Frame {
    bool array;
    int next_index;
    std::string key;
  };

  void scan(const std::string& s) {
    std::vector<Frame> stack;
    std::vector<std::string> path;
    Position pos;
    bool expecting_value = true;  // the root
    auto here = [&] {
      std::string p;
      for (const auto& part : path) p += "/" + part;
      return p;
    };
    auto begin_value = [&] {
      if (!stack.empty()) {
        auto& top = stack.back();
        path.push_back(top.array ? std::to_string(top.next_index++) : top.key);
      }
      where_.emplace(here(), pos);
    };
    auto end_value = [&] {
      if (!path.empty() && !stack.empty()) path.pop_back();
    };
    for (std::size_t i = 0; i < s.size(); ++i) {
      const char c = s[i];
      if (c == '"') {
        // Read the whole string.
        std::string raw;
        const Position start = pos;
        std::size_t j = i + 1;
        for (; j < s.size() && s[j] != '"'; ++j) {
          if (s[j] == '\\' && j + 1 < s.size()) raw += s[j++];
          raw += s[j];
        }
        const bool is_key = !stack.empty() && !stack.back().array && !expecting_value;
        if (is_key) {
          stack.back().key = pointer_key(json::parse("\"" + raw + "\"").get<std::string>());
        } else {
          const Position saved = pos;
          pos = start;
          begin_value();
          pos = saved;
          end_value();
          expecting_value = false;
        }
        pos.column += static_cast<int>(j - i + 1);
        i = j;
        continue;
      }
      if (c == '{' || c == '[') {
        begin_value();
        stack.push_back({c == '[', 0, ""});
        expecting_value = c == '[';
      } else if (c == '}' || c == ']') {
        stack.pop_back();
        end_value();
        expecting_value = false;
      } else if (c == ':') {
        expecting_value = true;
      } else if (c == ',') {
        expecting_value = !stack.empty() && stack.back().array;
      } else if (c != ' ' && c != '\t' && c != '\r' && c != '\n') {
        // Scalar literal: number, true, false, null.
        begin_value();
        std::size_t j = i;
        while (j + 1 < s.size() && std::string_view(",]} \t\r\n").find(s[j + 1]) == std::string_view::npos) ++j;
        pos.column += static_cast<int>(j - i);
        i = j;
        end_value();
        expecting_value = false;
      }
      if (c == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
    }
  }

  std::map<std::string, Position> where_;
};

// Error::what() minus its "Code: " prefix, for re-raising with a location.
std::string bare_message(const Error& err) {
  const std::string msg = err.what();
  const auto at = msg.find(": ");
  return at == std::string::npos ? msg : msg.substr(at + 2);
}

class Reader {
 public:
  Reader(const std::string& text, std::string origin) : locator_(text), origin_(std::move(origin)) {}

  [[noreturn]] void fail(ErrorCode code, const std::string& pointer, const std::string& what) const {
    const auto p = locator_.at(pointer);
    throw Error(code, origin_ + ":" + std::to_string(p.line) + ":" + std::to_string(p.column) + " (" +
                          (pointer.empty() ? "/" : pointer) + "): " + what);
  }

  double positive_number(const json& v, const std::string& pointer, ErrorCode code, const char* what) const {
    if (!v.is_number()) fail(ErrorCode::SchemaError, pointer, std::string(what) + " must be a number");
    const double x = v.get<double>();
    if (!(x > 0.0) || !std::isfinite(x)) fail(code, pointer, std::string(what) + " must be positive, got " + v.dump());
    return x;
  }

  const std::string& text(const json& v, const std::string& pointer, const char* what) const {
    if (!v.is_string()) fail(ErrorCode::SchemaError, pointer, std::string(what) + " must be a string");
    return v.get_ref<const std::string&>();
  }

 private:
  Locator locator_;
  std::string origin_;
};

}  // namespace

WeightedGraph parse_graph(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // Byte offset to line and column.
    const std::size_t at = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    int line = 1, column = 1;
    for (std::size_t i = 0; i < at; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::MalformedDocument,
                origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + e.what());
  }

  const Reader r(text, origin);
  if (!doc.is_object()) r.fail(ErrorCode::SchemaError, "", "top level must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "vertices" && key != "measure" && key != "edges") {
      r.fail(ErrorCode::SchemaError, "/" + pointer_key(key), "unexpected key '" + key + "'");
    }
  }
  for (const char* key : {"vertices", "measure", "edges"}) {
    if (!doc.contains(key)) r.fail(ErrorCode::SchemaError, "", std::string("missing '") + key + "'");
  }
  const auto& vertices = doc["vertices"];
  const auto& measure = doc["measure"];
  const auto& edges = doc["edges"];
  if (!vertices.is_array()) r.fail(ErrorCode::SchemaError, "/vertices", "must be an array");
  if (!measure.is_object()) r.fail(ErrorCode::SchemaError, "/measure", "must be an object");
  if (!edges.is_array()) r.fail(ErrorCode::SchemaError, "/edges", "must be an array");
  if (vertices.empty()) r.fail(ErrorCode::SchemaError, "/vertices", "graph has no vertices");

  GraphBuilder builder;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::string ptr = "/vertices/" + std::to_string(i);
    const auto& id = r.text(vertices[i], ptr, "vertex id");
    if (id.empty()) r.fail(ErrorCode::SchemaError, ptr, "vertex id is empty");
    if (!seen.insert(id).second) r.fail(ErrorCode::SchemaError, ptr, "vertex '" + id + "' listed twice");
    const std::string mptr = "/measure/" + pointer_key(id);
    if (!measure.contains(id)) r.fail(ErrorCode::SchemaError, "/measure", "no measure for vertex '" + id + "'");
    builder.add_vertex(id, r.positive_number(measure[id], mptr, ErrorCode::NonpositiveMeasure, "measure"));
  }
  for (const auto& [key, value] : measure.items()) {
    if (!seen.contains(key)) {
      r.fail(ErrorCode::UnknownVertex, "/measure/" + pointer_key(key), "measure for unknown vertex '" + key + "'");
    }
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string ptr = "/edges/" + std::to_string(i);
    const auto& e = edges[i];
    if (!e.is_object()) r.fail(ErrorCode::SchemaError, ptr, "edge must be an object");
    for (const auto& [key, value] : e.items()) {
      if (key != "u" && key != "v" && key != "w") r.fail(ErrorCode::SchemaError, ptr + "/" + pointer_key(key), "unexpected key");
    }
    for (const char* key : {"u", "v", "w"}) {
      if (!e.contains(key)) r.fail(ErrorCode::SchemaError, ptr, std::string("edge is missing '") + key + "'");
    }
    const auto& u = r.text(e["u"], ptr + "/u", "edge endpoint");
    const auto& v = r.text(e["v"], ptr + "/v", "edge endpoint");
    if (!seen.contains(u)) r.fail(ErrorCode::UnknownVertex, ptr + "/u", "unknown vertex '" + u + "'");
    if (!seen.contains(v)) r.fail(ErrorCode::UnknownVertex, ptr + "/v", "unknown vertex '" + v + "'");
    const double w = r.positive_number(e["w"], ptr + "/w", ErrorCode::NonpositiveWeight, "weight");
    try {
      builder.add_edge(u, v, w);
    } catch (const Error& err) {
      r.fail(err.code(), ptr, bare_message(err));
    }
  }
  try {
    return builder.build();
  } catch (const Error& err) {
    r.fail(err.code(), "", bare_message(err));
  }
}

std::string serialize_graph(const WeightedGraph& g) {
  json doc;
  doc["vertices"] = g.ids();
  json measure = json::object();
  for (Index x = 0; x < g.size(); ++x) measure[g.id(x)] = g.measure(x);
  doc["measure"] = std::move(measure);
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({{"u", g.id(e.u)}, {"v", g.id(e.v)}, {"w", e.weight}});
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

WeightedGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str(), path.string());
}

void save_graph(const WeightedGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << serialize_graph(g);
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

}  // namespace liyau
