#include "pmk/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace pmk {

namespace {

bool parse_int(const std::string& tok, int& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && p == last;
}

struct RawLine {
  int lineno;
  bool vertex_decl;
  std::string a, b;
};

}  // namespace

ParsedGraph read_edge_list(std::istream& in) {
  std::vector<RawLine> rows;
  std::string line;
  int lineno = 0;
  bool all_ints = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (toks.empty()) continue;
    if (toks[0] == "vertex") {
      if (toks.size() != 2)
        throw parse_error("line " + std::to_string(lineno) + ": expected 'vertex u'");
      rows.push_back({lineno, true, toks[1], {}});
      int dummy;
      all_ints = all_ints && parse_int(toks[1], dummy);
    } else {
      if (toks.size() != 2)
        throw parse_error("line " + std::to_string(lineno) +
                          ": expected 'u v' or 'vertex u'");
      if (toks[0] == toks[1])
        throw parse_error("line " + std::to_string(lineno) + ": self-loop at '" +
                          toks[0] + "'");
      rows.push_back({lineno, false, toks[0], toks[1]});
      int dummy;
      all_ints = all_ints && parse_int(toks[0], dummy) && parse_int(toks[1], dummy);
    }
  }

  ParsedGraph out;
  std::unordered_map<std::string, int> name_id;
  auto to_label = [&](const std::string& tok) {
    if (all_ints) {
      int v = 0;
      parse_int(tok, v);
      return v;
    }
    auto [it, fresh] = name_id.emplace(tok, static_cast<int>(name_id.size()));
    if (fresh) out.names.push_back(tok);
    return it->second;
  };

  out.named = !all_ints;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> isolated;
  for (const auto& r : rows) {
    if (r.vertex_decl) {
      isolated.push_back(to_label(r.a));
    } else {
      int u = to_label(r.a), v = to_label(r.b);
      if (u == v)
        throw parse_error("line " + std::to_string(r.lineno) + ": self-loop at '" +
                          r.a + "'");
      edges.emplace_back(u, v);
    }
  }
  out.g = graph_from_edges(edges, isolated);
  return out;
}

ParsedGraph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g,
                     const std::vector<std::string>* names) {
  auto show = [&](int label) -> std::string {
    if (names && label >= 0 && label < static_cast<int>(names->size()))
      return (*names)[label];
    return std::to_string(label);
  };
  for (int ix = 0; ix < g.order(); ++ix)
    if (g.degree_ix(ix) == 0) out << "vertex " << show(g.labels[ix]) << "\n";
  for (auto [u, v] : g.edge_list()) out << show(u) << " " << show(v) << "\n";
}

std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fnv1a_hex(const std::string& bytes) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace pmk
