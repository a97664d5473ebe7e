#include "sepcode/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace sepcode {
namespace {

constexpr long long kMaxNodes = 1LL << 28;

} // namespace

EmbeddedGraph read_graph(std::istream &in) {
  std::string line;
  if (!std::getline(in, line)) {
    fail(ErrorCode::ParseError, "line 1: missing header line");
  }
  std::istringstream header(line);
  long long n = -1;
  long long declared = -1;
  if (!(header >> n >> declared) || n < 0 || declared < 0 || n > kMaxNodes) {
    fail(ErrorCode::ParseError, "line 1: header must be 'n g' with 0 <= n <= " + std::to_string(kMaxNodes));
  }
  std::vector<std::vector<NodeId>> rot(static_cast<std::size_t>(n));
  std::size_t line_no = 1;
  for (auto &r : rot) {
    ++line_no;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (!std::getline(in, line)) {
      fail(ErrorCode::ParseError, where + "expected " + std::to_string(n) + " rotation lines");
    }
    std::istringstream row(line);
    long long w = 0;
    while (row >> w) {
      if (w < 0 || w >= n) {
        fail(ErrorCode::ParseError, where + "neighbor " + std::to_string(w) + " out of range");
      }
      r.push_back(static_cast<NodeId>(w));
    }
    if (!row.eof()) {
      fail(ErrorCode::ParseError, where + "non-integer token");
    }
  }
  EmbeddedGraph g;
  try {
    g = EmbeddedGraph::from_rotations(rot);
  } catch (const Error &e) {
    fail(ErrorCode::ParseError, std::string("invalid rotation system: ") + e.what());
  }
  if (genus(g) != static_cast<std::size_t>(declared)) {
    fail(ErrorCode::ParseError, "declared genus " + std::to_string(declared) + " but rotation system has genus " +
                                    std::to_string(genus(g)));
  }
  return g;
}

void write_graph(std::ostream &out, const EmbeddedGraph &g) {
  out << g.node_count() << ' ' << genus(g) << '\n';
  for (NodeId v = 0; v < g.node_count(); ++v) {
    bool first = true;
    for (NodeId w : g.rotation(v)) {
      out << (first ? "" : " ") << w;
      first = false;
    }
    out << '\n';
  }
}

EmbeddedGraph load_graph(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorCode::ParseError, "cannot open " + path);
  }
  return read_graph(in);
}

void save_graph(const std::string &path, const EmbeddedGraph &g) {
  std::ofstream out(path);
  if (!out) {
    fail(ErrorCode::ParseError, "cannot write " + path);
  }
  write_graph(out, g);
}

} // namespace sepcode
