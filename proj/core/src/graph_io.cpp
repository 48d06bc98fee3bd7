#include "signcut/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "signcut/error.hpp"

namespace signcut {
namespace {

std::string line_context(std::size_t line_no) {
  return "line " + std::to_string(line_no) + ": ";
}

bool skippable(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

bool parse_index(const std::string& token, Index& out) {
  long long value = 0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) return false;
  out = static_cast<Index>(value);
  return true;
}

}  // namespace

std::string format_double(double value) {
  if (value == 0.0) return "0";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw Error(ErrorCode::kInvalidArgument, "cannot format number");
  return std::string(buf, ptr);
}

bool parse_double(const std::string& token, double& out) {
  if (token.empty()) return false;
  const char* begin = token.data();
  const char* end = token.data() + token.size();
  if (*begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

SignedGraph read_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  Index n = -1;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (skippable(line)) continue;
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (n < 0) {
      if (tokens.size() != 2 || tokens[0] != "n" || !parse_index(tokens[1], n) || n < 0) {
        throw Error(ErrorCode::kParse, line_context(line_no) + "expected header \"n <count>\"");
      }
      continue;
    }
    Edge e;
    if (tokens.size() != 3 || !parse_index(tokens[0], e.i) || !parse_index(tokens[1], e.j) ||
        !parse_double(tokens[2], e.w)) {
      throw Error(ErrorCode::kParse, line_context(line_no) + "expected \"i j w\"");
    }
    if (e.i < 0 || e.j < 0 || e.i >= n || e.j >= n) {
      throw Error(ErrorCode::kParse, line_context(line_no) + "node index out of range");
    }
    edges.push_back(e);
  }
  if (n < 0) throw Error(ErrorCode::kParse, "missing \"n <count>\" header");
  return SignedGraph::from_edges(n, edges);
}

void write_graph(std::ostream& out, const SignedGraph& g) {
  out << "n " << g.size() << '\n';
  for (const Edge& e : g.edges()) {
    out << e.i << ' ' << e.j << ' ' << format_double(e.w) << '\n';
  }
}

std::vector<std::string> read_vocabulary(std::istream& in) {
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.empty()) continue;
    words.push_back(line);
  }
  return words;
}

void write_vocabulary(std::ostream& out, const std::vector<std::string>& words) {
  for (const auto& w : words) out << w << '\n';
}

void write_partition(std::ostream& out, const SignedGraph& g, const Partition& p) {
  if (p.size() != g.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "partition size does not match graph");
  }
  for (Index i = 0; i < g.size(); ++i) {
    out << g.label(i) << '\t' << p.assign[static_cast<std::size_t>(i)] << '\n';
  }
}

void write_partition(std::ostream& out, const std::vector<std::string>& labels,
                     const Partition& p) {
  if (labels.size() != p.assign.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "label count does not match partition");
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out << labels[i] << '\t' << p.assign[i] << '\n';
  }
}

LabeledPartition read_partition(std::istream& in) {
  LabeledPartition result;
  std::vector<int> assign;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    const auto tab = line.rfind('\t');
    Index cluster = 0;
    if (tab == std::string::npos || tab == 0 || !parse_index(line.substr(tab + 1), cluster) ||
        cluster < 0) {
      throw Error(ErrorCode::kParse, line_context(line_no) + "expected \"label<TAB>cluster_id\"");
    }
    result.labels.push_back(line.substr(0, tab));
    assign.push_back(static_cast<int>(cluster));
  }
  const int k = assign.empty() ? 1 : *std::max_element(assign.begin(), assign.end()) + 1;
  result.partition = Partition::from_assignments(std::move(assign), k);
  return result;
}

}  // namespace signcut
