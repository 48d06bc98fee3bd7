#ifndef SIGNCUT_GRAPH_IO_HPP
#define SIGNCUT_GRAPH_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "signcut/sgraph.hpp"

namespace signcut {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Parses a full token as a finite double; returns false on failure.
bool parse_double(const std::string& token, double& out);

// Edge-list format:
//   n <count>
//   i j w        (one line per edge, 0-based, either orientation)
// Blank lines and lines starting with '#' are skipped. Writing emits each
// edge once with i < j, in (i, j) order.
SignedGraph read_graph(std::istream& in);
void write_graph(std::ostream& out, const SignedGraph& g);

// Vocabulary sidecar: one node name per line, in node order.
std::vector<std::string> read_vocabulary(std::istream& in);
void write_vocabulary(std::ostream& out, const std::vector<std::string>& words);

/// Partition read back from TSV, keeping the node names.
struct LabeledPartition {
  std::vector<std::string> labels;
  Partition partition;
};

// Partition TSV: "label<TAB>cluster_id", one line per node in node order.
void write_partition(std::ostream& out, const SignedGraph& g, const Partition& p);
void write_partition(std::ostream& out, const std::vector<std::string>& labels,
                     const Partition& p);
/// k is taken as one more than the largest cluster id.
LabeledPartition read_partition(std::istream& in);

}  // namespace signcut

#endif  // SIGNCUT_GRAPH_IO_HPP
