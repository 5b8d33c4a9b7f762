#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pamlab/graph.hpp"

namespace pamlab {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Text graph format:
//   #pamlab v1 variant=<a|b|d> n=<n> m=<m> delta=<float> seed=<u64> construction=<seq|urn>
//   <younger> <label> <older>            (one line per edge)
//   #psi                                 (optional)
//   <vertex> <psi_value>
// Doubles print with 17 significant digits so a round trip is bit exact.
std::string serialize_graph(const LabeledGraph& g);
LabeledGraph parse_graph(std::string_view text);

// Edge lines only (no header), as in the graph format.
std::vector<EdgeTriple> parse_edge_lines(std::string_view text);

std::string format_double(double x);

}  // namespace pamlab
