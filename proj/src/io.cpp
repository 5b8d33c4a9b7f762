#include "pamlab/io.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <sstream>

namespace pamlab {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
T parse_int(std::string_view sv, std::size_t line) {
  T value{};
  auto [p, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), value);
  if (ec != std::errc{} || p != sv.data() + sv.size())
    throw ParseError(line, "expected an integer, got '" + std::string(sv) + "'");
  return value;
}

double parse_double(std::string_view sv, std::size_t line) {
  std::string buf(sv);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size())
    throw ParseError(line, "expected a number, got '" + buf + "'");
  return v;
}

std::string_view field_value(std::string_view token, std::string_view key,
                             std::size_t line) {
  if (token.size() <= key.size() + 1 || token.substr(0, key.size()) != key ||
      token[key.size()] != '=')
    throw ParseError(line, "malformed header field '" + std::string(token) + "'");
  return token.substr(key.size() + 1);
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string serialize_graph(const LabeledGraph& g) {
  std::ostringstream os;
  os << "#pamlab v1 variant=" << variant_letter(g.variant) << " n=" << g.n
     << " m=" << g.m << " delta=" << format_double(g.delta) << " seed=" << g.seed
     << " construction="
     << (g.construction == Construction::sequential ? "seq" : "urn") << "\n";
  for (const auto& e : g.edges)
    os << e.younger << ' ' << e.label << ' ' << e.older << "\n";
  if (!g.psi.empty()) {
    os << "#psi\n";
    for (Vertex v = 1; v <= g.n && static_cast<std::size_t>(v) < g.psi.size(); ++v)
      os << v << ' ' << format_double(g.psi[static_cast<std::size_t>(v)]) << "\n";
  }
  return os.str();
}

LabeledGraph parse_graph(std::string_view text) {
  LabeledGraph g;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  bool have_header = false;
  bool in_psi = false;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos
                                                 ? text.size() - pos
                                                 : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("#pamlab", 0) == 0) {
        auto tok = split_ws(line);
        if (tok.size() != 8 || tok[1] != "v1")
          throw ParseError(lineno, "unsupported header");
        const auto var = field_value(tok[2], "variant", lineno);
        if (var.size() != 1) throw ParseError(lineno, "bad variant");
        g.variant = variant_from_letter(var[0]);
        g.n = parse_int<Vertex>(field_value(tok[3], "n", lineno), lineno);
        g.m = parse_int<int>(field_value(tok[4], "m", lineno), lineno);
        g.delta = parse_double(field_value(tok[5], "delta", lineno), lineno);
        g.seed = parse_int<std::uint64_t>(field_value(tok[6], "seed", lineno), lineno);
        const auto cons = field_value(tok[7], "construction", lineno);
        if (cons == "seq") {
          g.construction = Construction::sequential;
        } else if (cons == "urn") {
          g.construction = Construction::urn;
        } else {
          throw ParseError(lineno, "bad construction");
        }
        have_header = true;
        continue;
      }
      if (line.rfind("#psi", 0) == 0) {
        if (!have_header) throw ParseError(lineno, "#psi before header");
        in_psi = true;
        g.psi.assign(static_cast<std::size_t>(g.n) + 1, 0.0);
        continue;
      }
      throw ParseError(lineno, "unknown directive");
    }
    if (!have_header) throw ParseError(lineno, "missing #pamlab header");
    auto tok = split_ws(line);
    if (in_psi) {
      if (tok.size() != 2) throw ParseError(lineno, "psi line needs 'vertex value'");
      const Vertex v = parse_int<Vertex>(tok[0], lineno);
      if (v < 1 || v > g.n) throw ParseError(lineno, "psi vertex out of range");
      g.psi[static_cast<std::size_t>(v)] = parse_double(tok[1], lineno);
    } else {
      if (tok.size() != 3) throw ParseError(lineno, "edge line needs 'younger label older'");
      EdgeTriple e;
      e.younger = parse_int<Vertex>(tok[0], lineno);
      e.label = parse_int<std::int32_t>(tok[1], lineno);
      e.older = parse_int<Vertex>(tok[2], lineno);
      g.edges.push_back(e);
    }
  }
  if (!have_header) throw ParseError(1, "missing #pamlab header");
  g.finalize();
  if (const std::string err = validate_graph(g); !err.empty())
    throw ParseError(1, "graph violates variant invariants: " + err);
  return g;
}

std::vector<EdgeTriple> parse_edge_lines(std::string_view text) {
  std::vector<EdgeTriple> edges;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos
                                                 ? text.size() - pos
                                                 : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto tok = split_ws(line);
    if (tok.size() != 3) throw ParseError(lineno, "edge line needs three fields");
    edges.push_back({parse_int<Vertex>(tok[0], lineno),
                     parse_int<std::int32_t>(tok[1], lineno),
                     parse_int<Vertex>(tok[2], lineno)});
  }
  return edges;
}

}  // namespace pamlab
