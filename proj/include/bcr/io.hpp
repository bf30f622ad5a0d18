#pragma once

// Text, JSON and DOT formats. Every index written to a file is 1-based.
//
//   graph record   V <b> <w>
//                  L <n> [v_1 .. v_n]      vertex of each small loop
//                  E <S|D> <tail> <head>   one line per edge, in label order
//   basis          BASIS k=<k> l=<l> g=<g> parity=odd-odd, then records
//   matrix         MATRIX <rows> <cols>, then ENTRY <i> <j> <num>/<den>
//   vector         VEC <idx> <num>/<den> per nonzero coordinate
//   cocycle        basis file followed by VECTOR <j> blocks of VEC lines
//   diagram        LINES t_1 .. t_s, then CHORD (i,l) (i',l') <+|->

#include <fstream>
#include <istream>
#include <ostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "bcr/chord.hpp"
#include "bcr/complex.hpp"
#include "bcr/error.hpp"
#include "bcr/graph.hpp"
#include "bcr/rational.hpp"
#include "bcr/sparse_matrix.hpp"

namespace bcr {

namespace detail {

[[noreturn]] inline void parse_error(int line, const std::string& what) {
  throw Error(ErrorCode::ParseFailure, "line " + std::to_string(line) + ": " + what);
}

struct LineReader {
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank line, trimmed of trailing whitespace; false at EOF.
  bool peek(std::string& out) {
    if (!buffered_) {
      while (std::getline(in_, line_)) {
        ++number_;
        while (!line_.empty() && (line_.back() == '\r' || line_.back() == ' ' || line_.back() == '\t')) line_.pop_back();
        if (!line_.empty()) {
          buffered_ = true;
          break;
        }
      }
    }
    if (buffered_) out = line_;
    return buffered_;
  }
  bool next(std::string& out) {
    const bool ok = peek(out);
    buffered_ = false;
    return ok;
  }
  int number() const noexcept { return number_; }

 private:
  std::istream& in_;
  std::string line_;
  bool buffered_ = false;
  int number_ = 0;
};

inline std::string keyword(const std::string& line) { return line.substr(0, line.find(' ')); }

inline int parse_int(const std::string& token, int line) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(token, &used);
  } catch (const std::exception&) {
    parse_error(line, "expected an integer, got '" + token + "'");
  }
  if (used != token.size()) parse_error(line, "expected an integer, got '" + token + "'");
  return value;
}

inline std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

inline LabeledBcrGraph read_graph_record(LineReader& reader) {
  std::string line;
  if (!reader.next(line) || keyword(line) != "V") parse_error(reader.number(), "expected 'V <b> <w>'");
  auto t = tokens(line);
  if (t.size() != 3) parse_error(reader.number(), "expected 'V <b> <w>'");
  const int b = parse_int(t[1], reader.number());
  const int w = parse_int(t[2], reader.number());
  if (b < 0 || w < 0) parse_error(reader.number(), "negative vertex count");
  std::vector<VertexColor> colors(b, VertexColor::Black);
  colors.resize(b + w, VertexColor::White);

  if (!reader.next(line) || keyword(line) != "L") parse_error(reader.number(), "expected 'L <n> ...'");
  t = tokens(line);
  if (t.size() < 2) parse_error(reader.number(), "expected 'L <n> ...'");
  const int n = parse_int(t[1], reader.number());
  if (n < 0 || static_cast<int>(t.size()) != n + 2) parse_error(reader.number(), "loop list length mismatch");
  std::vector<int> loops(b + w, 0);
  for (int i = 0; i < n; ++i) {
    const int v = parse_int(t[i + 2], reader.number());
    if (v < 1 || v > b + w) throw Error(ErrorCode::DanglingVertexLabel, "loop at vertex " + std::to_string(v));
    ++loops[v - 1];
  }

  std::vector<Edge> edges;
  while (reader.peek(line) && keyword(line) == "E") {
    reader.next(line);
    t = tokens(line);
    if (t.size() != 4 || (t[1] != "S" && t[1] != "D")) parse_error(reader.number(), "expected 'E <S|D> <tail> <head>'");
    edges.push_back(Edge{t[1] == "S" ? EdgeKind::Solid : EdgeKind::Dashed, parse_int(t[2], reader.number()) - 1,
                         parse_int(t[3], reader.number()) - 1});
  }
  return build_graph(std::move(colors), std::move(edges), std::move(loops));
}

}  // namespace detail

inline void write_graph(std::ostream& out, const LabeledBcrGraph& g) {
  out << "V " << g.black_count() << ' ' << g.white_count() << '\n';
  out << "L " << g.small_loop_count();
  for (int v = 0; v < g.vertex_count(); ++v) {
    for (int i = 0; i < g.loops_at(v); ++i) out << ' ' << v + 1;
  }
  out << '\n';
  for (const Edge& e : g.edges()) {
    out << "E " << (e.kind == EdgeKind::Solid ? 'S' : 'D') << ' ' << e.tail + 1 << ' ' << e.head + 1 << '\n';
  }
}

inline std::string format_graph(const LabeledBcrGraph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

inline LabeledBcrGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  detail::LineReader reader(in);
  LabeledBcrGraph g = detail::read_graph_record(reader);
  std::string rest;
  if (reader.peek(rest)) detail::parse_error(reader.number(), "trailing content after graph record");
  return g;
}

inline void write_basis(std::ostream& out, const Basis& basis) {
  out << "BASIS k=" << basis.order << " l=" << basis.defect << " g=" << basis.loop_number << " parity=odd-odd\n";
  for (const LabeledBcrGraph& g : basis.elements) write_graph(out, g);
}

namespace detail {

inline Basis read_basis(LineReader& reader) {
  std::string line;
  if (!reader.next(line)) parse_error(reader.number(), "empty basis file");
  static const std::regex header(R"(BASIS k=(-?\d+) l=(-?\d+) g=(-?\d+) parity=odd-odd)");
  std::smatch m;
  if (!std::regex_match(line, m, header)) parse_error(reader.number(), "bad BASIS header");
  Basis basis{std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3]), {}};
  while (reader.peek(line) && keyword(line) == "V") basis.elements.push_back(read_graph_record(reader));
  return basis;
}

}  // namespace detail

inline Basis read_basis(std::istream& in) {
  detail::LineReader reader(in);
  Basis basis = detail::read_basis(reader);
  std::string rest;
  if (reader.peek(rest)) detail::parse_error(reader.number(), "unexpected '" + rest + "'");
  return basis;
}

inline void write_matrix(std::ostream& out, const SparseRationalMatrix& m) {
  out << "MATRIX " << m.rows() << ' ' << m.cols() << '\n';
  for (const auto& [key, value] : m.entries()) {
    out << "ENTRY " << key.first + 1 << ' ' << key.second + 1 << ' ' << to_string(value) << '\n';
  }
}

inline SparseRationalMatrix read_matrix(std::istream& in) {
  detail::LineReader reader(in);
  std::string line;
  if (!reader.next(line) || detail::keyword(line) != "MATRIX") detail::parse_error(reader.number(), "expected MATRIX");
  auto t = detail::tokens(line);
  if (t.size() != 3) detail::parse_error(reader.number(), "expected 'MATRIX <rows> <cols>'");
  SparseRationalMatrix m(detail::parse_int(t[1], reader.number()), detail::parse_int(t[2], reader.number()));
  while (reader.next(line)) {
    t = detail::tokens(line);
    if (t.size() != 4 || t[0] != "ENTRY") detail::parse_error(reader.number(), "expected 'ENTRY <i> <j> <q>'");
    const int i = detail::parse_int(t[1], reader.number());
    const int j = detail::parse_int(t[2], reader.number());
    if (i < 1 || j < 1 || i > static_cast<int>(m.rows()) || j > static_cast<int>(m.cols())) {
      detail::parse_error(reader.number(), "entry outside the matrix");
    }
    m.set(i - 1, j - 1, parse_rational(t[3]));
  }
  return m;
}

inline void write_vector(std::ostream& out, const RationalVector& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) out << "VEC " << i + 1 << ' ' << to_string(v[i]) << '\n';
  }
}

/// A basis together with coordinate vectors over it.
struct CocycleFile {
  Basis basis;
  std::vector<RationalVector> vectors;
};

inline void write_cocycles(std::ostream& out, const CocycleFile& file) {
  write_basis(out, file.basis);
  for (std::size_t j = 0; j < file.vectors.size(); ++j) {
    out << "VECTOR " << j + 1 << '\n';
    write_vector(out, file.vectors[j]);
  }
}

inline CocycleFile read_cocycles(std::istream& in) {
  detail::LineReader reader(in);
  CocycleFile file{detail::read_basis(reader), {}};
  std::string line;
  while (reader.next(line)) {
    auto t = detail::tokens(line);
    if (t[0] == "VECTOR") {
      if (t.size() != 2 || detail::parse_int(t[1], reader.number()) != static_cast<int>(file.vectors.size()) + 1) {
        detail::parse_error(reader.number(), "VECTOR blocks must be numbered 1, 2, ...");
      }
      file.vectors.emplace_back(file.basis.size(), Rational(0));
    } else if (t[0] == "VEC") {
      if (file.vectors.empty() || t.size() != 3) detail::parse_error(reader.number(), "VEC outside a VECTOR block");
      const int i = detail::parse_int(t[1], reader.number());
      if (i < 1 || i > static_cast<int>(file.basis.size())) detail::parse_error(reader.number(), "VEC index out of range");
      file.vectors.back()[i - 1] = parse_rational(t[2]);
    } else {
      detail::parse_error(reader.number(), "unexpected '" + line + "'");
    }
  }
  return file;
}

inline void write_diagram(std::ostream& out, const ChordDiagram& c) {
  out << "LINES";
  for (int t : c.heights) out << ' ' << t;
  out << '\n';
  for (const Chord& ch : c.chords) {
    out << "CHORD (" << ch.from.line << ',' << ch.from.height << ") (" << ch.to.line << ',' << ch.to.height << ") "
        << (ch.sign > 0 ? '+' : '-') << '\n';
  }
}

inline ChordDiagram read_diagram(std::istream& in) {
  detail::LineReader reader(in);
  std::string line;
  if (!reader.next(line) || detail::keyword(line) != "LINES") detail::parse_error(reader.number(), "expected LINES");
  auto t = detail::tokens(line);
  std::vector<int> heights;
  for (std::size_t i = 1; i < t.size(); ++i) heights.push_back(detail::parse_int(t[i], reader.number()));
  static const std::regex chord(R"(CHORD\s+\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s+\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s+([+-]))");
  std::vector<Chord> chords;
  while (reader.next(line)) {
    std::smatch m;
    if (!std::regex_match(line, m, chord)) detail::parse_error(reader.number(), "expected 'CHORD (i,l) (i',l') <+|->'");
    chords.push_back(Chord{{std::stoi(m[1]), std::stoi(m[2])}, {std::stoi(m[3]), std::stoi(m[4])}, m[5] == "+" ? 1 : -1});
  }
  return validate_diagram(std::move(heights), std::move(chords));
}

inline nlohmann::json diagram_to_json(const ChordDiagram& c) {
  nlohmann::json chords = nlohmann::json::array();
  for (const Chord& ch : c.chords) {
    chords.push_back({{"from", {ch.from.line, ch.from.height}},
                      {"to", {ch.to.line, ch.to.height}},
                      {"sign", ch.sign > 0 ? "+" : "-"}});
  }
  return {{"lines", c.heights}, {"chords", chords}};
}

inline ChordDiagram diagram_from_json(const nlohmann::json& j) {
  try {
    std::vector<Chord> chords;
    for (const auto& ch : j.at("chords")) {
      const std::string sign = ch.at("sign").get<std::string>();
      if (sign != "+" && sign != "-") throw Error(ErrorCode::ParseFailure, "chord sign must be '+' or '-'");
      chords.push_back(Chord{{ch.at("from").at(0).get<int>(), ch.at("from").at(1).get<int>()},
                             {ch.at("to").at(0).get<int>(), ch.at("to").at(1).get<int>()},
                             sign == "+" ? 1 : -1});
    }
    return validate_diagram(j.at("lines").get<std::vector<int>>(), std::move(chords));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseFailure, e.what());
  }
}

/// Text or JSON, chosen by the first non-blank character.
inline ChordDiagram parse_diagram(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ParseFailure, e.what());
    }
    return diagram_from_json(j);
  }
  std::istringstream in(text);
  return read_diagram(in);
}

inline nlohmann::json graph_to_json(const LabeledBcrGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.kind == EdgeKind::Solid ? "S" : "D", e.tail + 1, e.head + 1});
  nlohmann::json loops = nlohmann::json::array();
  for (int v = 0; v < g.vertex_count(); ++v) {
    for (int i = 0; i < g.loops_at(v); ++i) loops.push_back(v + 1);
  }
  return {{"black", g.black_count()}, {"white", g.white_count()}, {"loops", loops}, {"edges", edges}};
}

inline LabeledBcrGraph graph_from_json(const nlohmann::json& j) {
  try {
    const int b = j.at("black").get<int>();
    const int w = j.at("white").get<int>();
    if (b < 0 || w < 0) throw Error(ErrorCode::ParseFailure, "negative vertex count");
    std::vector<VertexColor> colors(b, VertexColor::Black);
    colors.resize(b + w, VertexColor::White);
    std::vector<int> loops(b + w, 0);
    for (const auto& v : j.at("loops")) {
      const int label = v.get<int>();
      if (label < 1 || label > b + w) throw Error(ErrorCode::DanglingVertexLabel, "loop vertex");
      ++loops[label - 1];
    }
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      const std::string kind = e.at(0).get<std::string>();
      if (kind != "S" && kind != "D") throw Error(ErrorCode::ParseFailure, "edge kind must be 'S' or 'D'");
      edges.push_back(Edge{kind == "S" ? EdgeKind::Solid : EdgeKind::Dashed, e.at(1).get<int>() - 1, e.at(2).get<int>() - 1});
    }
    return build_graph(std::move(colors), std::move(edges), std::move(loops));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseFailure, e.what());
  }
}

inline nlohmann::json basis_to_json(const Basis& basis) {
  nlohmann::json graphs = nlohmann::json::array();
  for (const auto& g : basis.elements) graphs.push_back(graph_to_json(g));
  return {{"k", basis.order}, {"l", basis.defect}, {"g", basis.loop_number}, {"parity", "odd-odd"}, {"graphs", graphs}};
}

inline Basis basis_from_json(const nlohmann::json& j) {
  try {
    Basis basis{j.at("k").get<int>(), j.at("l").get<int>(), j.at("g").get<int>(), {}};
    for (const auto& g : j.at("graphs")) basis.elements.push_back(graph_from_json(g));
    return basis;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseFailure, e.what());
  }
}

/// One `digraph` block per graph. Nodes v1..vN in label order; solid edges
/// precede dashed ones; a dashed self-edge is a small loop.
inline void write_dot(std::ostream& out, const std::vector<LabeledBcrGraph>& graphs) {
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const LabeledBcrGraph& g = graphs[i];
    out << "digraph G" << i + 1 << " {\n";
    for (int v = 0; v < g.vertex_count(); ++v) {
      out << "  v" << v + 1 << " [style=filled, fillcolor=" << (g.color(v) == VertexColor::Black ? "black" : "white")
          << "];\n";
    }
    for (const Edge& e : g.edges()) {
      out << "  v" << e.tail + 1 << " -> v" << e.head + 1 << " [style=" << (e.kind == EdgeKind::Solid ? "solid" : "dashed")
          << "];\n";
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
      for (int l = 0; l < g.loops_at(v); ++l) out << "  v" << v + 1 << " -> v" << v + 1 << " [style=dashed];\n";
    }
    out << "}\n";
  }
}

/// Reads back what `write_dot` produces.
inline std::vector<LabeledBcrGraph> parse_dot(const std::string& text) {
  static const std::regex open(R"(digraph\s+\w+\s*\{)");
  static const std::regex node(R"(v(\d+)\s*\[style=filled,\s*fillcolor=(black|white)\];)");
  static const std::regex edge(R"(v(\d+)\s*->\s*v(\d+)\s*\[style=(solid|dashed)\];)");
  std::vector<LabeledBcrGraph> graphs;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  bool inside = false;
  GraphData data;
  while (std::getline(in, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    std::smatch m;
    if (!inside) {
      if (!std::regex_match(line, open)) detail::parse_error(number, "expected 'digraph <name> {'");
      inside = true;
      data = GraphData{};
    } else if (line == "}") {
      graphs.push_back(build_graph(std::move(data)));
      inside = false;
    } else if (std::regex_match(line, m, node)) {
      if (std::stoi(m[1]) != static_cast<int>(data.colors.size()) + 1) detail::parse_error(number, "nodes out of order");
      data.colors.push_back(m[2] == "black" ? VertexColor::Black : VertexColor::White);
      data.loops.push_back(0);
    } else if (std::regex_match(line, m, edge)) {
      const int a = std::stoi(m[1]) - 1;
      const int b = std::stoi(m[2]) - 1;
      if (a < 0 || b < 0 || a >= static_cast<int>(data.colors.size()) || b >= static_cast<int>(data.colors.size())) {
        detail::parse_error(number, "edge to an undeclared node");
      }
      if (a == b) {
        if (m[3] != "dashed") detail::parse_error(number, "solid self-edge");
        ++data.loops[a];
      } else {
        data.edges.push_back(Edge{m[3] == "solid" ? EdgeKind::Solid : EdgeKind::Dashed, a, b});
      }
    } else {
      detail::parse_error(number, "unrecognized DOT line");
    }
  }
  if (inside) detail::parse_error(number, "unterminated digraph");
  return graphs;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content) || !out.flush()) throw Error(ErrorCode::IoFailure, "cannot write " + path);
}

}  // namespace bcr
