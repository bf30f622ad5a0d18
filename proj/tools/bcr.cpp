// bcr: enumerate graph bases, assemble delta, find cocycles and pair them
// with chord diagrams.
//
// Exit codes: 0 success, 2 validation or parse error, 3 unsupported range,
// 4 I/O failure.

#include <chrono>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bcr/bcr.hpp"

namespace {

using bcr::Error;
using bcr::ErrorCode;
using nlohmann::json;

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnsupportedRange: return 3;
    case ErrorCode::IoFailure: return 4;
    default: return 2;
  }
}

struct Output {
  std::string path;
  std::string format = "text";
  bool timing = false;

  void emit(const std::string& content) const {
    if (path.empty()) {
      std::cout << content;
    } else {
      bcr::write_file(path, content);
    }
  }
};

json with_report(json payload, bcr::RunReport report, const Output& out, double seconds) {
  if (out.timing) report.wall_seconds = seconds;
  payload["report"] = bcr::report_to_json(report);
  return payload;
}

json matrix_to_json(const bcr::SparseRationalMatrix& m) {
  json entries = json::array();
  for (const auto& [key, value] : m.entries()) entries.push_back({key.first + 1, key.second + 1, bcr::to_string(value)});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

json vector_to_json(const bcr::RationalVector& v) {
  json entries = json::array();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) entries.push_back({i + 1, bcr::to_string(v[i])});
  }
  return entries;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void require_format(const Output& out, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (out.format == f) return;
  }
  throw Error(ErrorCode::ParseFailure, "format '" + out.format + "' is not available for this command");
}

int run_enumerate(int k, int l, int g, const Output& out) {
  Timer timer;
  const bcr::Basis basis = bcr::enumerate_basis(k, l, g);
  std::ostringstream text;
  if (out.format == "text") {
    bcr::write_basis(text, basis);
  } else if (out.format == "dot") {
    bcr::write_dot(text, basis.elements);
  } else {
    bcr::RunReport report{"enumerate", {{"order", std::to_string(k)}, {"defect", std::to_string(l)}, {"loops", std::to_string(g)}},
                          {{"basis_size", static_cast<std::int64_t>(basis.size())}}, {}, {}};
    text << dump(with_report(bcr::basis_to_json(basis), report, out, timer.seconds()));
  }
  out.emit(text.str());
  std::cerr << "basis size " << basis.size() << ", " << timer.seconds() << " s\n";
  return 0;
}

int run_delta(int k, int l, int g, const Output& out) {
  require_format(out, {"text", "json"});
  Timer timer;
  const bcr::Basis domain = bcr::enumerate_basis(k, l, g);
  const bcr::Basis codomain = bcr::enumerate_basis(k, l + 1, g);
  const auto m = bcr::delta_matrix(domain, codomain);
  const std::size_t r = bcr::rank(m);
  std::ostringstream text;
  if (out.format == "text") {
    bcr::write_matrix(text, m);
  } else {
    bcr::RunReport report{"delta",
                          {{"order", std::to_string(k)}, {"defect", std::to_string(l)}, {"loops", std::to_string(g)}},
                          {{"domain_size", static_cast<std::int64_t>(domain.size())},
                           {"codomain_size", static_cast<std::int64_t>(codomain.size())},
                           {"rank", static_cast<std::int64_t>(r)}},
                          {},
                          {}};
    text << dump(with_report({{"matrix", matrix_to_json(m)}}, report, out, timer.seconds()));
  }
  out.emit(text.str());
  std::cerr << "delta " << domain.size() << " -> " << codomain.size() << ", rank " << r << ", " << timer.seconds()
            << " s\n";
  return 0;
}

int run_cocycles(int k, int g, const std::string& normalize, const Output& out) {
  require_format(out, {"text", "json"});
  Timer timer;
  const bcr::Basis domain = bcr::enumerate_basis(k, 0, g);
  const bcr::Basis codomain = bcr::enumerate_basis(k, 1, g);
  const auto m = bcr::delta_matrix(domain, codomain);
  const std::size_t r = bcr::rank(m);
  bcr::CocycleFile file{domain, {}};
  bcr::RunReport report{"cocycles",
                        {{"order", std::to_string(k)}, {"loops", std::to_string(g)}, {"normalize", normalize}},
                        {{"basis_size", static_cast<std::int64_t>(domain.size())},
                         {"codomain_size", static_cast<std::int64_t>(codomain.size())},
                         {"rank", static_cast<std::int64_t>(r)},
                         {"kernel_dimension", static_cast<std::int64_t>(domain.size() - r)}},
                        {},
                        {}};
  if (normalize == "gamma-e") {
    const bcr::ThetaFrame frame = bcr::theta_frame();
    if (bcr::order(frame.gamma_e.representative) != k || bcr::loop_number(frame.gamma_e.representative) != g) {
      throw Error(ErrorCode::OrderMismatch, "gamma-e normalization needs order 3 and 2 loops");
    }
    const auto v = bcr::normalize_gamma_e(m, domain, frame);
    if (!v) throw Error(ErrorCode::InternalCoverage, "no cocycle has a nonzero gamma-e coefficient");
    const bcr::GraphVector h = bcr::to_graph_vector(domain, *v);
    report.results["w_gamma_d"] = bcr::to_string(frame.gamma_d.weight(h));
    report.results["w_gamma_e"] = bcr::to_string(frame.gamma_e.weight(h));
    file.vectors.push_back(*v);
  } else if (normalize.empty()) {
    file.vectors = bcr::kernel_basis(m);
  } else {
    throw Error(ErrorCode::ParseFailure, "unknown normalization '" + normalize + "'");
  }
  std::ostringstream text;
  if (out.format == "text") {
    bcr::write_cocycles(text, file);
  } else {
    json vectors = json::array();
    for (const auto& v : file.vectors) vectors.push_back(vector_to_json(v));
    text << dump(with_report({{"basis", bcr::basis_to_json(domain)}, {"vectors", vectors}}, report, out, timer.seconds()));
  }
  out.emit(text.str());
  std::cerr << "cocycles k=" << k << " g=" << g << ": basis " << domain.size() << ", rank " << r << ", kernel "
            << domain.size() - r;
  for (const auto& [key, value] : report.results) std::cerr << ", " << key << " " << value;
  std::cerr << ", " << timer.seconds() << " s\n";
  return 0;
}

std::string signs_text(const std::vector<int>& signs) {
  std::string s;
  for (int x : signs) s += (s.empty() ? "" : ",") + std::string(x > 0 ? "+1" : "-1");
  return s;
}

int run_pair(const std::string& cocycle_path, const std::string& diagram_path, int vector_index, const Output& out) {
  require_format(out, {"text", "json"});
  Timer timer;
  std::istringstream cocycle_text(bcr::read_file(cocycle_path));
  const bcr::CocycleFile file = bcr::read_cocycles(cocycle_text);
  const bcr::ChordDiagram diagram = bcr::parse_diagram(bcr::read_file(diagram_path));
  bcr::GraphVector h;
  if (!file.vectors.empty()) {
    if (vector_index < 1 || vector_index > static_cast<int>(file.vectors.size())) {
      throw Error(ErrorCode::ParseFailure, "cocycle file has no VECTOR " + std::to_string(vector_index));
    }
    h = bcr::to_graph_vector(file.basis, file.vectors[vector_index - 1]);
  }
  const bcr::CountingResult result = bcr::counting_formula(h, diagram);
  std::ostringstream text;
  if (out.format == "text") {
    text << "VALUE " << bcr::to_string(result.value) << '\n';
    text << "NEGATIVE_CHORDS " << result.negative_chords << '\n';
    for (std::size_t i = 0; i < result.breakdown.size(); ++i) {
      const auto& x = result.breakdown[i];
      text << "CLASS " << i + 1 << " weight=" << bcr::to_string(x.weight) << " aut=" << x.automorphisms
           << " signs=" << signs_text(x.signs) << " contribution=" << bcr::to_string(x.contribution) << '\n';
      bcr::write_graph(text, x.representative);
    }
  } else {
    json classes = json::array();
    for (const auto& x : result.breakdown) {
      classes.push_back({{"graph", bcr::graph_to_json(x.representative)},
                         {"weight", bcr::to_string(x.weight)},
                         {"automorphisms", x.automorphisms},
                         {"signs", x.signs},
                         {"contribution", bcr::to_string(x.contribution)}});
    }
    bcr::RunReport report{"pair",
                          {{"cocycle", cocycle_path}, {"diagram", diagram_path}, {"vector", std::to_string(vector_index)}},
                          {{"negative_chords", result.negative_chords}, {"classes", static_cast<std::int64_t>(classes.size())}},
                          {{"value", bcr::to_string(result.value)}},
                          {}};
    text << dump(with_report({{"breakdown", classes}}, report, out, timer.seconds()));
  }
  out.emit(text.str());
  std::cerr << "pairing value " << bcr::to_string(result.value) << ", " << timer.seconds() << " s\n";
  return 0;
}

int run_gset(const std::string& diagram_path, const Output& out) {
  Timer timer;
  const bcr::ChordDiagram diagram = bcr::parse_diagram(bcr::read_file(diagram_path));
  const auto entries = bcr::enumerate_G(diagram);
  std::ostringstream text;
  if (out.format == "text") {
    text << "GSET " << entries.size() << " loop_parameter=" << bcr::loop_parameter(diagram) << '\n';
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto& e = entries[i];
      text << "GRAPH " << i + 1 << " aut=" << e.automorphisms << " sign=" << (e.cls.sign > 0 ? "+1" : "-1")
           << " zero=" << (e.cls.cls.is_zero ? "yes" : "no") << '\n';
      bcr::write_graph(text, e.drawn);
    }
  } else if (out.format == "dot") {
    std::vector<bcr::LabeledBcrGraph> drawn;
    for (const auto& e : entries) drawn.push_back(e.drawn);
    bcr::write_dot(text, drawn);
  } else {
    json graphs = json::array();
    for (const auto& e : entries) {
      graphs.push_back({{"drawn", bcr::graph_to_json(e.drawn)},
                        {"representative", bcr::graph_to_json(e.cls.cls.representative)},
                        {"sign", e.cls.sign},
                        {"zero", e.cls.cls.is_zero},
                        {"automorphisms", e.automorphisms}});
    }
    bcr::RunReport report{"gset", {{"diagram", diagram_path}},
                          {{"graphs", static_cast<std::int64_t>(entries.size())},
                           {"loop_parameter", bcr::loop_parameter(diagram)}},
                          {}, {}};
    text << dump(with_report({{"graphs", graphs}}, report, out, timer.seconds()));
  }
  out.emit(text.str());
  std::cerr << "G(C) has " << entries.size() << " graphs, " << timer.seconds() << " s\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in the BCR graph complex"};
  app.require_subcommand(1);

  int k = 0, l = 0, g = 0, vector_index = 1;
  std::string normalize, cocycle_path, diagram_path;
  Output out;
  auto add_output = [&](CLI::App* cmd, const std::vector<std::string>& formats) {
    cmd->add_option("--out", out.path, "Write to this file instead of stdout");
    cmd->add_option("--format", out.format, "Output format")->check(CLI::IsMember(formats));
    cmd->add_flag("--timing", out.timing, "Include wall time in JSON reports");
  };

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate the basis of D^{k,l}_g");
  enumerate->add_option("--order", k, "Order k")->required();
  enumerate->add_option("--defect", l, "Defect l")->required();
  enumerate->add_option("--loops", g, "Loop number g")->required();
  add_output(enumerate, {"text", "json", "dot"});

  auto* delta = app.add_subcommand("delta", "Assemble the matrix of delta: D^{k,l}_g -> D^{k,l+1}_g");
  delta->add_option("--order", k, "Order k")->required();
  delta->add_option("--loops", g, "Loop number g")->required();
  delta->add_option("--defect", l, "Defect l of the domain")->capture_default_str();
  add_output(delta, {"text", "json"});

  auto* cocycles = app.add_subcommand("cocycles", "Kernel of delta on defect 0");
  cocycles->add_option("--order", k, "Order k")->required();
  cocycles->add_option("--loops", g, "Loop number g")->required();
  cocycles->add_option("--normalize", normalize, "Pin a coefficient")->check(CLI::IsMember({"gamma-e"}));
  add_output(cocycles, {"text", "json"});

  auto* pair = app.add_subcommand("pair", "Evaluate the counting formula");
  pair->add_option("--cocycle", cocycle_path, "Cocycle file")->required();
  pair->add_option("--diagram", diagram_path, "Chord diagram file (text or JSON)")->required();
  pair->add_option("--vector", vector_index, "Which VECTOR block of the cocycle file")->capture_default_str();
  add_output(pair, {"text", "json"});

  auto* gset = app.add_subcommand("gset", "List the graphs of G(C)");
  gset->add_option("--diagram", diagram_path, "Chord diagram file (text or JSON)")->required();
  add_output(gset, {"text", "json", "dot"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*enumerate) return run_enumerate(k, l, g, out);
    if (*delta) return run_delta(k, l, g, out);
    if (*cocycles) return run_cocycles(k, g, normalize, out);
    if (*pair) return run_pair(cocycle_path, diagram_path, vector_index, out);
    if (*gset) return run_gset(diagram_path, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  }
  return 2;
}
