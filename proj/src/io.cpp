#include "conewit/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "conewit/version.hpp"

namespace conewit::io {

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    // parse errors report line/column positions in what()
    throw Error(Errc::ParseError, path + ": " + e.what());
  }
}

double finite_number(const json& j, const char* what) {
  if (!j.is_number()) throw Error(Errc::ParseError, std::string(what) + " is not a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw Error(Errc::ParseError, std::string(what) + " is not finite");
  return v;
}

} // namespace

json matrix_to_json(const CMat& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      data.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

CMat matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw Error(Errc::ParseError, "matrix file must have rows, cols, data");
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
    throw Error(Errc::ParseError, "rows/cols must be integers");
  const Eigen::Index rows = j["rows"].get<Eigen::Index>();
  const Eigen::Index cols = j["cols"].get<Eigen::Index>();
  if (rows < 1 || cols < 1) throw Error(Errc::ParseError, "rows/cols must be positive");
  const auto& data = j["data"];
  if (!data.is_array() || Eigen::Index(data.size()) != rows * cols)
    throw Error(Errc::ParseError, "data length must equal rows*cols");
  CMat m(rows, cols);
  for (Eigen::Index k = 0; k < rows * cols; ++k) {
    const auto& cell = data[std::size_t(k)];
    if (!cell.is_array() || cell.size() != 2)
      throw Error(Errc::ParseError, "each entry must be a [re, im] pair");
    m(k / cols, k % cols) = Complex(finite_number(cell[0], "re"), finite_number(cell[1], "im"));
  }
  return m;
}

CMat load_matrix(const std::string& path) { return matrix_from_json(load_json(path)); }

void save_matrix(const std::string& path, const CMat& m) {
  write_text_atomic(path, matrix_to_json(m).dump(2) + "\n");
}

json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (auto [i, j] : g.edges()) edges.push_back(json::array({i + 1, j + 1})); // 1-indexed files
  return json{{"n", g.n()}, {"edges", std::move(edges)}};
}

Graph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
    throw Error(Errc::ParseError, "graph file must have n, edges");
  if (!j["n"].is_number_integer()) throw Error(Errc::ParseError, "n must be an integer");
  const int n = j["n"].get<int>();
  if (n < 0) throw Error(Errc::ParseError, "n must be nonnegative");
  Graph g(n);
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw Error(Errc::ParseError, "each edge must be an [i, j] integer pair");
    const int a = e[0].get<int>(), b = e[1].get<int>();
    if (a < 1 || a > n || b < 1 || b > n)
      throw Error(Errc::ParseError, "edge endpoints must lie in 1..n");
    g.add_edge(a - 1, b - 1);
  }
  return g;
}

Graph load_graph(const std::string& path) { return graph_from_json(load_json(path)); }

void save_graph(const std::string& path, const Graph& g) {
  write_text_atomic(path, graph_to_json(g).dump(2) + "\n");
}

CVec load_vector(const std::string& path) {
  const CMat m = load_matrix(path);
  if (m.cols() == 1) return m.col(0);
  if (m.rows() == 1) return m.row(0).transpose();
  throw Error(Errc::ParseError, path + ": expected a single-column (or single-row) matrix");
}

std::string hex_digest(std::uint64_t digest) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(digest));
  return buf;
}

json report_to_json(const Verdict& v, std::uint64_t state_digest) {
  json evidence = json::array();
  for (const auto& e : v.evidence)
    evidence.push_back(json{{"step", e.step}, {"test", e.test}, {"value", e.value},
                            {"threshold", e.threshold}});
  json inputs{{"state_digest", hex_digest(state_digest)},
              {"mapped_matrix_digest", hex_digest(v.mapped_digest)},
              {"mapped_rows", v.mapped_rows},
              {"mapped_cols", v.mapped_cols}};
  json out{{"verdict", verdict_name(v.status)},
           {"face", v.face.name()},
           {"evidence", std::move(evidence)},
           {"inputs", std::move(inputs)},
           {"tool_version", CONEWIT_VERSION}};
  if (v.cone) out["cone"] = v.cone->name();
  if (v.extremality)
    out["extremality"] = json{{"rank", v.extremality->rank},
                              {"perturbation_dim", v.extremality->perturbation_dim},
                              {"is_extremal", v.extremality->is_extremal}};
  return out;
}

std::string report_to_text(const Verdict& v, std::uint64_t state_digest) {
  std::ostringstream os;
  os << "verdict: " << verdict_name(v.status) << "\n";
  os << "face: " << v.face.name() << "\n";
  if (v.cone) os << "cone: " << v.cone->name() << "\n";
  os << "state digest: " << hex_digest(state_digest) << "\n";
  os << "mapped matrix: " << v.mapped_rows << "x" << v.mapped_cols << " digest "
     << hex_digest(v.mapped_digest) << "\n";
  if (v.extremality)
    os << "extremality: rank " << v.extremality->rank << ", perturbation dim "
       << v.extremality->perturbation_dim
       << (v.extremality->is_extremal ? " (extremal)" : " (not extremal)") << "\n";
  os << "evidence:\n";
  for (const auto& e : v.evidence) {
    os << "  [" << e.step << "] " << e.test << " = ";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", e.value);
    os << buf << " (threshold ";
    std::snprintf(buf, sizeof(buf), "%.17g", e.threshold);
    os << buf << ")\n";
  }
  return os.str();
}

void write_text_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(Errc::BadArgument, "cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, target);
}

} // namespace conewit::io
