#ifndef CONEWIT_IO_HPP
#define CONEWIT_IO_HPP

#include <string>

#include <json.hpp>

#include "conewit/detector.hpp"
#include "conewit/graphs.hpp"
#include "conewit/matcore.hpp"

namespace conewit::io {

using nlohmann::json;

/// Matrix files: {"rows": r, "cols": c, "data": [[re, im], ...]} row-major.
/// NaN/Inf entries are rejected at parse.
json matrix_to_json(const CMat& m);
CMat matrix_from_json(const json& j);
CMat load_matrix(const std::string& path);
void save_matrix(const std::string& path, const CMat& m);

/// Graph files: {"n": n, "edges": [[i, j], ...]} with 1-indexed vertices.
json graph_to_json(const Graph& g);
Graph graph_from_json(const json& j);
Graph load_graph(const std::string& path);
void save_graph(const std::string& path, const Graph& g);

/// A matrix file with a single column (or single row), read as a vector.
CVec load_vector(const std::string& path);

json report_to_json(const Verdict& v, std::uint64_t state_digest);
std::string report_to_text(const Verdict& v, std::uint64_t state_digest);

/// Temp file + rename in the target directory.
void write_text_atomic(const std::string& path, const std::string& content);

std::string hex_digest(std::uint64_t digest);

} // namespace conewit::io

#endif
