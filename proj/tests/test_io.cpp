#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "conewit/io.hpp"
#include "support/generators.hpp"

using namespace conewit;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("conewit_io_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("matrix files round-trip bit-identically") {
  TempDir tmp;
  std::mt19937_64 rng(121);
  CMat m = gen::random_matrix(rng, 5, 3);
  // exercise extreme magnitudes
  m(0, 0) = Complex(1e-300, -1e300);
  m(1, 2) = Complex(0.1 + 0.2, -0.3); // a value without short decimal form
  io::save_matrix(tmp.file("m.json"), m);
  const CMat back = io::load_matrix(tmp.file("m.json"));
  REQUIRE(back.rows() == m.rows());
  REQUIRE(back.cols() == m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      CHECK(back(i, j).real() == m(i, j).real());
      CHECK(back(i, j).imag() == m(i, j).imag());
    }
}

TEST_CASE("matrix parse rejects malformed input") {
  TempDir tmp;
  SUBCASE("syntax errors carry position info") {
    std::ofstream(tmp.file("bad.json")) << "{\"rows\": 1, \"cols\": 1, \"data\": [[1, ]]}";
    try {
      io::load_matrix(tmp.file("bad.json"));
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::ParseError);
      CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
  }
  SUBCASE("non-finite values rejected") {
    std::ofstream(tmp.file("inf.json"))
        << "{\"rows\": 1, \"cols\": 1, \"data\": [[1e999, 0]]}";
    CHECK_THROWS_AS(io::load_matrix(tmp.file("inf.json")), Error);
  }
  SUBCASE("length mismatch rejected") {
    std::ofstream(tmp.file("short.json"))
        << "{\"rows\": 2, \"cols\": 2, \"data\": [[1, 0]]}";
    CHECK_THROWS_AS(io::load_matrix(tmp.file("short.json")), Error);
  }
  SUBCASE("missing file") { CHECK_THROWS_AS(io::load_matrix(tmp.file("nope.json")), Error); }
}

TEST_CASE("graph files are 1-indexed and round-trip") {
  TempDir tmp;
  const Graph g = Graph::cycle(4);
  io::save_graph(tmp.file("g.json"), g);
  const auto j = io::graph_to_json(g);
  CHECK(j["edges"][0][0] == 1); // 1-indexed on disk
  const Graph back = io::load_graph(tmp.file("g.json"));
  CHECK(back == g);

  std::ofstream(tmp.file("bad.json")) << "{\"n\": 3, \"edges\": [[0, 1]]}";
  CHECK_THROWS_AS(io::load_graph(tmp.file("bad.json")), Error); // 0 is out of range
}

TEST_CASE("vector loading") {
  TempDir tmp;
  CMat col(3, 1);
  col << Complex(1, 0), Complex(0, 2), Complex(3, -1);
  io::save_matrix(tmp.file("v.json"), col);
  const CVec v = io::load_vector(tmp.file("v.json"));
  CHECK(v.size() == 3);
  CHECK(v(1) == Complex(0, 2));
  io::save_matrix(tmp.file("row.json"), col.transpose());
  CHECK(io::load_vector(tmp.file("row.json")).size() == 3);
  io::save_matrix(tmp.file("sq.json"), CMat::Identity(2, 2));
  CHECK_THROWS_AS(io::load_vector(tmp.file("sq.json")), Error);
}

TEST_CASE("report serialization") {
  const LdoiTriple t = build_corr_state(CMat::Ones(4, 4), 0.55);
  const Verdict v = certify_edge(t, FaceSpec::restricted_rank1(CVec::Ones(4)));
  const std::uint64_t digest = fnv1a_digest(ldoi_to_dense(t).rho);
  const auto j = io::report_to_json(v, digest);

  CHECK(j["verdict"] == "entangled_certified");
  CHECK(j["tool_version"].is_string());
  CHECK(j["inputs"]["mapped_rows"] == 4);
  CHECK(j["inputs"]["state_digest"].get<std::string>().rfind("0x", 0) == 0);
  REQUIRE(j["evidence"].is_array());
  REQUIRE_FALSE(j["evidence"].empty());
  for (const auto& e : j["evidence"]) {
    CHECK(e.contains("step"));
    CHECK(e.contains("test"));
    CHECK(e.contains("value"));
    CHECK(e.contains("threshold"));
  }

  // values survive a dump/parse cycle exactly (17 significant digits)
  const auto reparsed = io::json::parse(j.dump());
  for (std::size_t k = 0; k < j["evidence"].size(); ++k) {
    CHECK(reparsed["evidence"][k]["value"].get<double>() ==
          j["evidence"][k]["value"].get<double>());
  }

  const std::string text = io::report_to_text(v, digest);
  CHECK(text.find("verdict: entangled_certified") != std::string::npos);
  CHECK(text.find("jarre_witness_margin") != std::string::npos);
}

TEST_CASE("atomic writes leave no temp files") {
  TempDir tmp;
  io::write_text_atomic(tmp.file("out.txt"), "payload\n");
  std::ifstream in(tmp.file("out.txt"));
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content == "payload\n");
  int files = 0;
  for ([[maybe_unused]] const auto& entry : fs::directory_iterator(tmp.path)) ++files;
  CHECK(files == 1);
}

TEST_CASE("hex digests are fixed-width") {
  CHECK(io::hex_digest(0) == "0x0000000000000000");
  CHECK(io::hex_digest(0xdeadbeefULL) == "0x00000000deadbeef");
}
