#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "egt/cli.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using support::Matrix;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = egt::cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "egt_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
  const fs::path path = scratch_dir() / name;
  std::ofstream out(path);
  out << content;
  return path.string();
}

std::string rps_file() {
  return write_file("rps.json",
                    R"({"kind":"symmetric","A":[[0,-1,1],[1,0,-1],[-1,1,0]],)"
                    R"("labels":["rock","paper","scissors"]})");
}

}  // namespace

TEST_CASE("classify a symmetric game") {
  const auto result = run_cli({"classify", rps_file()});
  REQUIRE(result.exit_code == 0);
  const auto doc = egt::json::parse(result.out);
  CHECK(doc["is_zero_sum"] == true);
  CHECK(doc["is_potential"] == false);
  CHECK(doc["is_null_stable"] == true);
  CHECK(doc["is_stable"] == true);
  CHECK(doc["is_strict_stable"] == false);
  CHECK(doc["tangent_eigenvalues"].size() == 2);
}

TEST_CASE("classify a bimatrix game") {
  const std::string mp = write_file(
      "mp.json",
      R"({"kind":"bimatrix","A":[[-1,1],[1,-1]],"B":[[1,-1],[-1,1]]})");
  const auto result = run_cli({"classify", mp});
  REQUIRE(result.exit_code == 0);
  const auto doc = egt::json::parse(result.out);
  CHECK(doc["is_zero_sum"] == true);
  CHECK(doc["is_stable"] == true);
  CHECK(doc["is_strict_stable"] == false);
}

TEST_CASE("dims reports") {
  auto result = run_cli({"dims", "--l", "3"});
  REQUIRE(result.exit_code == 0);
  auto doc = egt::json::parse(result.out);
  CHECK(doc["dim_anti_potential"] == 1);
  CHECK(doc["dim_anti_zero_sum"] == 3);
  CHECK(doc["dim_kernel"] == 5);

  result = run_cli({"dims", "--lr", "2", "--lc", "2"});
  doc = egt::json::parse(result.out);
  CHECK(doc["dim_potential"] == 7);
  CHECK(doc["dim_anti_potential"] == 1);

  result = run_cli({"dims", "--n", "3", "--l", "2"});
  doc = egt::json::parse(result.out);
  CHECK(doc["dim_anti_potential"] == 5);
  CHECK(doc["dim_anti_zero_sum"] == 1);
}

TEST_CASE("zeeman generation") {
  const auto result = run_cli({"zeeman", "gen4", "--alpha", "-2.5", "--beta",
                               "-2.5", "--gamma", "2", "--eta", "1.9"});
  REQUIRE(result.exit_code == 0);
  const auto doc = egt::json::parse(result.out);
  CHECK(doc["report"]["ess_strategy"] == 2);
  CHECK(doc["report"]["interior_type"] == "sink");
  CHECK(doc["game"]["kind"] == "symmetric");

  // gen3 --out writes a game file that classify can consume.
  const std::string path = (scratch_dir() / "zeeman3.json").string();
  const auto gen3 = run_cli({"zeeman", "gen3", "--alpha", "1", "--beta", "-2",
                             "--eta", "1.9", "--out", path});
  REQUIRE(gen3.exit_code == 0);
  const auto classify = run_cli({"classify", path});
  CHECK(classify.exit_code == 0);
}

TEST_CASE("decompose output reconstructs the input") {
  support::rng().seed(99);
  const Matrix a = support::random_matrix(4, 4);
  egt::json doc;
  doc["kind"] = "symmetric";
  doc["A"] = egt::matrix_to_json(a);
  const std::string path = write_file("random.json", doc.dump());

  const auto result = run_cli({"decompose", path});
  REQUIRE(result.exit_code == 0);
  const auto parsed = egt::json::parse(result.out);
  const Matrix sum =
      egt::matrix_from_json(parsed["components"]["anti_zero_sum"], "azs") +
      egt::matrix_from_json(parsed["components"]["kernel"], "ker") +
      egt::matrix_from_json(parsed["components"]["anti_potential"], "ap");
  CHECK((sum - a).norm() <= 1e-10);
  CHECK(parsed["reconstruction_residual"].get<double>() <= 1e-12 * (1 + a.norm()));

  // Byte-identical output on identical input.
  const auto again = run_cli({"decompose", path});
  CHECK(again.out == result.out);

  // Pretty mode is human-oriented text, not JSON.
  const auto pretty = run_cli({"decompose", path, "--pretty"});
  CHECK(pretty.exit_code == 0);
  CHECK(pretty.out.find("anti_zero_sum") != std::string::npos);
  CHECK(run_cli({"decompose", path, "--pretty", "--json"}).exit_code == 1);
}

TEST_CASE("decompose bimatrix and nplayer files") {
  const std::string bi = write_file(
      "bi.json",
      R"({"kind":"bimatrix","A":[[1,0],[0,1]],"B":[[1,0],[0,1]]})");
  auto result = run_cli({"decompose", bi});
  REQUIRE(result.exit_code == 0);
  auto doc = egt::json::parse(result.out);
  CHECK(doc["components"]["anti_potential"].contains("A"));

  const std::string np = write_file(
      "np.json",
      R"({"kind":"nplayer","payoffs":[[[-1,1],[1,-1]],[[1,-1],[-1,1]]]})");
  result = run_cli({"decompose", np});
  REQUIRE(result.exit_code == 0);
  doc = egt::json::parse(result.out);
  CHECK(doc["kind"] == "nplayer");
  CHECK(doc["reconstruction_residual"].get<double>() <= 1e-8);

  // Multiple files keep input order and name each document.
  result = run_cli({"decompose", bi, np});
  REQUIRE(result.exit_code == 0);
  std::istringstream lines(result.out);
  std::string first, second;
  std::getline(lines, first);
  std::getline(lines, second);
  CHECK(egt::json::parse(first)["file"] == bi);
  CHECK(egt::json::parse(second)["file"] == np);
}

TEST_CASE("simulate writes trajectory CSV") {
  const auto result = run_cli({"simulate", rps_file(), "--x0", "0.5,0.3,0.2",
                               "--t-end", "1", "--step", "0.01", "--track-H"});
  REQUIRE(result.exit_code == 0);
  std::istringstream lines(result.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "t,x1,x2,x3,H");
  int rows = 0;
  std::string row;
  while (std::getline(lines, row)) ++rows;
  CHECK(rows == 101);

  const std::string out_path = (scratch_dir() / "traj.csv").string();
  const auto to_file = run_cli({"simulate", rps_file(), "--x0", "0.5,0.3,0.2",
                                "--t-end", "1", "--step", "0.01", "--out",
                                out_path});
  REQUIRE(to_file.exit_code == 0);
  std::ifstream in(out_path);
  std::string first_line;
  std::getline(in, first_line);
  CHECK(first_line == "t,x1,x2,x3");
}

TEST_CASE("simulate a bimatrix game") {
  const std::string mp = write_file(
      "mp2.json",
      R"({"kind":"bimatrix","A":[[-1,1],[1,-1]],"B":[[1,-1],[-1,1]]})");
  const auto missing_y0 = run_cli(
      {"simulate", mp, "--x0", "0.5,0.5", "--t-end", "1"});
  CHECK(missing_y0.exit_code == 1);
  CHECK(missing_y0.err.find("y0") != std::string::npos);

  const auto ok = run_cli({"simulate", mp, "--x0", "0.6,0.4", "--y0",
                           "0.3,0.7", "--t-end", "1", "--step", "0.1"});
  REQUIRE(ok.exit_code == 0);
  CHECK(ok.out.rfind("t,x1,x2,y1,y2", 0) == 0);
}

TEST_CASE("field prints value and split") {
  const auto result = run_cli({"field", rps_file(), "--x", "0.5,0.3,0.2"});
  REQUIRE(result.exit_code == 0);
  const auto doc = egt::json::parse(result.out);
  REQUIRE(doc.contains("field"));
  REQUIRE(doc["split"].contains("conservative_part"));
  double total = 0;
  for (const auto& v : doc["field"]) total += v.get<double>();
  CHECK(std::abs(total) <= 1e-12);

  const std::string mp = write_file(
      "mp3.json",
      R"({"kind":"bimatrix","A":[[-1,1],[1,-1]],"B":[[1,-1],[-1,1]]})");
  const auto pair = run_cli({"field", mp, "--x", "0.6,0.4", "--y", "0.3,0.7"});
  REQUIRE(pair.exit_code == 0);
  const auto pair_doc = egt::json::parse(pair.out);
  CHECK(pair_doc.contains("field_x"));
  CHECK(pair_doc.contains("field_y"));
  CHECK(run_cli({"field", mp, "--x", "0.6,0.4"}).exit_code == 1);
}

TEST_CASE("basis subcommand") {
  const auto result = run_cli({"basis", "K", "--l", "3", "--i", "1", "--j", "2"});
  REQUIRE(result.exit_code == 0);
  CHECK(result.out ==
        "[[-1.0,1.0,0.0],[1.0,-1.0,0.0],[0.0,0.0,0.0]]\n");
  CHECK(run_cli({"basis", "Q", "--l", "3"}).exit_code == 1);
  CHECK(run_cli({"basis", "K", "--l", "3", "--i", "2", "--j", "2"}).exit_code ==
        1);
}

TEST_CASE("digraph emits DOT text") {
  const auto result = run_cli({"digraph", rps_file()});
  REQUIRE(result.exit_code == 0);
  CHECK(result.out.rfind("digraph {", 0) == 0);
  CHECK(result.out.find("1 -> 3;") != std::string::npos);
  CHECK(result.out.find("2 -> 1;") != std::string::npos);

  const std::string out_path = (scratch_dir() / "rps.dot").string();
  CHECK(run_cli({"digraph", rps_file(), "--out", out_path}).exit_code == 0);
  CHECK(fs::exists(out_path));
}

TEST_CASE("validation errors exit with 1 and a diagnostic") {
  const auto missing = run_cli({"classify", "/nonexistent/game.json"});
  CHECK(missing.exit_code == 1);
  CHECK(missing.err.find("cannot open") != std::string::npos);

  const std::string broken = write_file("broken.json", "{\"kind\": ");
  const auto malformed = run_cli({"classify", broken});
  CHECK(malformed.exit_code == 1);
  CHECK(malformed.err.find("malformed JSON") != std::string::npos);

  const std::string bad_kind =
      write_file("bad_kind.json", R"({"kind":"other","A":[[0,1],[1,0]]})");
  CHECK(run_cli({"classify", bad_kind}).exit_code == 1);

  const std::string ragged =
      write_file("ragged.json", R"({"kind":"symmetric","A":[[0,1],[1]]})");
  const auto shape = run_cli({"classify", ragged});
  CHECK(shape.exit_code == 1);
  CHECK(shape.err.find("A") != std::string::npos);

  const auto off_simplex = run_cli(
      {"simulate", rps_file(), "--x0", "0.9,0.9,0.2", "--t-end", "1"});
  CHECK(off_simplex.exit_code == 1);
  CHECK(off_simplex.err.find("x0") != std::string::npos);

  CHECK(run_cli({"frobnicate"}).exit_code == 1);
  CHECK(run_cli({"classify", rps_file(), "--tol", "0"}).exit_code == 1);
  CHECK(run_cli({}).exit_code == 1);

  const std::string np = write_file(
      "np2.json",
      R"({"kind":"nplayer","payoffs":[[[-1,1],[1,-1]],[[1,-1],[-1,1]]]})");
  CHECK(run_cli({"classify", np}).exit_code == 1);
  CHECK(run_cli({"digraph", np}).exit_code == 1);
}

TEST_CASE("numeric failures exit with 2") {
  const auto blown = run_cli({"simulate", rps_file(), "--x0", "0.5,0.3,0.2",
                              "--t-end", "100", "--step", "50"});
  CHECK(blown.exit_code == 2);
  CHECK(blown.err.find("simplex") != std::string::npos);
}

TEST_CASE("help exits cleanly") {
  const auto help = run_cli({"--help"});
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("decompose") != std::string::npos);
}
