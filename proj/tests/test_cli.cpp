#include "doctest.h"

#include "nodal/cli.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace nodal;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("nodal_cli_" + std::to_string(::getpid()) + "_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("catalog list shows the records") {
  const Run r = run({"catalog", "list"});
  CHECK(r.code == 0);
  CHECK(r.out.find("600") != std::string::npos);
  CHECK(r.out.find("barth-sextic") != std::string::npos);
  const Run j = run({"catalog", "list", "--json"});
  REQUIRE(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  bool found12 = false;
  for (const auto& rec : doc["records"]) {
    if (rec["degree"] == 12) {
      found12 = true;
      CHECK(rec["nodes"] == 600);
      CHECK(rec["miyaoka_bound"] == 645);
    }
    if (rec["degree"] == 6) CHECK(rec["maximal"] == true);
  }
  CHECK(found12);
}

TEST_CASE("group census and invariants") {
  const Run r = run({"group", "--census", "--check-invariants"});
  CHECK(r.code == 0);
  CHECK(r.out.find("1:1 2:15 3:20 5:24") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("verify the Barth sextic") {
  const Run r = run({"--threads", "2", "verify", "--surface", "barth-sextic"});
  CHECK(r.code == 0);
  CHECK(r.out == "65 nodes certified (bound 66)\n");
}

TEST_CASE("singularities report schema and replay") {
  const auto path = temp_path("report.json");
  const Run r = run({"singularities", "--surface", "barth-sextic", "--alpha", "(2*tau+1)/4", "--report", path.string()});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(slurp(path));
  for (const char* key : {"surface", "parameter", "total_count", "orbits", "unresolved_boxes", "miyaoka_bound",
                          "runtime_seconds", "reproducibility"}) {
    CHECK(doc.contains(key));
  }
  CHECK(doc["total_count"] == 65);
  CHECK(doc["miyaoka_bound"] == 66);
  CHECK(doc["unresolved_boxes"].empty());
  int total = 0;
  for (const auto& o : doc["orbits"]) {
    total += o["size"].get<int>();
    for (const char* key : {"size", "type", "representative", "on_mid_line", "on_plane"}) CHECK(o.contains(key));
  }
  CHECK(total == 65);
  // Replaying the recorded parameters gives the same count.
  const std::string alpha = doc["reproducibility"]["parameters"]["alpha"];
  const auto path2 = temp_path("replay.json");
  REQUIRE(run({"singularities", "--surface", "barth-sextic", "--alpha", alpha, "--report", path2.string()}).code == 0);
  const auto replay = nlohmann::json::parse(slurp(path2));
  CHECK(replay["total_count"] == 65);
  CHECK(replay["orbits"].size() == doc["orbits"].size());
  std::filesystem::remove(path);
  std::filesystem::remove(path2);
}

TEST_CASE("render an 8x8 sphere") {
  const auto path = temp_path("sphere.ppm");
  const Run r = run({"render", "--surface", "sphere", "--width", "8", "--height", "8", "--out", path.string()});
  REQUIRE(r.code == 0);
  const std::string bytes = slurp(path);
  const std::string header = "P6\n8 8\n255\n";
  CHECK(bytes.substr(0, header.size()) == header);
  CHECK(bytes.size() - header.size() == 192);
  const auto path2 = temp_path("sphere2.ppm");
  REQUIRE(run({"--threads", "3", "render", "--surface", "sphere", "--width", "8", "--height", "8", "--out",
               path2.string()})
              .code == 0);
  CHECK(slurp(path2) == bytes);
  std::filesystem::remove(path);
  std::filesystem::remove(path2);
}

TEST_CASE("render with an explicit camera and a surface file") {
  const auto poly = temp_path("cone.txt");
  std::ofstream(poly) << "x^2 + y^2 - z^2 - 1/4\n";
  const auto path = temp_path("cone.ppm");
  const Run r = run({"render", "--surface", poly.string(), "--width", "16", "--height", "12", "--camera",
                     "5,1/2,2 0,0,0", "--clip", "2", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(slurp(path).substr(0, 12) == "P6\n16 12\n255");
  std::filesystem::remove(poly);
  std::filesystem::remove(path);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  const Run unknown = run({"verify", "--surface", "no-such-surface"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("unknown surface") != std::string::npos);
  const Run malformed = run({"verify", "--surface", "barth-sextic", "--alpha", "(2*tau+"});
  CHECK(malformed.code == 2);
  CHECK(malformed.err.find("malformed expression") != std::string::npos);
  const Run unwritable = run({"render", "--surface", "sphere", "--width", "4", "--height", "4", "--out",
                              "/nonexistent-dir/x.ppm"});
  CHECK(unwritable.code == 2);
  CHECK(unwritable.err.find("cannot open") != std::string::npos);
  const Run bad_param = run({"verify", "--surface", "barth-sextic", "--beta", "1"});
  CHECK(bad_param.code == 2);
  const Run irrational_camera =
      run({"render", "--surface", "sphere", "--camera", "sqrt5,0,0 0,0,0", "--out", temp_path("x.ppm").string()});
  CHECK(irrational_camera.code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("thread count from the environment") {
  ::setenv("NODAL_THREADS", "zero", 1);
  CHECK(run({"verify", "--surface", "sphere"}).code == 2);
  ::setenv("NODAL_THREADS", "2", 1);
  const Run r = run({"verify", "--surface", "sphere"});
  CHECK(r.code == 0);
  CHECK(r.out == "0 nodes certified\n");
  ::unsetenv("NODAL_THREADS");
}

TEST_CASE("verify reports a discrepancy") {
  // xyw - z^3 has cusps, so it cannot pass as a nodal surface.
  const auto poly = temp_path("cusp.txt");
  std::ofstream(poly) << "x y w - z^3\n";
  const Run r = run({"verify", "--surface", poly.string()});
  CHECK(r.code == 1);
  CHECK(r.out.find("DISCREPANCY") != std::string::npos);
  std::filesystem::remove(poly);
}

TEST_CASE("sextic scan") {
  const auto path = temp_path("scan.json");
  const Run r = run({"scan", "--surface", "barth-sextic", "--report", path.string()});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(slurp(path));
  CHECK(doc["maximum_count"] == 65);
  REQUIRE(doc["entries"].size() == 4);
  CHECK(doc["entries"][0]["total_count"] == 45);
  CHECK(doc["entries"][3]["total_count"] == 65);
  CHECK(doc["entries"][3]["above_generic"] == true);
  std::filesystem::remove(path);
}
