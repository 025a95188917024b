#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "bec2/errors.hpp"
#include "bec2/output.hpp"
#include "bec2/state.hpp"

using namespace bec2;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "bec2_tests" / name;
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_SUITE("output") {

TEST_CASE("format_double is shortest and round trips") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5) == "-2.5");
  CHECK(format_double(0.0) == "0");
  for (double v : {1.0 / 3.0, 1e-300, 6.02214076e23, -0.1234567890123456789,
                   3.141592653589793}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("fnv1a64 known vectors") {
  CHECK(fnv1a64("", 0) == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a", 1) == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("hello", 5) == 0xa430d84680aabd0bULL);
  CHECK(fnv1a64_hex("hello", 5) == "a430d84680aabd0b");
}

TEST_CASE("csv_table layout") {
  const std::string csv = csv_table({"a", "b"}, {{"1", "2"}, {"3", "4"}});
  CHECK(csv == "a,b\n1,2\n3,4\n");
}

TEST_CASE("RunWriter writes files and an honest manifest") {
  const fs::path dir = fresh_dir("writer");
  {
    RunWriter w(dir);
    w.write_text("table.csv", "x\n1\n");
    w.write_text("sub/summary.json", "{}\n");
    w.write_manifest("demo", true);
  }
  CHECK(fs::exists(dir / "table.csv"));
  CHECK(fs::exists(dir / "sub/summary.json"));
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest.at("command") == "demo");
  CHECK(manifest.at("complete") == true);
  CHECK(manifest.at("tool_version") == tool_version);
  const auto& files = manifest.at("files");
  REQUIRE(files.size() == 2);
  // Sorted by path; the manifest does not list itself.
  CHECK(files[0].at("path") == "sub/summary.json");
  CHECK(files[1].at("path") == "table.csv");
  CHECK(files[1].at("bytes") == 4);
  CHECK(files[1].at("fnv1a64") == fnv1a64_hex("x\n1\n", 4));
}

TEST_CASE("identical content produces identical manifests") {
  const fs::path a = fresh_dir("det_a");
  const fs::path b = fresh_dir("det_b");
  for (const fs::path& dir : {a, b}) {
    RunWriter w(dir);
    w.write_text("data.csv", "k,v\n0,1\n");
    w.write_manifest("demo", true);
  }
  CHECK(slurp(a / "manifest.json") == slurp(b / "manifest.json"));
}

TEST_CASE("snapshot CSV header and values") {
  const MatterState s = make_uniform_state(16, 0.5, {4.0, 1.0});
  const std::string csv = snapshot_csv(s);
  CHECK(csv.rfind("y,re_1,im_1,re_2,im_2\n", 0) == 0);
  CHECK(csv.find("-4,2,0,1,0\n") != std::string::npos);
}

TEST_CASE("binary snapshot round trips bitwise") {
  const fs::path dir = fresh_dir("snap");
  MatterState s = make_uniform_state(32, 0.25, {1.0, 2.0}, -3.5);
  s.psi[0][3] = {0.25, -0.75};
  s.psi[1][30] = {-1.0, 1e-12};
  {
    RunWriter w(dir);
    write_snapshot_binary(w, "state_initial", s);
    w.write_manifest("demo", true);
  }
  CHECK(fs::exists(dir / "state_initial.f64"));
  CHECK(fs::exists(dir / "state_initial.json"));
  const MatterState back = read_snapshot_binary((dir / "state_initial").string());
  CHECK(back == s);
}

TEST_CASE("binary snapshot validates sizes") {
  const fs::path dir = fresh_dir("snap_bad");
  MatterState s = make_uniform_state(16, 0.5, {1.0, 1.0});
  {
    RunWriter w(dir);
    write_snapshot_binary(w, "state", s);
    w.write_manifest("demo", true);
  }
  // Truncate the payload behind the sidecar's back.
  fs::resize_file(dir / "state.f64", 100);
  CHECK_THROWS_AS(read_snapshot_binary((dir / "state").string()), IoError);
  CHECK_THROWS_AS(read_snapshot_binary((dir / "missing").string()), IoError);
}

}  // TEST_SUITE
