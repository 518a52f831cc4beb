// End-to-end tests that drive the installed binary through its shell
// interface and inspect reports, exit codes, and artifacts.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

fs::path scratch_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "latgerbe_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path capture = scratch_dir() / ("out_" + std::to_string(counter++) + ".txt");
  std::string cmd = std::string(LATGERBE_CLI_PATH) + " " + args + " > " + capture.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  RunResult r;
  REQUIRE(rc != -1);
  REQUIRE(WIFEXITED(rc));
  r.exit_code = WEXITSTATUS(rc);
  std::ifstream in(capture);
  std::stringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  return r;
}

fs::path write_file(const std::string& name, const std::string& content) {
  fs::path p = scratch_dir() / name;
  std::ofstream(p) << content;
  return p;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string levi_civita_json() {
  long long arr[27] = {};
  arr[9 * 0 + 3 * 1 + 2] = 1;
  arr[9 * 1 + 3 * 2 + 0] = 1;
  arr[9 * 2 + 3 * 0 + 1] = 1;
  arr[9 * 0 + 3 * 2 + 1] = -1;
  arr[9 * 2 + 3 * 1 + 0] = -1;
  arr[9 * 1 + 3 * 0 + 2] = -1;
  std::string s = "[";
  for (int i = 0; i < 27; ++i) s += std::to_string(arr[i]) + (i < 26 ? "," : "]");
  return s;
}

}  // namespace

TEST_CASE("classify reports the integer class of the alternating tensor") {
  fs::path tensor = write_file("levi.json", levi_civita_json());
  auto r = run_cli("cocycle classify --tensor " + tensor.string());
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.output);
  CHECK(doc["command"] == "cocycle classify");
  CHECK(doc["results"]["class_int"] == 1);
  CHECK(doc["results"]["raw"] == "1");
  REQUIRE(doc["checks"].size() == 2);
  for (const auto& c : doc["checks"]) CHECK(c["pass"] == true);
}

TEST_CASE("malformed tensor files are configuration errors") {
  SECTION("wrong entry count") {
    fs::path bad = write_file("bad26.json", "[0,0,0,0,0,1,0,-1,0,0,0,-1,0,0,0,1,0,0,0,1,0,-1,0,0,0,0]");
    auto r = run_cli("cocycle classify --tensor " + bad.string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("found 26") != std::string::npos);
  }
  SECTION("non-integer entry") {
    std::string body = levi_civita_json();
    body.replace(body.find("1"), 1, "\"x\"");
    fs::path bad = write_file("badtype.json", body);
    auto r = run_cli("cocycle classify --tensor " + bad.string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("is not an integer") != std::string::npos);
  }
  SECTION("missing file") {
    auto r = run_cli("cocycle classify --tensor " + (scratch_dir() / "absent.json").string());
    CHECK(r.exit_code == 2);
  }
  SECTION("missing required option") {
    auto r = run_cli("dirac cond-trace --n 2");
    CHECK(r.exit_code == 2);
  }
}

TEST_CASE("reports are deterministic and --out mirrors stdout") {
  fs::path tensor = write_file("levi2.json", levi_civita_json());
  fs::path copy = scratch_dir() / "mirror.json";
  auto r1 = run_cli("cocycle classify --tensor " + tensor.string() + " --out " + copy.string());
  auto r2 = run_cli("cocycle classify --tensor " + tensor.string());
  REQUIRE(r1.exit_code == 0);
  CHECK(r1.output == r2.output);
  CHECK(read_file(copy) == r1.output);
}

TEST_CASE("model representation class follows -(p.q)/3") {
  auto r = run_cli("cocycle model-rep --p 1,2,0 --q 2,1,1");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.output);
  CHECK(doc["results"]["raw"] == "-4/3");
  CHECK(doc["results"]["class_int"].is_null());
  for (const auto& c : doc["checks"]) CHECK(c["pass"] == true);
}

TEST_CASE("fock extension report") {
  auto r = run_cli("fock extension --alpha -1,-1,-1 --beta 0,0,1");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.output);
  CHECK(doc["results"]["class"]["raw"] == "1/3");
  CHECK(doc["results"]["phase_table"].size() == 729);
  REQUIRE(doc["results"]["covariance_deviations"].size() == 3);
  for (const auto& row : doc["results"]["covariance_deviations"]) {
    REQUIRE(row["deviation"].is_number());
    CHECK(row["deviation"].get<double>() < 1e-10);
  }
  SECTION("degenerate cutoff is rejected") {
    auto bad = run_cli("fock extension --alpha 1,0,0 --beta 0,0,1 --cutoff 2 --margin 2");
    CHECK(bad.exit_code == 2);
  }
}

TEST_CASE("conditional trace command") {
  SECTION("winding pair") {
    auto r = run_cli("dirac cond-trace --n 2 --m -2");
    REQUIRE(r.exit_code == 0);
    json doc = json::parse(r.output);
    CHECK(doc["results"]["value"] == -2);
    CHECK(doc["results"]["raw_conditional_trace"] == -4);
  }
  SECTION("non-cancelling pair vanishes") {
    auto r = run_cli("dirac cond-trace --n 2 --m 3");
    REQUIRE(r.exit_code == 0);
    json doc = json::parse(r.output);
    CHECK(doc["results"]["value"] == 0);
  }
  SECTION("cutoff too small") {
    auto r = run_cli("dirac cond-trace --n 2 --m -2 --cutoff 3");
    CHECK(r.exit_code == 2);
  }
}

TEST_CASE("spectral flow command and its endpoint guard") {
  SECTION("unit shift in the first direction") {
    auto r = run_cli("dirac spectral-flow --to 1.3,0.4,0.5");
    REQUIRE(r.exit_code == 0);
    json doc = json::parse(r.output);
    CHECK(doc["results"]["flow"] == json::array({-1, 0, 0}));
  }
  SECTION("path starting on the lattice trips the guard") {
    auto r = run_cli("dirac spectral-flow --from 0,0,0 --to 1,0,0");
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("endpoint") != std::string::npos);
  }
}

TEST_CASE("monopole curvature agrees with the plaquette probe") {
  auto r = run_cli("dirac monopole --b 0,0,1");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.output);
  CHECK(doc["results"]["rel_error"].get<double>() < 1e-6);
  CHECK(doc["checks"][0]["pass"] == true);
}

TEST_CASE("sphere chern command") {
  SECTION("unit charge at the origin") {
    auto r = run_cli("dirac sphere-chern --momentum 0,0,0 --mesh 40x80");
    REQUIRE(r.exit_code == 0);
    json doc = json::parse(r.output);
    CHECK(doc["results"]["chern"] == 1);
  }
  SECTION("grazing mesh trips the phase guard") {
    auto r = run_cli("dirac sphere-chern --center 0.3975,0,0 --radius 0.4 --mesh 21x43 --momentum 0,0,0");
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("refine the mesh") != std::string::npos);
  }
  SECTION("malformed mesh text") {
    auto r = run_cli("dirac sphere-chern --momentum 0,0,0 --mesh 20y40");
    CHECK(r.exit_code == 2);
  }
}

TEST_CASE("renorm-sum emits the pinned CSV schema") {
  fs::path csv = scratch_dir() / "series.csv";
  auto r = run_cli("dirac renorm-sum --cutoffs 4,6,8 --out " + csv.string());
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.output);
  REQUIRE(doc["results"]["series"].size() == 3);
  CHECK(doc["checks"][0]["pass"] == true);

  std::ifstream in(csv);
  std::string header;
  REQUIRE(std::getline(in, header));
  CHECK(header == "Lambda,bare_re,bare_im,renorm_re,renorm_im");
  int rows = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("exterior form commands are exact") {
  SECTION("volume normalizations") {
    auto r = run_cli("forms dd-class");
    REQUIRE(r.exit_code == 0);
    json doc = json::parse(r.output);
    CHECK(doc["results"]["volume_exp"] == "1 * u^3 * [da1^da2^da3]");
    CHECK(doc["results"]["volume_cubed"] == "6 * u^3 * [da1^da2^da3]");
  }
  SECTION("circle character") {
    auto r = run_cli("forms chern-1d --alpha 1,2,3 --beta 4,5,6");
    REQUIRE(r.exit_code == 0);
    json doc = json::parse(r.output);
    CHECK(doc["checks"][0]["pass"] == true);
    CHECK(json::parse(r.output)["results"]["character"].get<std::string>().find("32 * u^2") !=
          std::string::npos);
  }
  SECTION("canonical text round-trips through --expect") {
    auto ok = run_cli("forms dd-class --expect \"1 * u^3 * [da1^da2^da3]\"");
    CHECK(ok.exit_code == 0);
    auto off = run_cli("forms dd-class --expect \"2 * u^3 * [da1^da2^da3]\"");
    CHECK(off.exit_code == 1);
    json doc = json::parse(off.output);
    CHECK(doc["checks"].back()["pass"] == false);
    auto bad = run_cli("forms dd-class --expect \"1 * u^3 * [bogus]\"");
    CHECK(bad.exit_code == 2);
  }
  SECTION("gcd realizability") {
    auto yes = run_cli("forms gcd-check --class 2,3,0");
    REQUIRE(yes.exit_code == 0);
    json ydoc = json::parse(yes.output);
    CHECK(ydoc["results"]["realizable"] == true);
    CHECK(ydoc["checks"][0]["value"] == 1);

    auto no = run_cli("forms gcd-check --class 2,4,6");
    REQUIRE(no.exit_code == 0);
    CHECK(json::parse(no.output)["results"]["realizable"] == false);
  }
}

TEST_CASE("orbit integral command lands on twice the level") {
  auto r = run_cli("lie orbit-integral --level 2");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.output);
  CHECK(doc["results"]["expected"] == 4.0);
  CHECK(doc["results"]["rel_error"].get<double>() < 1e-3);
  SECTION("coarse mesh is rejected") {
    auto bad = run_cli("lie orbit-integral --level 1 --mesh 40x80");
    CHECK(bad.exit_code == 2);
  }
}

TEST_CASE("verify-all surfaces the known red check and exits nonzero") {
  auto r = run_cli("verify-all --quick");
  CHECK(r.exit_code == 1);
  json doc = json::parse(r.output);
  REQUIRE(doc["checks"].size() == 11);
  int failed = 0;
  for (const auto& c : doc["checks"])
    if (c["pass"] == false) ++failed;
  CHECK(failed == 1);
  CHECK(doc["results"]["passed"] == false);
}
