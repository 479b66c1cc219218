#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qwalk/cli.hpp"

using namespace qwalk;
namespace fs = std::filesystem;
constexpr double pi = std::numbers::pi;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("qwalk_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Csv {
  std::vector<std::string> comments;
  std::string header;
  std::vector<std::pair<double, double>> rows;
};

Csv read_csv(const std::string& path) {
  Csv csv;
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::string line;
  while (std::getline(in, line)) {
    if (line.starts_with("#")) {
      csv.comments.push_back(line);
    } else if (csv.header.empty()) {
      csv.header = line;
    } else if (!line.empty()) {
      std::size_t comma = line.find(',');
      csv.rows.emplace_back(std::stod(line.substr(0, comma)),
                            std::stod(line.substr(comma + 1)));
    }
  }
  return csv;
}

}  // namespace

TEST_CASE("angle parsing") {
  CHECK(parse_angle("pi/4") == pi / 4);
  CHECK(parse_angle("pi") == pi);
  CHECK(parse_angle("2pi/3") == 2.0 * pi / 3.0);
  CHECK(parse_angle("-pi/6") == -pi / 6.0);
  CHECK(parse_angle("0.5") == 0.5);
  CHECK(parse_angle("1.0471975511965976") ==
        doctest::Approx(pi / 3).epsilon(1e-15));
  CHECK_THROWS_AS(parse_angle("pie"), InvalidParams);
  CHECK_THROWS_AS(parse_angle("pi/0"), InvalidParams);
  CHECK_THROWS_AS(parse_angle(""), InvalidParams);
  CHECK_THROWS_AS(parse_angle("1.2.3"), InvalidParams);
}

TEST_CASE("complex pair and case parsing") {
  Complex z = parse_complex_pair("0.6,-0.8");
  CHECK(z.real() == 0.6);
  CHECK(z.imag() == -0.8);
  CHECK_THROWS_AS(parse_complex_pair("1.0"), InvalidParams);
  CHECK_THROWS_AS(parse_complex_pair("a,b"), InvalidParams);

  LawCase usual = parse_case("usual");
  CHECK(usual.is_usual());
  LawCase two_three = parse_case("2,3");
  CHECK(two_three.m == 2);
  CHECK(two_three.n == 3);
  CHECK_THROWS_AS(parse_case("0,1"), InvalidParams);
  CHECK_THROWS_AS(parse_case("x"), InvalidParams);
}

TEST_CASE("simulate writes a normalized ascending CSV") {
  TempDir tmp;
  std::string out = tmp.file("sim.csv");
  int rc = run_cli({"simulate", "--theta", "pi/4", "--tau", "50", "--m", "1",
                    "--n", "1", "--out", out});
  REQUIRE(rc == kExitOk);
  std::string raw = slurp(out);
  CHECK(raw.find('\r') == std::string::npos);
  Csv csv = read_csv(out);
  REQUIRE(csv.comments.size() >= 2);
  CHECK(csv.comments[0].find("theta=") != std::string::npos);
  CHECK(csv.comments[1].find("t=101") != std::string::npos);
  CHECK(csv.header == "x,probability");
  double sum = 0.0;
  double prev = -1e9;
  for (auto [x, p] : csv.rows) {
    CHECK(x > prev);
    prev = x;
    CHECK(p >= 0.0);
    sum += p;
  }
  CHECK(std::abs(sum - 1.0) <= 1e-12);
}

TEST_CASE("simulate at t=0 emits the single origin row") {
  TempDir tmp;
  std::string out = tmp.file("sim0.csv");
  int rc = run_cli({"simulate", "--theta", "pi/4", "--tau", "5", "--t", "0",
                    "--alpha", "1,0", "--beta", "0,0", "--out", out});
  REQUIRE(rc == kExitOk);
  Csv csv = read_csv(out);
  REQUIRE(csv.rows.size() == 1);
  CHECK(csv.rows[0].first == 0.0);
  CHECK(csv.rows[0].second == 1.0);
}

TEST_CASE("limit emits the atom weight and a banded density") {
  TempDir tmp;
  std::string out = tmp.file("law.csv");
  int rc = run_cli({"limit", "--case", "1,1", "--theta", "pi/4", "--out", out});
  REQUIRE(rc == kExitOk);
  Csv csv = read_csv(out);
  bool found = false;
  for (const std::string& c : csv.comments)
    if (c.find("delta_weight_at_zero=0.292893") != std::string::npos)
      found = true;
  CHECK(found);
  CHECK(csv.rows.size() == 1001);

  std::string out23 = tmp.file("law23.csv");
  rc = run_cli({"limit", "--case", "2,3", "--theta", "pi/4", "--grid-points",
                "201", "--out", out23});
  REQUIRE(rc == kExitOk);
  Csv csv23 = read_csv(out23);
  CHECK(csv23.rows.size() == 201);
  for (auto [x, density] : csv23.rows) {
    if (std::abs(x) > std::sqrt(0.5) + 1e-9) CHECK(density == 0.0);
    CHECK(density >= 0.0);
  }
}

TEST_CASE("re-read limit CSV integrates to its declared mass") {
  TempDir tmp;
  std::string out = tmp.file("mass.csv");
  int rc = run_cli({"limit", "--case", "2,2", "--theta", "pi/4", "--alpha",
                    "1,0", "--beta", "0,0", "--grid-points", "20001", "--out",
                    out});
  REQUIRE(rc == kExitOk);
  Csv csv = read_csv(out);
  double atom = -1.0;
  for (const std::string& c : csv.comments) {
    std::size_t pos = c.find("delta_weight_at_zero=");
    if (pos != std::string::npos) atom = std::stod(c.substr(pos + 21));
  }
  REQUIRE(atom >= 0.0);
  double h = 2.0 / (csv.rows.size() + 1);
  double integral = 0.0;
  for (auto [x, density] : csv.rows) integral += density * h;
  // A uniform grid undercounts the inverse-square-root band edges, so the
  // match is coarse by construction; the atom plus column must make up the
  // rest of the unit mass.
  CHECK(std::abs(integral + atom - 1.0) <= 0.02);
}

TEST_CASE("limit density stays bounded at a cancelled band edge") {
  // theta=pi/3, [1,0]: the scaled second component vanishes toward its upper
  // support edge n|c|/(n+2) = 0.25 instead of diverging.
  TempDir tmp;
  std::string out = tmp.file("edge.csv");
  int rc = run_cli({"limit", "--case", "2,2", "--theta", "pi/3", "--alpha",
                    "1,0", "--beta", "0,0", "--grid-points", "2001", "--out",
                    out});
  REQUIRE(rc == kExitOk);
  Csv csv = read_csv(out);
  for (auto [x, density] : csv.rows) {
    CHECK(std::isfinite(density));
    if (std::abs(x - 0.25) < 0.01) CHECK(density < 5.0);
  }
}

TEST_CASE("limit rejects an even or small grid") {
  TempDir tmp;
  CHECK(run_cli({"limit", "--case", "1,1", "--theta", "pi/4", "--grid-points",
                 "200", "--out", tmp.file("x.csv")}) == kExitConfig);
  CHECK(run_cli({"limit", "--case", "1,1", "--theta", "pi/4", "--grid-points",
                 "99", "--out", tmp.file("x.csv")}) == kExitConfig);
}

TEST_CASE("compare emits a stable JSON report") {
  TempDir tmp;
  std::string out = tmp.file("cmp.json");
  int rc = run_cli({"compare", "--case", "1,2", "--theta", "pi/4", "--tau",
                    "100", "--out", out});
  REQUIRE(rc == kExitOk);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["case"] == "1,2");
  CHECK(j["time"] == 301);
  CHECK(double(j["ks_distance"]) <= 0.08);
  CHECK(j["localization"].contains("predicted_atom"));
  REQUIRE(j["moments"].size() == 2);
  CHECK(std::abs(double(j["moments"][0]["density"])) <= 1e-9);  // symmetric
}

TEST_CASE("moments reports the limit values") {
  TempDir tmp;
  std::string out = tmp.file("mom.json");
  int rc = run_cli({"moments", "--case", "2,3", "--theta", "pi/4", "--orders",
                    "0,1,2", "--out", out});
  REQUIRE(rc == kExitOk);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(std::abs(double(j["moments"]["0"]) - 1.0) <= 1e-9);
  CHECK(std::abs(double(j["moments"]["1"])) <= 1e-9);  // symmetric default
  CHECK(double(j["moments"]["2"]) > 0.0);
}

TEST_CASE("unsupported kick counts exit with the config code and a message") {
  TempDir tmp;
  CHECK(run_cli({"compare", "--case", "3,1", "--theta", "pi/4", "--tau", "50",
                 "--out", tmp.file("x.json")}) == kExitConfig);
  CHECK(run_cli({"moments", "--case", "4,2", "--theta", "pi/4", "--out",
                 tmp.file("y.json")}) == kExitConfig);
}

TEST_CASE("invalid flags and forbidden angles exit with the config code") {
  TempDir tmp;
  CHECK(run_cli({"simulate", "--tau", "10", "--out", tmp.file("x.csv"),
                 "--bogus"}) == kExitConfig);
  CHECK(run_cli({"simulate", "--theta", "pi/2", "--tau", "10", "--out",
                 tmp.file("x.csv")}) == kExitConfig);
  CHECK(run_cli({"simulate", "--theta", "pi/4", "--tau", "10", "--alpha",
                 "1,0", "--beta", "1,0", "--out", tmp.file("x.csv")}) ==
        kExitConfig);
}

TEST_CASE("unwritable output exits with the io code") {
  CHECK(run_cli({"simulate", "--theta", "pi/4", "--tau", "10", "--out",
                 "/nonexistent_dir_qwalk/out.csv"}) == kExitIo);
}

TEST_CASE("compare output is byte-identical across runs and worker counts") {
  TempDir tmp;
  std::vector<std::string> outputs;
  for (std::string workers : {"1", "2", "8", "1"}) {
    std::string out = tmp.file("det_" + workers + "_" +
                               std::to_string(outputs.size()) + ".json");
    int rc = run_cli({"compare", "--case", "2,2", "--theta", "pi/3", "--tau",
                      "60", "--alpha", "1,0", "--beta", "0,0", "--workers",
                      workers, "--out", out});
    REQUIRE(rc == kExitOk);
    outputs.push_back(slurp(out));
  }
  for (std::size_t i = 1; i < outputs.size(); ++i)
    CHECK(outputs[i] == outputs[0]);
}
