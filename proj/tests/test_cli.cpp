#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  const std::string out_path = "/tmp/polycap_cli_out.txt";
  const std::string err_path = "/tmp/polycap_cli_err.txt";
  const std::string cmd = std::string(POLYCAP_CLI_PATH) + " " + args + " >" +
                          out_path + " 2>" + err_path;
  const int status = std::system(cmd.c_str());
  RunResult res;
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  res.out = slurp(out_path);
  res.err = slurp(err_path);
  return res;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line))
    if (!line.empty()) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("cap: annulus fixture emits the known capacity") {
  const auto res = run_cli("cap --domain builtin:annulus-0.7 --n 256");
  REQUIRE(res.exit_code == 0);
  const auto rows = lines_of(res.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "capacity,c,h_dev,cond,n,grading_p,seconds");
  const auto fields = split_csv_line(rows[1]);
  CHECK(std::abs(std::stod(fields[0]) - 17.615998583457760) < 1e-10);
}

TEST_CASE("cap: JSON output carries diagnostics") {
  const auto res = run_cli(
      "cap --domain builtin:annulus-0.7 --n 64 --solver dense --out json");
  REQUIRE(res.exit_code == 0);
  const auto doc = nlohmann::json::parse(res.out);
  CHECK(doc.contains("capacity"));
  CHECK(doc["n"] == 64);
  CHECK(doc["solver"]["method"] == "dense");
  CHECK(doc["a"].size() == 1);
}

TEST_CASE("cap: fixture files on disk behave like builtins") {
  const auto res = run_cli("cap --domain " POLYCAP_FIXTURE_DIR
                           "/annulus-0.7.json --n 128");
  REQUIRE(res.exit_code == 0);
  const auto fields = split_csv_line(lines_of(res.out)[1]);
  CHECK(std::abs(std::stod(fields[0]) - 17.615998583457760) < 1e-7);
}

TEST_CASE("cap: malformed domain file exits 2 and names the field") {
  const std::string path = "/tmp/polycap_cli_bad.json";
  {
    std::ofstream out(path);
    out << R"({"version":"polycap-domain-v1","outer":{"arcs":[{"kind":"full_circle","center":[0,0],"radius":1,"ccw":true}]},"holes":[{"arcs":[{"kind":"full_circle","center":[0,0],"radius":-0.5,"ccw":false}]}]})";
  }
  const auto res = run_cli("cap --domain " + path + " --n 64");
  CHECK(res.exit_code == 2);
  CHECK(res.err.find("radius") != std::string::npos);
  CHECK(res.out.empty());
  std::remove(path.c_str());
}

TEST_CASE("cap: unknown builtin exits 2") {
  const auto res = run_cli("cap --domain builtin:nope --n 64");
  CHECK(res.exit_code == 2);
  CHECK(!res.err.empty());
}

TEST_CASE("sweep: single n row has an empty slope column") {
  const auto res = run_cli("sweep --domain builtin:annulus-0.7 --n-list 64");
  REQUIRE(res.exit_code == 0);
  const auto rows = lines_of(res.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "n,capacity,error,slope");
  const auto fields = split_csv_line(rows[1]);
  CHECK(fields[0] == "64");
  CHECK(fields.size() <= 3);  // error and slope both empty
}

TEST_CASE("mobius: deviations and bad input") {
  const auto ok = run_cli(
      "mobius --domain builtin:mobius-E --a-list \"0;0.1\" --n 128");
  REQUIRE(ok.exit_code == 0);
  const auto rows = lines_of(ok.out);
  REQUIRE(rows.size() == 3);
  CHECK(split_csv_line(rows[1])[2] == "0");

  const auto bad = run_cli(
      "mobius --domain builtin:mobius-E --a-list \"0;1.5\" --n 128");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("bounds: disk endpoint row") {
  const auto res = run_cli("bounds --r 0.8 --s-grid 0.8:0.8:0.1 --n 256");
  REQUIRE(res.exit_code == 0);
  const auto rows = lines_of(res.out);
  REQUIRE(rows.size() == 2);
  const auto fields = split_csv_line(rows[1]);
  CHECK(std::abs(std::stod(fields[2]) - 28.157593038985901) < 1e-8);
  CHECK(std::abs(std::stod(fields[4]) - 28.157593038985901) < 1e-8);
}

TEST_CASE("exact: closed forms") {
  auto res = run_cli("exact --what annulus --param 0.7");
  REQUIRE(res.exit_code == 0);
  CHECK(std::abs(std::stod(res.out) - 17.615998583457760) < 1e-12);

  res = run_cli("exact --what segment --param 0.8");
  REQUIRE(res.exit_code == 0);
  CHECK(std::abs(std::stod(res.out) - 7.360222723821019) < 1e-12);

  res = run_cli("exact --what grotzsch --param 0.5");
  REQUIRE(res.exit_code == 0);
  CHECK(std::stod(res.out) > 0.0);

  res = run_cli("exact --what annulus --param 1.5");
  CHECK(res.exit_code == 2);
}

TEST_CASE("capacity values print with 16 significant digits") {
  const auto res = run_cli("cap --domain builtin:annulus-0.7 --n 256");
  REQUIRE(res.exit_code == 0);
  const std::string cap = split_csv_line(lines_of(res.out)[1])[0];
  int digits = 0;
  for (char ch : cap)
    if (ch >= '0' && ch <= '9') ++digits;
  CHECK(digits >= 16);
}
