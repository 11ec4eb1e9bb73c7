#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "backflow/cli.hpp"
#include "doctest.h"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "backflow");
  std::ostringstream out;
  std::ostringstream err;
  const int code = backflow::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("angle parsing") {
  using backflow::cli::parse_angle;
  CHECK(parse_angle("pi") == std::numbers::pi);
  CHECK(parse_angle("-pi") == -std::numbers::pi);
  CHECK(parse_angle("0.5pi") == 0.5 * std::numbers::pi);
  CHECK(parse_angle("2*pi") == 2.0 * std::numbers::pi);
  CHECK(parse_angle("1.25") == 1.25);
  CHECK_THROWS(static_cast<void>(parse_angle("pie")));
  CHECK_THROWS(static_cast<void>(parse_angle("1.0x")));
  CHECK_THROWS(static_cast<void>(parse_angle("")));
}

TEST_CASE("case 2 at gamma = 2 reports backflow") {
  const auto r = run({"case", "--id", "2", "--a", "1", "--phi", "pi", "--lambda", "1", "--k", "1.7320508"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["current_range"]["jz"][1].get<double>() < 0.0);
  CHECK(j["verification_passed"].get<bool>());
  CHECK(j["backflow_intervals"]["intervals"].size() == 1);
}

TEST_CASE("case 4 has positive jx and jz and no intervals") {
  const auto r = run({"case", "--id", "4", "--a", "0.5", "--phi", "0"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["current_range"]["jx"][0].get<double>() > 0.0);
  CHECK(j["current_range"]["jz"][0].get<double>() > 0.0);
  CHECK(j["backflow_intervals"]["intervals"].empty());
}

TEST_CASE("usage errors exit 1 and name the flag") {
  auto r = run({"case", "--id", "9"});
  CHECK(r.code == 1);
  CHECK(r.err.find("--id") != std::string::npos);
  r = run({"case", "--id", "2", "--phi", "bogus"});
  CHECK(r.code == 1);
  CHECK(r.err.find("--phi") != std::string::npos);
  r = run({"case", "--id", "2", "--lambda", "3"});
  CHECK(r.code == 1);
  CHECK(r.err.find("--lambda") != std::string::npos);
  CHECK(run({"fock", "--modes", "9"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"case", "--id", "1", "--format", "xml"}).code == 1);
  CHECK(run({"case", "--id", "1", "--hbar", "-1"}).code == 1);
}

TEST_CASE("fig1 grid csv") {
  auto r = run({"fig1", "--res", "2"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "a,x,v,Q,mask_v,mask_Q");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    if (line.rfind("0,", 0) == 0) CHECK(line.find(",0,0") != std::string::npos);  // a = 0 row
  }
  CHECK(rows == 4);

  r = run({"fig1"});
  REQUIRE(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 400 * 400 + 1);
}

TEST_CASE("fock subcommand") {
  auto r = run({"fock", "--modes", "1"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["identity_holds"].get<bool>());
  r = run({"fock", "--modes", "4", "--spin", "-0.5"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["proportionality"].get<double>() == doctest::Approx(-1.0));
  CHECK(r.code == (j["identity_holds"].get<bool>() ? 0 : 2));
}

TEST_CASE("nr and threshold subcommands") {
  auto r = run({"nr", "--a", "1", "--x", "0"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["Q"].get<double>() == doctest::Approx(0.125));
  CHECK(run({"nr", "--a", "1", "--x", "pi"}).code == 1);  // not a number for --x

  r = run({"threshold", "--id", "2", "--k", "1.7320508075688772"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["threshold"].get<double>() - j["closed_form"].get<double>()) < 1e-8);
  CHECK(run({"threshold", "--id", "4", "--phi", "0"}).code == 2);
}

TEST_CASE("scan writes samples and output is deterministic") {
  const std::string path = temp_path("backflow_scan_test.csv");
  auto r = run({"scan", "--id", "3", "--a", "0.4", "--phi", "0.5pi", "--samples", "11", "--out", path});
  REQUIRE(r.code == 0);
  const std::string first = slurp(path);
  CHECK(first.rfind("z,t,rho,jx,jy,jz,vz,flag_node\n", 0) == 0);
  CHECK(std::count(first.begin(), first.end(), '\n') == 12);
  run({"scan", "--id", "3", "--a", "0.4", "--phi", "0.5pi", "--samples", "11", "--out", path});
  CHECK(slurp(path) == first);
  std::remove(path.c_str());

  const auto a = run({"verify-all", "--draws", "3", "--seed", "5"});
  const auto b = run({"verify-all", "--draws", "3", "--seed", "5"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("global physical constants reach every subcommand") {
  const auto r = run({"--c", "2", "case", "--id", "1", "--k", "1", "--samples", "3"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["params"]["c"].get<double>() == 2.0);
  // j_z = c^2 hbar k / |E| with |E| = sqrt(4 + 16)
  CHECK(j["current_range"]["jz"][0].get<double>() == doctest::Approx(4.0 / std::sqrt(20.0)));
  const auto after = run({"case", "--id", "1", "--k", "1", "--samples", "3", "--c", "2"});
  CHECK(after.out == r.out);
}

#ifdef BACKFLOW_CLI_PATH
TEST_CASE("installed binary runs") {
  const std::string cmd = std::string(BACKFLOW_CLI_PATH) + " fock --modes 2 > /dev/null";
  CHECK(std::system(cmd.c_str()) == 0);
}
#endif
