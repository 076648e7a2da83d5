#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* env = std::getenv("BELLSTREAMS_CLI");
  REQUIRE(env != nullptr);
  return env;
}

int run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("bellstreams_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("streams then verify-identity round-trips") {
  TempDir dir;
  const auto three = (dir.path / "three.txt").string();
  CHECK(run("streams --model bell-linear --angles 0,60,120 --trials 200 --seed 5 --out " +
            three) == 0);
  CHECK(run("verify-identity --in " + three) == 0);

  const auto four = (dir.path / "four.txt").string();
  CHECK(run("streams --model bell-linear --angles 0,90,-45,45 --trials 200 --seed 5 --out " +
            four) == 0);
  CHECK(run("verify-identity --in " + four) == 0);
}

TEST_CASE("malformed stream files are a data error") {
  TempDir dir;
  const auto bad = dir.path / "bad.txt";
  std::ofstream(bad) << "a b b'\n+1 0 -1\n";
  CHECK(run("verify-identity --in " + bad.string()) == 2);

  const auto ragged = dir.path / "ragged.txt";
  std::ofstream(ragged) << "a b b'\n+1 -1 +1\n+1 -1\n";
  CHECK(run("verify-identity --in " + ragged.string()) == 2);

  CHECK(run("verify-identity --in " + (dir.path / "missing.txt").string()) == 2);
}

TEST_CASE("config errors give usage exit code") {
  // Matched CHSH with nonlocality is inconsistent with the four-stream bound.
  CHECK(run("experiment --model nonlocal-toy --angles 0,90,-45,45 --trials 100 --seed 1 "
            "--acquisition matched --locality nonlocal") == 1);
  // Unmatched three-correlation from the singlet source has no (b,b') run.
  CHECK(run("experiment --model singlet --angles 0,60,120 --trials 100 --seed 1 "
            "--acquisition unmatched") == 1);
  // Nonlocal streams need a nonlocal model.
  CHECK(run("streams --model bell-linear --angles 0,90,-45,45 --trials 10 --seed 1 "
            "--locality nonlocal") == 1);
  CHECK(run("experiment --model no-such-model --angles 0,60,120 --trials 10 --seed 1") == 1);
}

TEST_CASE("stream counts appear in the locality variants") {
  TempDir dir;
  const auto local_out = (dir.path / "local.txt").string();
  const auto nonlocal_out = (dir.path / "nonlocal.txt").string();
  CHECK(run("streams --model nonlocal-toy --angles 0,90,-45,45 --trials 50 --seed 2 "
            "--locality local --out " + local_out) == 0);
  CHECK(run("streams --model nonlocal-toy --angles 0,90,-45,45 --trials 50 --seed 2 "
            "--locality nonlocal --out " + nonlocal_out) == 0);

  std::string header;
  std::getline(std::ifstream(local_out), header);
  CHECK(header == "a1 a2 b1 b2");
  std::getline(std::ifstream(nonlocal_out), header);
  CHECK(header == "a1 a2 b1|a1 b1|a2 b2|a1 b2|a2");
}

TEST_CASE("experiment reports embed configuration and correlations") {
  TempDir dir;
  const auto base = (dir.path / "report").string();
  CHECK(run("experiment --model singlet --angles 0,90,-45,45 --trials 20000 --seed 9 "
            "--acquisition unmatched --format both --out " + base) == 0);
  const std::string body = slurp(base + ".json");
  CHECK(body.find("\"seed\": 9") != std::string::npos);
  CHECK(body.find("\"violated\": true") != std::string::npos);
  CHECK(body.find("\"a'b'\"") != std::string::npos);
  const std::string csv = slurp(base + ".csv");
  CHECK(csv.rfind("label,value,stderr,n", 0) == 0);
}

TEST_CASE("scan subcommand covers all three kinds") {
  TempDir dir;
  const auto wss = (dir.path / "wss").string();
  CHECK(run("scan --model cosine --scan wss --grid 0:180:32 --out " + wss) == 0);
  CHECK(slurp(wss + ".json").find("\"feasible\": false") != std::string::npos);

  const auto feas = (dir.path / "feas").string();
  CHECK(run("scan --model exponential:1.0 --scan wss --grid 0:3:32 --out " + feas) == 0);
  CHECK(slurp(feas + ".json").find("\"feasible\": true") != std::string::npos);

  const auto chsh = (dir.path / "chsh").string();
  CHECK(run("scan --model neg-cosine --scan chsh --grid -180:180:48 --out " + chsh) == 0);
  CHECK(slurp(chsh + ".json").find("best_excess") != std::string::npos);

  const auto three = (dir.path / "three").string();
  CHECK(run("scan --model neg-cosine --scan three --grid -180:180:48 --out " + three) == 0);
  CHECK(slurp(three + ".json").find("best_violation") != std::string::npos);
}

TEST_CASE("identical configs and seeds give byte-identical outputs") {
  TempDir dir;
  const auto s1 = (dir.path / "s1.txt").string();
  const auto s2 = (dir.path / "s2.txt").string();
  const std::string stream_args =
      "streams --model bell-linear --angles 0,45,135 --trials 500 --seed 31 --out ";
  CHECK(run(stream_args + s1) == 0);
  CHECK(run(stream_args + s2) == 0);
  CHECK(slurp(s1) == slurp(s2));

  const auto e1 = (dir.path / "e1").string();
  const auto e2 = (dir.path / "e2").string();
  const std::string exp_args =
      "experiment --model bell-linear --angles 0,60,120 --trials 2000 --seed 31 "
      "--format both --out ";
  CHECK(run(exp_args + e1) == 0);
  CHECK(run(exp_args + e2) == 0);
  CHECK(slurp(e1 + ".json") == slurp(e2 + ".json"));
  CHECK(slurp(e1 + ".csv") == slurp(e2 + ".csv"));
}
