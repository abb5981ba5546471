#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

fs::path scratch() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("polyvf_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Run run(const std::string& args) {
  fs::path out = scratch() / "stdout.txt";
  std::string cmd = std::string("\"") + POLYVF_CLI + "\" " + args + " > \"" + out.string() + "\" 2>/dev/null";
  int status = std::system(cmd.c_str());
  std::ifstream f(out);
  std::stringstream ss;
  ss << f.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string write(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("classify closed forms") {
  auto a = run("classify --coeffs \"-1,0,1\"");
  REQUIRE(a.code == 0);
  auto j = nlohmann::json::parse(a.out);
  CHECK(j["data_set"]["H"].empty());
  CHECK(std::abs(double(j["alphas"][0]["im"]) - 3.14159265358979) < 1e-6);

  auto b = run("classify --coeffs \"1,0,1\"");
  REQUIRE(b.code == 0);
  auto k = nlohmann::json::parse(b.out);
  CHECK(k["data_set"]["H"] == nlohmann::json::array({0, 1}));
  CHECK(std::abs(double(k["taus"][0]) - 3.14159265358979) < 1e-6);

  auto c = run("classify --coeffs \"0,0,1\"");
  REQUIRE(c.code == 0);
  auto m = nlohmann::json::parse(c.out);
  CHECK(m["data_set"]["classes"].size() == 1);
  CHECK(m["alphas"].empty());
  CHECK(m["taus"].empty());
}

TEST_CASE("output is byte-identical across runs") {
  auto a = run("classify --coeffs \"0.3+0.7i,-0.2+1.1i,0,1\"");
  auto b = run("classify --coeffs \"0.3+0.7i,-0.2+1.1i,0,1\"");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run("classify --coeffs \"1,x\"").code == 1);
  CHECK(run("classify").code == 1);
  CHECK(run("nonsense").code == 1);
  CHECK(run("enumerate --d 2 --mode bogus").code == 1);
  CHECK(run("validate --in /nonexistent/file.json").code == 1);
}

TEST_CASE("enumerate") {
  auto a = run("enumerate --d 2");
  REQUIRE(a.code == 0);
  CHECK(a.out.find("count: 3\n") != std::string::npos);
  auto b = run("enumerate --d 4 --mode structurally-stable");
  CHECK(b.out.find("count: 5\n") != std::string::npos);
}

TEST_CASE("validate exit codes") {
  auto good = write("good.json", R"({"d":3,"classes":[[0,2],[1],[3]],"H":[]})");
  auto bad = write("bad.json", R"({"d":3,"classes":[[0],[1],[2],[3]],"H":[]})");
  auto a = run("validate --in \"" + good + "\"");
  CHECK(a.code == 0);
  auto j = nlohmann::json::parse(a.out);
  CHECK(j["valid"] == true);
  CHECK(j["euler_characteristic"] == 2);
  CHECK(run("validate --in \"" + bad + "\"").code == 3);
}

TEST_CASE("realize and round trip through files") {
  auto cls = scratch() / "cls.json";
  REQUIRE(run("classify --coeffs \"-1,0,1\" --out \"" + cls.string() + "\"").code == 0);
  auto r = run("realize --in \"" + cls.string() + "\"");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(double(j["coeffs"][0]["re"]) + 1) < 1e-9);
  auto bad = write("badprob.json", R"({"data_set":{"d":3,"classes":[[0],[1],[2],[3]],"H":[]},"alphas":[],"taus":[]})");
  CHECK(run("realize --in \"" + bad + "\"").code == 3);
  auto nongen = write("nongen.json",
                      R"({"data_set":{"d":3,"classes":[[0,1,2,3]],"H":[]},"alphas":[],"taus":[]})");
  CHECK(run("realize --in \"" + nongen + "\"").code == 4);
}

TEST_CASE("render") {
  auto ds = write("d9.json",
                  R"({"d":9,"classes":[[0,2],[1],[3,4],[5,6],[7,8,11],[9,10],[12,15],[13,14]],"H":[3,4,5,6,9,10,12,13,14,15]})");
  auto a = run("render --mode disk-model --in \"" + ds + "\"");
  REQUIRE(a.code == 0);
  for (const char* kind : {"alpha-omega", "odd-sepal", "even-sepal", "odd-center", "even-center"})
    CHECK(a.out.find(std::string("data-kind=\"") + kind + "\"") != std::string::npos);
  auto b = run("render --mode phase-portrait --coeffs \"1,0,1\"");
  REQUIRE(b.code == 0);
  CHECK(b.out.find("data-fate=\"homoclinic\"") != std::string::npos);
}
