#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include <json.hpp>

namespace {

using json = nlohmann::ordered_json;

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(SKEWPBW_BIN) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json report(const std::string& args, int expected_code) {
  Run r = run("--json " + args);
  CHECK_MESSAGE(r.code == expected_code, args);
  json j = json::parse(r.out);
  j.erase("wall_time_seconds");
  return j;
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  auto dir = std::filesystem::temp_directory_path() / "skewpbw_cli_test";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("text output") {
  CHECK(run("bound weyl --n 2").out.find("5") != std::string::npos);
  CHECK(run("normalize --algebra weyl --p 7 \"x*t\"").out == "t*x + 1\n");
  CHECK(run("mul --algebra weyl --p 7 x t").out == "t*x + 1\n");
  CHECK(run("zariski D --ring Zmod:12 --gens 0").out.find("{0,6}") != std::string::npos);
  CHECK(run("catalog list").out.find("u-sl2") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run("bound weyl --n 2").code == 0);
  CHECK(run("check --algebra u-sl2 --p 7").code == 0);
  CHECK(run("unimod check --algebra weyl --p 101 --row \"t, x\" --bound 1").code == 0);
  CHECK(run("unimod check --algebra polynomial-ring --p 5 --row \"x, x\" --bound 2").code == 1);
  CHECK(run("zariski shrink --ring Zmod:12 --us 2,4,6").code == 1);
  CHECK(run("bound polynomial-ring").code == 2);
  CHECK(run("bound no-such-row").code == 2);
  CHECK(run("normalize --algebra weyl \"x*(\"").code == 2);
  CHECK(run("normalize --algebra nothing x").code == 2);
  CHECK(run("--no-such-flag").code == 2);
  CHECK(run("suite nothing").code == 2);

  auto bad = write_temp("bad.txt", "ring Q\nvars x1 x2\nrel x2 x1 = 0 * x1 x2 + 1\n");
  CHECK(run("check --file " + bad.string()).code == 2);
  auto good = write_temp("good.txt", "ring Fp 7\nvars t x\nrel x t = t x + 1\n");
  CHECK(run("normalize --file " + good.string() + " \"x*t\"").out == "t*x + 1\n");
}

TEST_CASE("completion verification from files") {
  // U = I + x E_01 and its inverse complete the row (1, -x)
  auto U = write_temp("U.txt", "2 2\n1\nx\n0\n1\n");
  auto Uinv = write_temp("Uinv.txt", "2 2\n1\n-x\n0\n1\n");
  std::string files = " --U " + U.string() + " --Uinv " + Uinv.string();
  CHECK(run("complete verify --algebra weyl --p 7 --row \"1, -x\"" + files).code == 0);
  CHECK(run("complete verify --algebra weyl --p 7 --row \"1, x\"" + files).code == 1);
}

TEST_CASE("JSON reports are deterministic") {
  for (const char* args : {"check --algebra weyl --p 7", "suite bound", "suite lattice", "zariski laws --ring Zmod:12",
                           "zariski kronecker --backend fpt:5 --us \"t^2, t^2\" --u \"t + 1\"", "bound manin"}) {
    json a = report(args, 0);
    json b = report(args, 0);
    CHECK(a == b);
    CHECK(a["status"] == "ok");
  }
  json seeded = report("--seed 7 check --algebra weyl --p 7", 0);
  CHECK(seeded["seed"] == 7);
  CHECK(report("check --algebra weyl --p 7", 0) != seeded);
}

TEST_CASE("JSON reports follow the schema") {
  json schema = json::parse(std::ifstream(SKEWPBW_SCHEMA));
  std::set<std::string> allowed;
  for (const auto& [key, value] : schema["properties"].items()) allowed.insert(key);

  struct Case {
    const char* args;
    int code;
    const char* status;
  };
  for (const Case& c : {Case{"bound weyl --n 2", 0, "ok"}, Case{"suite kronecker", 0, "ok"},
                        Case{"unimod check --algebra polynomial-ring --p 5 --row \"x, x\" --bound 1", 1, "failed"},
                        Case{"bound polynomial-ring", 2, "error"}}) {
    Run r = run(std::string("--json ") + c.args);
    CHECK(r.code == c.code);
    json j = json::parse(r.out);
    for (const auto& key : schema["required"]) CHECK_MESSAGE(j.contains(key.get<std::string>()), c.args);
    for (const auto& [key, value] : j.items()) CHECK_MESSAGE(allowed.count(key) == 1, key);
    CHECK(j["schema_version"] == schema["properties"]["schema_version"]["const"]);
    CHECK(j["status"] == c.status);
    CHECK(j["results"].is_array());
    for (const auto& result : j["results"]) {
      CHECK(result["name"].is_string());
      CHECK(result["passed"].is_boolean());
    }
    CHECK(j.contains("error") == (std::string(c.status) == "error"));
  }
}
