#include <doctest.h>

#include "fixtures.hpp"

#include <tim/cli.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;
using tim::run_cli;

namespace {

struct Workdir {
  fs::path root;
  Workdir() {
    root = fs::temp_directory_path() / ("tim_cli_" + std::to_string(::getpid()));
    fs::create_directories(root);
    write("A.json", fixtures::kA);
    write("B.json", fixtures::kB);
    write("C.json", fixtures::kC);
  }
  ~Workdir() { fs::remove_all(root); }
  std::string path(const std::string& name) const { return (root / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(root / name) << text; }
  std::string read(const std::string& name) const {
    std::ifstream in(root / name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "tim");
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("bound") {
  Workdir w;
  auto r = run({"bound", w.path("C.json")});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"class\":\"General\",\"cycle_term\":\"3/8\",\"delta_term\":\"2/5\",\"value\":\"3/8\"}\n");
  auto text = run({"bound", w.path("B.json"), "--format", "text"});
  CHECK(text.code == 0);
  CHECK(text.out.find("2/5") != std::string::npos);
}

TEST_CASE("synth then verify") {
  Workdir w;
  CHECK(run({"synth", w.path("B.json"), "--seed", "7", "--out", w.path("s.json")}).code == 0);
  auto v = run({"verify", w.path("B.json"), w.path("s.json"), "--target", "2/5"});
  CHECK(v.code == 0);
  CHECK(v.out.find("\"pass\":true") != std::string::npos);
  auto too_high = run({"verify", w.path("B.json"), w.path("s.json"), "--target", "1/2"});
  CHECK(too_high.code == 1);
}

TEST_CASE("class and parse errors") {
  Workdir w;
  CHECK(run({"synth", w.path("C.json")}).code == 3);
  w.write("bad.json", "{\"K\":2,\"interferers\":{\"1\":[1]}}");
  CHECK(run({"bound", w.path("bad.json")}).code == 2);
  CHECK(run({"bound", w.path("missing.json")}).code == 2);
  CHECK(run({"bound", w.path("A.json"), "--bogus"}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"verify", w.path("A.json"), w.path("A.json")}).code == 2);
}

TEST_CASE("identical inputs give byte-identical outputs") {
  Workdir w;
  for (int k = 0; k < 2; ++k) {
    CHECK(run({"synth", w.path("B.json"), "--seed", "3", "--out", w.path("s" + std::to_string(k) + ".json")}).code == 0);
  }
  CHECK(w.read("s0.json") == w.read("s1.json"));
  CHECK(w.read("s0.json").find('\r') == std::string::npos);
  CHECK(run({"analyze", w.path("B.json")}).out == run({"analyze", w.path("B.json")}).out);
  auto s1 = run({"survey", "--k", "3", "--exhaustive"});
  auto s2 = run({"survey", "--k", "3", "--exhaustive"});
  CHECK(s1.code == 0);
  CHECK(s1.out == s2.out);
}

TEST_CASE("analyze and export-dot") {
  Workdir w;
  auto r = run({"analyze", w.path("A.json"), "--dot", w.path("a.dot")});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"class\":\"Best\"") != std::string::npos);
  CHECK(w.read("a.dot").find("digraph") != std::string::npos);
  auto d = run({"export-dot", w.path("C.json")});
  CHECK(d.code == 0);
  CHECK(d.out.find("style=dashed") != std::string::npos);
}

TEST_CASE("survey output") {
  Workdir w;
  auto r = run({"survey", "--k", "2", "--exhaustive", "--out", w.path("k2.jsonl")});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"summary\"") != std::string::npos);
  auto lines = w.read("k2.jsonl");
  CHECK(std::count(lines.begin(), lines.end(), '\n') == 4);
  CHECK(run({"survey", "--k", "6", "--random", "5", "--density", "1/4"}).code == 0);
  CHECK(run({"survey", "--k", "5", "--exhaustive"}).code == 2);
}

TEST_CASE("installed binary exit codes") {
  Workdir w;
  auto shell = [&](const std::string& args) {
    int status = std::system((std::string(TIM_BINARY) + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  CHECK(shell("bound " + w.path("C.json")) == 0);
  CHECK(shell("synth " + w.path("C.json")) == 3);
  CHECK(shell("synth " + w.path("B.json") + " --seed 7 --out " + w.path("s.json")) == 0);
  CHECK(shell("verify " + w.path("B.json") + " " + w.path("s.json") + " --target 2/5") == 0);
  CHECK(shell("bound " + w.path("C.json") + " --unknown-flag") == 2);
}
