#include "fqg/io.hpp"
#include "instances.hpp"

#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

#ifndef FQG_CLI_PATH
#error "FQG_CLI_PATH must point at the built binary"
#endif

using namespace fqg;
using namespace fqg::testing;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(FQG_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = ::popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = ::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = ::pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct Fixture {
  std::filesystem::path dir;
  Fixture() {
    dir = std::filesystem::temp_directory_path() /
          ("fqg-cli-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    save_groupoid(p2(), file("p2.json"));
    save_groupoid(z2(), file("z2.json"));
    save_groupoid(s3(), file("s3.json"));
    save_matchpair_ids({0, 2}, {0, 3, 4}, file("s3_pair.json"));
    save_action(z2_ad_sigma_x_action(), file("ad.json"), file("ad_g.json"));
    save_action(z2_flip_action(), file("flip.json"), file("flip_g.json"));
    std::ofstream bad(file("bad.json"));
    bad << "{ definitely not json ]";
  }
  ~Fixture() { std::filesystem::remove_all(dir); }
  std::string file(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("exit code semantics") {
  Fixture fx;
  CHECK(run("verify-mpi " + fx.file("p2.json")).exit_code == 0);
  CHECK(run("verify-mpi " + fx.file("s3.json") + " " + fx.file("s3_pair.json")).exit_code == 0);
  CHECK(run("verify-mpi " + fx.file("bad.json")).exit_code == 2);
  CHECK(run("verify-mpi " + fx.file("nonexistent.json")).exit_code == 2);
  CHECK(run("verify-mpi").exit_code == 2);
  CHECK(run("frobnicate " + fx.file("p2.json")).exit_code == 2);
}

TEST_CASE("haar prints the uniform measure on C(Z/2)") {
  Fixture fx;
  RunResult r = run("haar " + fx.file("z2.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("0.500000, 0.500000") != std::string::npos);
}

TEST_CASE("wha emits a schema-stable JSON report with the export attached") {
  Fixture fx;
  RunResult r = run("wha " + fx.file("p2.json") + " --format json");
  CHECK(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  REQUIRE(j.contains("checks"));
  REQUIRE(j["checks"].is_array());
  REQUIRE_FALSE(j["checks"].empty());
  std::string prev;
  for (const auto& c : j["checks"]) {
    REQUIRE(c.contains("axiom"));
    REQUIRE(c.contains("residual"));
    REQUIRE(c.contains("pass"));
    std::string cur = c["axiom"].get<std::string>();
    CHECK(prev <= cur);  // sorted for reproducible diffs
    prev = cur;
  }
  CHECK(j.contains("pass"));
  CHECK(j.contains("max_residual"));
  REQUIRE(j.contains("weakhopf"));
  CHECK(j["weakhopf"].contains("coproduct"));
  CHECK(j["weakhopf"].contains("antipode"));
  CHECK(j["weakhopf"].contains("counit"));
}

TEST_CASE("reports are deterministic across runs") {
  Fixture fx;
  std::string a = run("matchpair " + fx.file("s3.json") + " " + fx.file("s3_pair.json") +
                      " --format json")
                      .out;
  std::string b = run("matchpair " + fx.file("s3.json") + " " + fx.file("s3_pair.json") +
                      " --format json")
                      .out;
  CHECK(a == b);
  CHECK_FALSE(a.empty());
}

TEST_CASE("crossed-product and outer-test on action files") {
  Fixture fx;
  RunResult cr = run("crossed-product " + fx.file("flip.json") + " --format json");
  CHECK(cr.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(cr.out);
  CHECK(j["dimension"].get<int>() == 4);

  RunResult ou = run("outer-test " + fx.file("ad.json"));
  CHECK(ou.exit_code == 0);
  CHECK(ou.out.find("not outer") != std::string::npos);
  CHECK(ou.out.find("inner witness") != std::string::npos);

  CHECK(run("crossed-product " + fx.file("bad.json")).exit_code == 2);
}

TEST_CASE("a tolerance no instance can meet yields exit 1") {
  Fixture fx;
  RunResult r = run("matchpair " + fx.file("s3.json") + " " + fx.file("s3_pair.json") +
                    " --tol 1e-300");
  CHECK(r.exit_code == 1);
}
