#include "fqg/io.hpp"
#include "instances.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

using namespace fqg;
using namespace fqg::testing;

namespace {

struct TmpDir {
  std::filesystem::path path;
  TmpDir() {
    path = std::filesystem::temp_directory_path() /
           ("fqg-io-" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TmpDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("groupoid files round trip") {
  TmpDir tmp;
  for (const Groupoid& g : {z2(), p2(), s3()}) {
    save_groupoid(g, tmp.file("g.json"));
    Groupoid back = load_groupoid(tmp.file("g.json"));
    CHECK(back.n == g.n);
    CHECK(back.units == g.units);
    CHECK(back.mul == g.mul);
  }
}

TEST_CASE("malformed and invalid files raise parse errors") {
  TmpDir tmp;
  {
    std::ofstream out(tmp.file("bad.json"));
    out << "{ not json";
  }
  CHECK_THROWS_AS(load_groupoid(tmp.file("bad.json")), IoError);
  {
    // Valid JSON, inconsistent tables.
    std::ofstream out(tmp.file("broken.json"));
    out << R"({"units":[0],"source":[0,0],"target":[0,0],"inverse":[0,0],"mul":[[0,0,0]]})";
  }
  CHECK_THROWS_AS(load_groupoid(tmp.file("broken.json")), IoError);
  CHECK_THROWS_AS(load_groupoid(tmp.file("missing.json")), IoError);
}

TEST_CASE("match pair files round trip") {
  TmpDir tmp;
  save_matchpair_ids({0, 2}, {0, 3, 4}, tmp.file("mp.json"));
  auto [h, k] = load_matchpair_ids(tmp.file("mp.json"));
  CHECK(h == std::vector<int>{0, 2});
  CHECK(k == std::vector<int>{0, 3, 4});
}

TEST_CASE("action files round trip with a relative groupoid path") {
  TmpDir tmp;
  GroupoidAction act = z2_ad_sigma_x_action();
  save_action(act, tmp.file("a.json"), tmp.file("g.json"));
  GroupoidAction back = load_action(tmp.file("a.json"));
  CHECK(back.mod.blocks == act.mod.blocks);
  for (int g = 0; g < 2; ++g) CHECK((back.maps[g] - act.maps[g]).norm() < kTol);
}

TEST_CASE("action files that are not actions are rejected") {
  TmpDir tmp;
  GroupoidAction act = z2_flip_action();
  act.maps[1] = Mat::Identity(2, 2) * 0.5;  // not multiplicative
  save_action(act, tmp.file("a.json"), tmp.file("g.json"));
  CHECK_THROWS_AS(load_action(tmp.file("a.json")), IoError);
}

TEST_CASE("report serialization is sorted and schema stable") {
  Report rep;
  rep.add("zeta", 0.5);
  rep.add("alpha", 1e-12);
  rep.sort();
  std::string j = report_to_json(rep, 1e-9);
  CHECK(j.find("\"axiom\"") != std::string::npos);
  CHECK(j.find("\"residual\"") != std::string::npos);
  CHECK(j.find("\"pass\"") != std::string::npos);
  CHECK(j.find("alpha") < j.find("zeta"));
  std::string t = report_to_text(rep, 1e-9);
  CHECK(t.find("PASS  alpha") != std::string::npos);
  CHECK(t.find("FAIL  zeta") != std::string::npos);
}
