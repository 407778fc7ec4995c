#include "instances.hpp"

#include <doctest.h>

#include <vector>

using namespace fqg;
using namespace fqg::testing;

namespace {

std::vector<Mpi> commutative_instances() {
  return {build_I_G(unit_groupoid()), build_I_G(z2()), build_I_G(p2()),
          build_I_G(p3()), build_I_G(z2_sqcup_z2())};
}

}  // namespace

TEST_CASE("groupoid partial isometries satisfy every axiom") {
  for (const Mpi& ii : commutative_instances()) {
    Report rep = verify_mpi(ii);
    CAPTURE(ii.provenance);
    CHECK(rep.pass());
    CHECK(is_partial_isometry(ii.matrix));
  }
}

TEST_CASE("match pair partial isometry satisfies every axiom") {
  Mpi ii = build_I_HK(s3_match_pair());
  Report rep = verify_mpi(ii);
  for (const auto& c : rep.checks) {
    CAPTURE(c.axiom);
    CHECK(c.residual < kTol);
  }
  CHECK(is_partial_isometry(ii.matrix));
}

TEST_CASE("degenerate match pairs reproduce the groupoid isometry") {
  // With K = G^0 the factorization map is g = g * s(g), so I_HK = I_G.
  Groupoid g = p2();
  Mpi a = build_I_G(g);
  Mpi b = build_I_HK(degenerate_pair_h(g));
  CHECK(op_norm(a.matrix - b.matrix) < kTol);
  CHECK(verify_mpi(build_I_HK(degenerate_pair_k(g))).pass());
}

TEST_CASE("a corrupted isometry fails verification loudly") {
  Mpi ii = build_I_G(z2());
  ii.matrix(0, 3) += 1.0;
  CHECK(verify_mpi(ii).max_residual() >= 0.1);
}

TEST_CASE("regularity and slice algebra dimensions") {
  for (const Mpi& ii : commutative_instances()) {
    RegularityResult reg = is_regular(ii);
    CAPTURE(ii.provenance);
    CHECK(reg.regular);
    auto [s, shat] = leg_algebras(ii);
    CHECK(s.dim() == shat.dim());
    CHECK(s.dim() == ii.n);  // both sides have dim |G| for a groupoid
  }
  Mpi ii = build_I_HK(s3_match_pair());
  CHECK(is_regular(ii).regular);
  auto [s, shat] = leg_algebras(ii);
  CHECK(s.dim() == shat.dim());
}

TEST_CASE("four corners of the commutant lattice") {
  for (const Mpi& ii : {build_I_G(z2()), build_I_G(p2()), build_I_HK(s3_match_pair())}) {
    Report rep = four_corners(ii);
    CAPTURE(ii.provenance);
    CHECK(rep.pass());
  }
}

TEST_CASE("pentagon check is skipped above the dimension cap") {
  Mpi ii = build_I_G(p2());
  Report rep = verify_mpi(ii, 2);
  for (const auto& c : rep.checks) CHECK(c.axiom != "pentagon");
  CHECK(rep.pass());
}
