#include "instances.hpp"

#include <doctest.h>

using namespace fqg;
using namespace fqg::testing;

namespace {

Mat shift(int n) {
  Mat s = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) s((i + 1) % n, i) = 1.0;
  return s;
}

Mat diag(std::initializer_list<double> d) {
  Mat m = Mat::Zero(static_cast<int>(d.size()), static_cast<int>(d.size()));
  int i = 0;
  for (double v : d) m(i, i) = v, ++i;
  return m;
}

}  // namespace

TEST_CASE("commutant of the diagonal masa is the diagonal") {
  StarSubspace c = commutant({diag({1, 2, 3})}, 3);
  CHECK(c.dim() == 3);
  CHECK(c.contains(diag({5, -1, 0})));
  CHECK_FALSE(c.contains(shift(3)));
}

TEST_CASE("shift and a separating diagonal generate the full matrix algebra") {
  StarSubspace a = generated_algebra({shift(4), diag({0, 1, 2, 3})}, 4);
  CHECK(a.dim() == 16);
  CHECK(a.closed_under_product);
  CHECK(a.closed_under_adjoint);
}

TEST_CASE("center of M2 (+) C is two-dimensional") {
  Mat e01 = Mat::Zero(3, 3), e10 = Mat::Zero(3, 3);
  e01(0, 1) = 1.0;
  e10(1, 0) = 1.0;
  StarSubspace a = generated_algebra({e01, e10, diag({0, 0, 1})}, 3, true);
  CHECK(a.dim() == 5);
  CHECK(center(a).dim() == 2);
}

TEST_CASE("intersection respects both spans") {
  StarSubspace d = span_of({diag({1, 0, 0}), diag({0, 1, 0}), diag({0, 0, 1})}, 3);
  StarSubspace s = span_of({Mat(Mat::Identity(3, 3)), shift(3)}, 3);
  StarSubspace i = intersect(d, s);
  CHECK(i.dim() == 1);
  CHECK(i.contains(Mat(Mat::Identity(3, 3))));
}

TEST_CASE("base representation and the canonical projection") {
  Groupoid g = p2();
  BaseRep s = base_rep_from_labels(g, g.src);
  BaseRep r = base_rep_from_labels(g, g.tgt);
  Mat sum = Mat::Zero(g.n, g.n);
  for (const Mat& p : s.proj) {
    CHECK(is_projection(p));
    sum += p;
  }
  CHECK(op_norm(sum - Mat::Identity(g.n, g.n)) < kTol);
  Mat e = e_proj(s, r);
  CHECK(is_projection(e));
  // e commutes with s(N) (x) 1 and 1 (x) r(N) and identifies the legs.
  for (int u = 0; u < 2; ++u) {
    Mat a = kron(s.proj[u], Mat::Identity(g.n, g.n));
    Mat b = kron(Mat::Identity(g.n, g.n), r.proj[u]);
    CHECK(op_norm(e * a - b * e) < kTol);
  }
  Mat pt = e_proj_partial_trace(s, r);
  CHECK(op_norm(pt - pt.adjoint()) < kTol);
  CHECK(num_rank(pt) == g.n);
}

TEST_CASE("subspace residual detects genuine gaps") {
  StarSubspace a = span_of({Mat(Mat::Identity(2, 2))}, 2);
  StarSubspace b = span_of({Mat(Mat::Identity(2, 2)), shift(2)}, 2);
  CHECK(subspace_residual(a, b) > 0.5);
  CHECK(subspace_equal(b, b));
}
