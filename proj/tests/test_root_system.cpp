#include <doctest.h>

#include <map>

#include "xlie/root_system.hpp"

using namespace xlie;

namespace {

Vector vec(std::initializer_list<ExactReal> xs) { return Vector(xs); }
const ExactReal h = ExactReal::rational(1, 2);

}  // namespace

TEST_CASE("root counts and ranks") {
  const std::map<AlgebraKind, std::pair<int, int>> expected{
      {AlgebraKind::G2, {12, 2}}, {AlgebraKind::F4, {48, 4}}, {AlgebraKind::E6, {72, 6}}};
  for (const auto& [kind, counts] : expected) {
    const RootSystem rs = RootSystem::build(kind);
    CHECK(rs.size() == counts.first);
    CHECK(rs.rank() == counts.second);
  }
}

TEST_CASE("roots come in negative pairs and sums are consistent") {
  for (AlgebraKind kind : {AlgebraKind::G2, AlgebraKind::F4, AlgebraKind::E6}) {
    const RootSystem rs = RootSystem::build(kind);
    for (int a = 0; a < rs.size(); ++a) {
      CHECK(rs.negative(rs.negative(a)) == a);
      CHECK(is_zero(rs.root(a).coords + rs.root(rs.negative(a)).coords));
      CHECK(rs.index_of(rs.root(a).label) == a);
      for (int b = 0; b < rs.size(); ++b) {
        const Vector s = rs.root(a).coords + rs.root(b).coords;
        const auto found = rs.find(s);
        CHECK(rs.sum(a, b) == (found ? *found : -1));
      }
    }
  }
}

TEST_CASE("Gram sum is a multiple of the projector") {
  // sum_r r_i r_j = K^2 P_ij, checked directly
  for (AlgebraKind kind : {AlgebraKind::G2, AlgebraKind::F4, AlgebraKind::E6}) {
    const RootSystem rs = RootSystem::build(kind);
    const int d = rs.ambient_dimension();
    const ExactReal k2 = rs.derived_K() * rs.derived_K();
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        ExactReal s;
        for (const Root& r : rs.roots()) s += r.coords[i] * r.coords[j];
        CHECK(s == k2 * rs.projector()[i][j]);
      }
    CHECK(derive_normalization(rs.roots()) == rs.derived_K());
  }
}

TEST_CASE("family labels resolve to coordinates") {
  const RootSystem f4 = RootSystem::build(AlgebraKind::F4);
  CHECK(f4.resolve_family_label("α_1").coords == vec({h, h, h, h}));
  CHECK(f4.resolve_family_label("ε_2").coords == vec({-h, h, h, -h}));
  CHECK(f4.resolve_family_label("−α_1").coords == vec({-h, -h, -h, -h}));

  const RootSystem e6 = RootSystem::build(AlgebraKind::E6);
  const ExactReal r2 = ExactReal::radical(mpq_class(1, 2), 2);
  CHECK(e6.resolve_family_label("λ_8").coords == vec({-h, h, h, -h, h, -h, -r2}));
  CHECK(e6.resolve_family_label("√2e7").coords == vec({0, 0, 0, 0, 0, 0, ExactReal::radical(1, 2)}));
  CHECK_THROWS(e6.resolve_family_label("ζ_1"));
}

TEST_CASE("G2 roots lie in the zero-sum plane") {
  const RootSystem g2 = RootSystem::build(AlgebraKind::G2);
  int short_roots = 0;
  for (const Root& r : g2.roots()) {
    CHECK((r.coords[0] + r.coords[1] + r.coords[2]).is_zero());
    if (dot(r.coords, r.coords) == ExactReal(2)) ++short_roots;
  }
  CHECK(short_roots == 6);
}

TEST_CASE("algebra names parse case-insensitively") {
  CHECK(parse_algebra("g2") == AlgebraKind::G2);
  CHECK(parse_algebra("F4") == AlgebraKind::F4);
  CHECK(parse_algebra("e6") == AlgebraKind::E6);
  CHECK_THROWS_AS(parse_algebra("e8"), std::invalid_argument);
}
