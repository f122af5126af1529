#include <doctest.h>

#include "models.hpp"
#include "xlie/so3.hpp"

using xlie::clebsch_gordan;
using xlie::ExactReal;
using xlie::ladder_coeff;

namespace {

mpz_class fact(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

// Racah's factorial sum, written out independently of the library; twice-values.
ExactReal cg_oracle(int j1, int m1, int j2, int m2, int j, int m) {
  if (m1 + m2 != m) return {};
  if (j < std::abs(j1 - j2) || j > j1 + j2 || (j1 + j2 + j) % 2) return {};
  if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(m) > j) return {};
  if ((j1 + m1) % 2 || (j2 + m2) % 2 || (j + m) % 2) return {};
  auto h = [](int twice) { return twice / 2; };
  mpq_class r(mpz_class(j + 1) * fact(h(j1 + j2 - j)) * fact(h(j1 - j2 + j)) * fact(h(-j1 + j2 + j)),
               fact(h(j1 + j2 + j) + 1));
  r.canonicalize();
  r *= fact(h(j + m)) * fact(h(j - m)) * fact(h(j1 - m1)) * fact(h(j1 + m1)) * fact(h(j2 - m2)) * fact(h(j2 + m2));
  mpq_class s = 0;
  for (int k = 0;; ++k) {
    const int a = h(j1 + j2 - j) - k, b = h(j1 - m1) - k, c = h(j2 + m2) - k;
    const int d = h(j - j2 + m1) + k, e = h(j - j1 - m2) + k;
    if (a < 0 || b < 0 || c < 0) break;
    if (d < 0 || e < 0) continue;
    mpq_class term(mpz_class(1), fact(k) * fact(a) * fact(b) * fact(c) * fact(d) * fact(e));
    term.canonicalize();
    s += (k % 2 ? mpq_class(-term) : term);
  }
  if (s == 0) return {};
  return ExactReal(s) * ExactReal::sqrt_rational(r);
}

template <typename F>
void for_each_projection(int j, F&& f) {
  for (int m = -j; m <= j; m += 2) f(m);
}

}  // namespace

TEST_CASE("ladder coefficients") {
  CHECK(ladder_coeff(1, -1, +1) == -ExactReal::radical(mpq_class(1, 2), 2));
  CHECK(ladder_coeff(1, 1, +1).is_zero());
  CHECK(ladder_coeff(3, 3, +1).is_zero());
  CHECK(ladder_coeff(3, -3, -1).is_zero());
  CHECK(ladder_coeff(3, -1, -1) == ExactReal::radical(mpq_class(1, 2), 6));
  CHECK(ladder_coeff(3, 1, -1) == ExactReal::radical(1, 2));
  CHECK(ladder_coeff(2, 0, +1) == ExactReal(-1));
  CHECK_THROWS_AS(ladder_coeff(1, 3, +1), std::out_of_range);
  CHECK_THROWS_AS(ladder_coeff(2, 1, +1), std::out_of_range);
}

TEST_CASE("ladder products reproduce the Casimir") {
  // C_+(r, p-1) C_-(r, p) = -½ (r + p)(r - p + 1)
  for (int r = 0; r <= 6; ++r)
    for (int p = -r + 2; p <= r; p += 2) {
      mpq_class rr(r, 2), pp(p, 2);
      ExactReal expected = ExactReal(mpq_class(-(rr + pp) * (rr - pp + 1) / 2));
      CHECK(ladder_coeff(r, p - 2, +1) * ladder_coeff(r, p, -1) == expected);
    }
}

TEST_CASE("Clebsch-Gordan values") {
  const ExactReal rt_half = ExactReal::sqrt_rational(mpq_class(1, 2));
  CHECK(clebsch_gordan(1, 1, 1, -1, 0, 0) == rt_half);
  CHECK(cg_oracle(1, 1, 1, -1, 0, 0) == rt_half);
  CHECK(clebsch_gordan(1, -1, 1, 1, 0, 0) == -rt_half);
  CHECK(clebsch_gordan(1, 1, 1, 1, 2, 2) == ExactReal(1));
  CHECK(clebsch_gordan(3, 1, 0, 0, 3, 1) == ExactReal(1));
  CHECK(clebsch_gordan(1, 1, 1, 1, 0, 0).is_zero());
  CHECK(clebsch_gordan(1, 1, 1, 1, 4, 2).is_zero());
  CHECK(clebsch_gordan(1, 1, 3, 1, 2, 0).is_zero());
}

TEST_CASE("Clebsch-Gordan agrees with the factorial oracle up to rank 2") {
  int compared = 0;
  for (int j1 = 0; j1 <= 4; ++j1)
    for (int j2 = 0; j2 <= 4; ++j2)
      for (int j = std::abs(j1 - j2); j <= j1 + j2; j += 2)
        for_each_projection(j1, [&](int m1) {
          for_each_projection(j2, [&](int m2) {
            for_each_projection(j, [&](int m) {
              CHECK(clebsch_gordan(j1, m1, j2, m2, j, m) == cg_oracle(j1, m1, j2, m2, j, m));
              ++compared;
            });
          });
        });
  CHECK(compared > 1000);
}

TEST_CASE("Clebsch-Gordan orthogonality and symmetry for ranks up to 3/2") {
  for (int j1 = 0; j1 <= 3; ++j1)
    for (int j2 = 0; j2 <= 3; ++j2) {
      for (int j = std::abs(j1 - j2); j <= j1 + j2; j += 2)
        for (int jp = std::abs(j1 - j2); jp <= j1 + j2; jp += 2)
          for_each_projection(j, [&](int m) {
            for_each_projection(jp, [&](int mp) {
              ExactReal sum;
              for_each_projection(j1, [&](int m1) {
                for_each_projection(j2, [&](int m2) {
                  sum += clebsch_gordan(j1, m1, j2, m2, j, m) * clebsch_gordan(j1, m1, j2, m2, jp, mp);
                });
              });
              CHECK(sum == ExactReal(j == jp && m == mp ? 1 : 0));
            });
          });

      // second orthogonality: sum over (j, m)
      for_each_projection(j1, [&](int m1) {
        for_each_projection(j2, [&](int m2) {
          for_each_projection(j1, [&](int m1p) {
            for_each_projection(j2, [&](int m2p) {
              ExactReal sum;
              for (int j = std::abs(j1 - j2); j <= j1 + j2; j += 2)
                for_each_projection(j, [&](int m) {
                  sum += clebsch_gordan(j1, m1, j2, m2, j, m) * clebsch_gordan(j1, m1p, j2, m2p, j, m);
                });
              CHECK(sum == ExactReal(m1 == m1p && m2 == m2p ? 1 : 0));
            });
          });
        });
      });

      for (int j = std::abs(j1 - j2); j <= j1 + j2; j += 2) {
        const ExactReal phase = xlie::pow_minus_one((j1 + j2 - j) / 2);
        for_each_projection(j1, [&](int m1) {
          for_each_projection(j2, [&](int m2) {
            const int m = m1 + m2;
            const ExactReal v = clebsch_gordan(j1, m1, j2, m2, j, m);
            CHECK(v == phase * clebsch_gordan(j2, m2, j1, m1, j, m));
            CHECK(v == phase * clebsch_gordan(j1, -m1, j2, -m2, j, -m));
          });
        });
      }
    }
}

TEST_CASE("commutator and anticommutator couplings combine the two orders") {
  using xlie::CouplingMode;
  const xlie::AlgebraModel& f4 = xlie::test::model(xlie::AlgebraKind::F4);
  const xlie::TensorOperator& j = f4.basis.op("J(1)");
  const xlie::TensorOperator& u = f4.basis.op("U(13)");
  for (int k = 1; k <= 3; k += 2) {
    const std::map<int, int> targets{{1, k}};
    auto run = [&](CouplingMode mode, const xlie::TensorOperator& l, const xlie::TensorOperator& r) {
      return xlie::couple(f4.cw, xlie::CouplingSpec{&l, &r, targets, mode});
    };
    const auto xy = run(CouplingMode::Plain, j, u);
    const auto yx = run(CouplingMode::Plain, u, j);
    const auto comm = run(CouplingMode::Commutator, j, u);
    const auto anti = run(CouplingMode::Anticommutator, j, u);
    REQUIRE(xy.slots == yx.slots);
    for (const auto& [label, value] : comm.components) {
      xlie::EnvelopingElement d = xy.at(label), s = xy.at(label);
      d -= yx.at(label);
      s += yx.at(label);
      CHECK(value == d);
      CHECK(anti.at(label) == s);
    }
  }
}

TEST_CASE("self-coupling in commutator mode vanishes") {
  const xlie::AlgebraModel& g2 = xlie::test::model(xlie::AlgebraKind::G2);
  const xlie::TensorOperator& u = g2.basis.op("U(12)");
  for (int k1 = 0; k1 <= 2; k1 += 2)
    for (int k2 = 0; k2 <= 6; k2 += 2) {
      const auto comm = xlie::couple(g2.cw, xlie::CouplingSpec{&u, &u, {{1, k1}, {2, k2}}, xlie::CouplingMode::Commutator});
      for (const auto& [label, value] : comm.components) CHECK(value.is_zero());
    }
}

TEST_CASE("coupling rejects triangle violations") {
  const xlie::AlgebraModel& g2 = xlie::test::model(xlie::AlgebraKind::G2);
  const xlie::TensorOperator& u = g2.basis.op("U(12)");
  CHECK_THROWS_AS(xlie::couple(g2.cw, xlie::CouplingSpec{&u, &u, {{1, 4}, {2, 0}}, xlie::CouplingMode::Plain}),
                  xlie::CouplingError);
}
