#include <doctest.h>

#include <set>

#include "models.hpp"

using namespace xlie;
using xlie::test::model;

namespace {

std::set<std::string> failing(const std::vector<RelationResult>& rs) {
  std::set<std::string> out;
  for (const auto& r : rs)
    if (!r.pass) out.insert(r.id);
  return out;
}

template <typename... V>
std::vector<RelationResult> concat(V&&... vs) {
  std::vector<RelationResult> out;
  (out.insert(out.end(), vs.begin(), vs.end()), ...);
  return out;
}

/// Every Jacobi completion of the accepted seeds, as a table.
std::vector<StructureTable> all_completions(const AlgebraModel& m) {
  const ConstantOrbits orbits = structure_orbits(m.roots);
  std::map<std::pair<int, int>, ExactReal> seeds;
  for (const auto& s : m.constants.seeds) seeds.emplace(std::make_pair(s.x, s.y), s.value);
  std::vector<StructureTable> out;
  for (const auto& sol : enumerate_constant_solutions(m.roots, orbits, jacobi_equations(m.roots, orbits), seeds, 1024))
    out.push_back(table_from_solution(m.roots, orbits, sol, m.cw.table()));
  return out;
}

}  // namespace

TEST_CASE("relation coverage") {
  CHECK(coupled_relation_specs(AlgebraKind::G2).size() == 2);
  CHECK(commutator_family_specs(AlgebraKind::G2).empty());
  CHECK(commutator_family_specs(AlgebraKind::F4).size() == 3);
  CHECK(commutator_family_specs(AlgebraKind::E6).size() == 36);
  CHECK(hermiticity_specs(AlgebraKind::G2).size() == 1);
  CHECK(hermiticity_specs(AlgebraKind::F4).size() == 7);
  CHECK(hermiticity_specs(AlgebraKind::E6).size() == 13);

  std::set<std::string> ids;
  for (AlgebraKind kind : {AlgebraKind::G2, AlgebraKind::F4, AlgebraKind::E6})
    for (const auto& s : coupled_relation_specs(kind)) CHECK(ids.insert(s.id).second);
}

TEST_CASE("G2 passes every relation") {
  const AlgebraModel& g2 = model(AlgebraKind::G2);
  const VerificationReport rep = verify_basis(g2.cw, g2.basis, VerifyOptions{2, true, true});
  CHECK(rep.all_pass());
  CHECK(rep.relations.size() == 13);
  const RelationResult* j = rep.find("g2.jacobi");
  REQUIRE(j);
  CHECK(j->checks == 364);
  CHECK(rep.find("g2.coupled.U(12)U(12)^10"));
}

TEST_CASE("G2 plain self-coupling reproduces the J operators") {
  const AlgebraModel& g2 = model(AlgebraKind::G2);
  const TensorOperator& u = g2.basis.op("U(12)");
  const CoupledTensor c10 =
      couple(g2.cw, CouplingSpec{&u, &u, {{1, 2}, {2, 0}}, CouplingMode::Plain});
  const CoupledTensor c01 =
      couple(g2.cw, CouplingSpec{&u, &u, {{1, 0}, {2, 2}}, CouplingMode::Plain});
  for (int mu : {-2, 0, 2}) {
    const EnvelopingElement& a = c10.at({mu, 0});
    const EnvelopingElement& b = c01.at({0, mu});
    CHECK(a.symmetric.empty());
    CHECK(b.symmetric.empty());
    CHECK(a.linear == ExactReal::sqrt_rational(mpq_class(9, 2)) * g2.basis.op("J(1)").at({mu}));
    CHECK(b.linear == ExactReal::sqrt_rational(mpq_class(5, 2)) * g2.basis.op("J(2)").at({mu}));
  }
}

TEST_CASE("F4 fails exactly the two mixed anticommutators") {
  const AlgebraModel& f4 = model(AlgebraKind::F4);
  const auto results = concat(verify_definitions(f4.cw, f4.basis), verify_coupled_relations(f4.cw, f4.basis),
                              verify_plain_commutators(f4.cw, f4.basis), verify_hermiticity(f4.cw, f4.basis));
  CHECK(failing(results) ==
        std::set<std::string>{"f4.coupled.{U(12)U(23)}^1/2,0,1/2", "f4.coupled.{U(12)U(24)}^1/2,0,1/2"});
  for (const auto& r : results)
    if (!r.pass) {
      REQUIRE(r.witness);
      CHECK_FALSE(r.witness->difference.empty());
    }
}

TEST_CASE("no F4 Jacobi completion satisfies every relation") {
  const AlgebraModel& f4 = model(AlgebraKind::F4);
  const auto tables = all_completions(f4);
  CHECK(tables.size() == 8);
  for (std::size_t i = 0; i < tables.size(); ++i) {
    CAPTURE(i);
    const CartanWeyl cw(f4.roots, tables[i]);
    CHECK(verify_jacobi(cw, 2, true).pass);
    const auto fails = failing(concat(verify_definitions(cw, f4.basis), verify_coupled_relations(cw, f4.basis),
                                      verify_plain_commutators(cw, f4.basis), verify_hermiticity(cw, f4.basis)));
    CHECK_FALSE(fails.empty());
  }
}

TEST_CASE("E6 failures are confined to coupled relations and commutator families") {
  const AlgebraModel& e6 = model(AlgebraKind::E6);
  const VerificationReport rep = verify_basis(e6.cw, e6.basis, VerifyOptions{2, false, true});
  for (const auto& r : rep.relations)
    if (!r.pass) CHECK((r.kind == RelationKind::Coupled || r.kind == RelationKind::PlainCommutator));
  CHECK(rep.find("e6.coupled.[V(1234)W(1234)]^00")->pass);
  CHECK_FALSE(rep.find("e6.coupled.[V(1234)W(1234)]^10")->pass);
  CHECK(rep.find("e6.cartan")->pass);
  std::size_t charges = 0;
  for (const auto& r : rep.relations) charges += r.kind == RelationKind::Charge && r.pass;
  CHECK(charges == 13);
  // failing relations come with a diagnostic entry
  bool diag = false;
  for (const auto& e : rep.appendix) diag |= e.id == "diagnostic.e6.coupled.[V(1234)W(1234)]^10";
  CHECK(diag);
}

TEST_CASE("Cartan identification") {
  CHECK(identify_cartan(model(AlgebraKind::G2).cw, model(AlgebraKind::G2).basis) == expected_cartan(AlgebraKind::G2));
  CHECK(identify_cartan(model(AlgebraKind::F4).cw, model(AlgebraKind::F4).basis) == expected_cartan(AlgebraKind::F4));
  const auto e6 = identify_cartan(model(AlgebraKind::E6).cw, model(AlgebraKind::E6).basis);
  CHECK(e6 == expected_cartan(AlgebraKind::E6));
  CHECK(e6.size() == 6);
  CHECK(e6.front().op == "A(1)");
}

TEST_CASE("a broken table is caught") {
  const AlgebraModel& g2 = model(AlgebraKind::G2);
  StructureTable t = g2.cw.table();
  const ConstantOrbits orbits = structure_orbits(g2.roots);
  const int n = g2.roots.size();
  for (int p = 0; p < n * n; ++p)
    if (orbits.orbit[p] == 0) t.set(p / n, p % n, -t.at(p / n, p % n), Provenance::Listed);
  const CartanWeyl cw(g2.roots, t);
  const VerificationReport rep = verify_basis(cw, g2.basis, VerifyOptions{1, true, false});
  CHECK_FALSE(rep.all_pass());
}

TEST_CASE("report serialization is stable") {
  const AlgebraModel& g2 = model(AlgebraKind::G2);
  const VerificationReport a = verify_basis(g2.cw, g2.basis, VerifyOptions{1, true, true});
  const VerificationReport b = verify_basis(g2.cw, g2.basis, VerifyOptions{4, true, true});
  CHECK(a.to_json(false).dump() == b.to_json(false).dump());
  const nlohmann::json j = a.to_json(false);
  CHECK(j.at("schema_version") == kReportSchemaVersion);
  CHECK(j.at("counts").at("failed") == 0);
  CHECK_FALSE(j.contains("elapsed_seconds"));
  CHECK(a.to_json(true).contains("elapsed_seconds"));
  CHECK(a.to_markdown(false).find("g2.jacobi") != std::string::npos);
  CHECK(a.to_text(false).find("g2.jacobi") != std::string::npos);
}

TEST_CASE("sensitivity sampling is reproducible") {
  const AlgebraModel& g2 = model(AlgebraKind::G2);
  const SensitivityResult a = sensitivity_check(g2, 6, 99, 2);
  const SensitivityResult b = sensitivity_check(g2, 6, 99, 2);
  REQUIRE(a.flips.size() == 6);
  CHECK(a.all_detected());
  for (std::size_t i = 0; i < a.flips.size(); ++i) {
    CHECK(a.flips[i].x == b.flips[i].x);
    CHECK(a.flips[i].caught_by == b.flips[i].caught_by);
  }
}
