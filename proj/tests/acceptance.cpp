// Acceptance suite: one PASS/FAIL line per criterion.
//
//   xlie_acceptance [--known-red 4,5] [--jobs N]
//
// Exit status is 0 when every criterion passes except those named by
// --known-red, which must fail. A known-red criterion that passes is an error
// too, so the list cannot go stale.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "xlie/model.hpp"

using namespace xlie;

namespace {

// Pinned limits, in seconds.
constexpr double kAssembleLimit = 1.0;
constexpr double kDefinitionsLimit = 10.0;
constexpr double kJacobiLimit = 60.0;
constexpr std::size_t kSensitivityFlips = 24;
constexpr std::uint64_t kSensitivitySeed = 20240229;

const AlgebraKind kAll[] = {AlgebraKind::G2, AlgebraKind::F4, AlgebraKind::E6};

struct Outcome {
  bool pass{false};
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(3);
  os << s << " s";
  return os.str();
}

struct Tally {
  std::size_t relations{0}, passed{0}, checks{0};
  std::vector<std::string> failed;

  void add(const std::vector<RelationResult>& rs) {
    for (const auto& r : rs) add(r);
  }
  void add(const RelationResult& r) {
    ++relations;
    checks += r.checks;
    if (r.pass)
      ++passed;
    else
      failed.push_back(r.id);
  }
  bool ok() const { return failed.empty() && relations > 0; }
  std::string summary() const {
    std::string s = std::to_string(passed) + "/" + std::to_string(relations) + " relations, " +
                    std::to_string(checks) + " checks";
    if (!failed.empty()) {
      s += "; failing:";
      const std::size_t shown = std::min<std::size_t>(failed.size(), 4);
      for (std::size_t i = 0; i < shown; ++i) s += " " + failed[i];
      if (failed.size() > shown) s += " (+" + std::to_string(failed.size() - shown) + " more)";
    }
    return s;
  }
};

/// Number of Jacobi completions of the accepted seeds, and how many of them
/// satisfy every definition, coupled relation, commutator family and phase.
std::pair<std::size_t, std::size_t> completions_passing(const AlgebraModel& m) {
  const ConstantOrbits orbits = structure_orbits(m.roots);
  std::map<std::pair<int, int>, ExactReal> seeds;
  for (const auto& s : m.constants.seeds) seeds.emplace(std::make_pair(s.x, s.y), s.value);
  const auto sols = enumerate_constant_solutions(m.roots, orbits, jacobi_equations(m.roots, orbits), seeds, 1024);
  std::size_t good = 0;
  for (const auto& sol : sols) {
    const CartanWeyl cw(m.roots, table_from_solution(m.roots, orbits, sol, m.cw.table()));
    Tally t;
    t.add(verify_definitions(cw, m.basis));
    t.add(verify_charges(cw, m.basis));
    t.add(verify_coupled_relations(cw, m.basis));
    t.add(verify_plain_commutators(cw, m.basis));
    t.add(verify_hermiticity(cw, m.basis));
    good += t.failed.empty();
  }
  return {sols.size(), good};
}

// Factorial-sum oracle for Clebsch-Gordan coefficients, twice-value arguments.
mpz_class fact(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

ExactReal cg_oracle(int j1, int m1, int j2, int m2, int j, int m) {
  if (m1 + m2 != m || j < std::abs(j1 - j2) || j > j1 + j2 || (j1 + j2 + j) % 2) return {};
  auto h = [](int twice) { return twice / 2; };
  mpq_class r(mpz_class(j + 1) * fact(h(j1 + j2 - j)) * fact(h(j1 - j2 + j)) * fact(h(j2 + j - j1)),
              fact(h(j1 + j2 + j) + 1));
  r.canonicalize();
  r *= fact(h(j + m)) * fact(h(j - m)) * fact(h(j1 - m1)) * fact(h(j1 + m1)) * fact(h(j2 - m2)) * fact(h(j2 + m2));
  mpq_class s = 0;
  for (int k = 0; h(j1 + j2 - j) - k >= 0 && h(j1 - m1) - k >= 0 && h(j2 + m2) - k >= 0; ++k) {
    const int d = h(j - j2 + m1) + k, e = h(j - j1 - m2) + k;
    if (d < 0 || e < 0) continue;
    mpq_class t(mpz_class(1),
                fact(k) * fact(h(j1 + j2 - j) - k) * fact(h(j1 - m1) - k) * fact(h(j2 + m2) - k) * fact(d) * fact(e));
    t.canonicalize();
    s += k % 2 ? mpq_class(-t) : t;
  }
  if (s == 0) return {};
  return ExactReal(s) * ExactReal::sqrt_rational(r);
}

std::string fixture_text(const std::string& name) {
  std::ifstream in(std::string(XLIE_FIXTURE_DIR) + "/" + name);
  if (!in) return {};
  return nlohmann::json::parse(in).dump();
}

nlohmann::json constants_json(const AlgebraModel& m) {
  nlohmann::json j = m.constants.to_json(m.roots);
  j["derived_K"] = m.roots.derived_K().str();
  j["schema_version"] = "1";
  return j;
}

nlohmann::json labels_json(const RootSystem& rs, const LabelSearchResult& found) {
  nlohmann::json j;
  j["schema_version"] = "1";
  j["algebra"] = "G2";
  j["candidates_examined"] = found.candidates_examined;
  j["valid_literal"] = found.literal_valid;
  j["valid_swapped"] = found.swapped_valid;
  if (found.chosen) j["chosen"] = found.chosen->to_json(rs);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"xlie acceptance suite"};
  std::vector<int> known_red;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--known-red", known_red, "criteria expected to fail")->delimiter(',');
  app.add_option("--jobs,-j", jobs, "worker threads for the Jacobi scan")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);
  const std::set<int> expected_red(known_red.begin(), known_red.end());

  std::map<AlgebraKind, AlgebraModel> models;
  for (AlgebraKind k : kAll) models.emplace(k, build_model(k));
  auto M = [&](AlgebraKind k) -> const AlgebraModel& { return models.at(k); };

  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria;

  criteria.emplace_back("dimension counts", [&] {
    Stopwatch sw;
    std::string detail;
    bool ok = true;
    for (AlgebraKind k : kAll) {
      const AlgebraModel& m = M(k);
      const TensorBasis b = assemble(m.roots, operator_tables(m.roots, m.labels ? &*m.labels : nullptr));
      Tally t;
      t.add(verify_dimension(m.cw, b));
      const bool here = b.component_count() == static_cast<std::size_t>(algebra_order(k)) && t.ok();
      ok &= here;
      detail += to_string(k) + "=" + std::to_string(b.component_count()) + " ";
    }
    const double s = sw.seconds();
    return Outcome{ok && s < kAssembleLimit, detail + "in " + fmt_seconds(s)};
  });

  criteria.emplace_back("definitions of J, A and tensor operators", [&] {
    Stopwatch sw;
    Tally t;
    for (AlgebraKind k : kAll) t.add(verify_definitions(M(k).cw, M(k).basis));
    const double s = sw.seconds();
    return Outcome{t.ok() && s < kDefinitionsLimit, t.summary() + " in " + fmt_seconds(s)};
  });

  criteria.emplace_back("G2 coupled U(12) relations", [&] {
    Tally t;
    t.add(verify_coupled_relations(M(AlgebraKind::G2).cw, M(AlgebraKind::G2).basis));
    return Outcome{t.ok() && t.relations == 2, t.summary()};
  });

  criteria.emplace_back("F4 coupled relations and commutator families", [&] {
    const AlgebraModel& m = M(AlgebraKind::F4);
    Tally t;
    t.add(verify_coupled_relations(m.cw, m.basis));
    t.add(verify_plain_commutators(m.cw, m.basis));
    const auto [total, good] = completions_passing(m);
    return Outcome{t.ok(), t.summary() + "; " + std::to_string(good) + " of " + std::to_string(total) +
                               " Jacobi completions satisfy every relation"};
  });

  criteria.emplace_back("E6 charges, coupled relations and commutator families", [&] {
    const AlgebraModel& m = M(AlgebraKind::E6);
    Tally t;
    t.add(verify_charges(m.cw, m.basis));
    t.add(verify_coupled_relations(m.cw, m.basis));
    const auto families = verify_plain_commutators(m.cw, m.basis);
    t.add(families);
    const auto [total, good] = completions_passing(m);
    return Outcome{t.ok() && families.size() == 36,
                   t.summary() + "; " + std::to_string(good) + " of " + std::to_string(total) +
                       " Jacobi completions satisfy every relation"};
  });

  criteria.emplace_back("Hermiticity phases", [&] {
    Tally t;
    for (AlgebraKind k : kAll) t.add(verify_hermiticity(M(k).cw, M(k).basis));
    return Outcome{t.ok(), t.summary()};
  });

  criteria.emplace_back("Jacobi identity over all generator triples", [&] {
    Stopwatch sw;
    const std::map<AlgebraKind, std::size_t> expected{
        {AlgebraKind::G2, 364}, {AlgebraKind::F4, 22100}, {AlgebraKind::E6, 76076}};
    Tally t;
    bool counts = true;
    for (AlgebraKind k : kAll) {
      const RelationResult r = verify_jacobi(M(k).cw, jobs);
      counts &= r.checks == expected.at(k);
      t.add(r);
    }
    const double s = sw.seconds();
    return Outcome{t.ok() && counts && s < kJacobiLimit,
                   t.summary() + " with " + std::to_string(jobs) + " workers in " + fmt_seconds(s)};
  });

  criteria.emplace_back("Cartan identification", [&] {
    bool ok = true;
    std::string detail;
    for (AlgebraKind k : kAll) {
      const auto got = identify_cartan(M(k).cw, M(k).basis);
      ok &= got == expected_cartan(k);
      detail += to_string(k) + " {";
      for (std::size_t i = 0; i < got.size(); ++i) detail += (i ? "," : "") + got[i].str();
      detail += "} ";
    }
    return Outcome{ok, detail};
  });

  criteria.emplace_back("solver fixtures", [&] {
    const AlgebraModel& g2 = M(AlgebraKind::G2);
    Tally g2_relations;
    g2_relations.add(verify_definitions(g2.cw, g2.basis));
    g2_relations.add(verify_coupled_relations(g2.cw, g2.basis));
    g2_relations.add(verify_hermiticity(g2.cw, g2.basis));

    Tally jacobi;
    for (AlgebraKind k : kAll) jacobi.add(verify_jacobi(M(k).cw, jobs, true));

    const RootSystem rs = RootSystem::build(AlgebraKind::G2);
    const LabelSearchResult found = solve_labels(rs);
    bool stable = found.chosen.has_value() && labels_json(rs, found).dump() == fixture_text("g2_labels.json");
    std::string unstable;
    if (!stable) unstable += " g2_labels";
    for (AlgebraKind k : kAll) {
      const std::string name = (k == AlgebraKind::G2 ? "g2" : k == AlgebraKind::F4 ? "f4" : "e6") +
                               std::string("_constants.json");
      // rebuilt from scratch, so this also covers run-to-run determinism
      const AlgebraModel fresh = build_model(k);
      const bool same = constants_json(fresh).dump() == fixture_text(name) &&
                        constants_json(M(k)).dump() == constants_json(fresh).dump();
      if (!same) unstable += " " + name;
      stable &= same;
    }
    const bool ok = found.chosen && g2_relations.ok() && jacobi.ok() && stable;
    return Outcome{ok, "G2 numbering: " + std::to_string(found.swapped_valid + found.literal_valid) +
                           " valid; G2 relations " + g2_relations.summary() + "; completions Jacobi-clean: " +
                           std::to_string(jacobi.passed) + "/3; fixtures " +
                           (stable ? std::string("stable") : "changed:" + unstable)};
  });

  criteria.emplace_back("sensitivity to flipped listed constants", [&] {
    bool ok = true;
    std::string detail;
    for (AlgebraKind k : kAll) {
      const SensitivityResult r = sensitivity_check(M(k), kSensitivityFlips, kSensitivitySeed, jobs);
      std::size_t caught = 0;
      for (const auto& f : r.flips) caught += f.detected;
      ok &= r.flips.size() >= 20 && r.all_detected();
      detail += to_string(k) + " " + std::to_string(caught) + "/" + std::to_string(r.flips.size()) + " ";
    }
    return Outcome{ok, detail + "flips detected"};
  });

  criteria.emplace_back("Clebsch-Gordan identities", [&] {
    std::size_t checks = 0, bad = 0;
    auto expect = [&](bool c) {
      ++checks;
      bad += !c;
    };
    for (int j1 = 0; j1 <= 3; ++j1)
      for (int j2 = 0; j2 <= 3; ++j2)
        for (int j = std::abs(j1 - j2); j <= j1 + j2; j += 2)
          for (int jp = std::abs(j1 - j2); jp <= j1 + j2; jp += 2)
            for (int m = -j; m <= j; m += 2)
              for (int mp = -jp; mp <= jp; mp += 2) {
                ExactReal sum;
                for (int m1 = -j1; m1 <= j1; m1 += 2)
                  for (int m2 = -j2; m2 <= j2; m2 += 2)
                    sum += clebsch_gordan(j1, m1, j2, m2, j, m) * clebsch_gordan(j1, m1, j2, m2, jp, mp);
                expect(sum == ExactReal(j == jp && m == mp ? 1 : 0));
                if (j != jp || m != mp) continue;
                for (int m1 = -j1; m1 <= j1; m1 += 2) {
                  const int m2 = m - m1;
                  if (std::abs(m2) > j2) continue;
                  const ExactReal v = clebsch_gordan(j1, m1, j2, m2, j, m);
                  expect(v == pow_minus_one((j1 + j2 - j) / 2) * clebsch_gordan(j2, m2, j1, m1, j, m));
                  expect(v == cg_oracle(j1, m1, j2, m2, j, m));
                }
              }
    const ExactReal singlet = clebsch_gordan(1, 1, 1, -1, 0, 0);
    expect(singlet == cg_oracle(1, 1, 1, -1, 0, 0));
    expect(singlet == ExactReal::sqrt_rational(mpq_class(1, 2)));
    return Outcome{bad == 0, std::to_string(checks - bad) + "/" + std::to_string(checks) +
                                 " identities; <1/2 1/2 1/2 -1/2|0 0> = " + singlet.str()};
  });

  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = Outcome{false, std::string("exception: ") + e.what()};
    }
    const bool red_expected = expected_red.count(id) > 0;
    std::string tag;
    if (red_expected) tag = o.pass ? " (listed as known red, now passes)" : " (known red)";
    if (o.pass == red_expected) ++unexpected;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << id << ". " << criteria[i].first << tag << ": " << o.detail
              << std::endl;
  }
  std::cout << (unexpected ? "unexpected outcomes: " + std::to_string(unexpected) : std::string("no unexpected outcomes"))
            << std::endl;
  return unexpected ? 1 : 0;
}
