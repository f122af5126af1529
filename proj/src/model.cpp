#include "xlie/model.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace xlie {

namespace {

AlgebraModel assemble_model(RootSystem rs, std::optional<G2Labels> labels) {
  const G2Labels* lp = labels ? &*labels : nullptr;
  std::vector<TensorOperator> ops = operator_tables(rs, lp);
  ConstantsReport constants = load_structure_constants(rs, ops, lp);
  CartanWeyl cw(rs, constants.table);
  TensorBasis basis = assemble(rs, std::move(ops));
  const AlgebraKind kind = rs.algebra();
  return AlgebraModel{kind, std::move(rs), std::move(labels), std::move(constants), std::move(cw), std::move(basis)};
}

}  // namespace

AlgebraModel build_model(AlgebraKind kind) {
  RootSystem rs = RootSystem::build(kind);
  std::optional<G2Labels> labels;
  if (kind == AlgebraKind::G2) {
    LabelSearchResult found = solve_labels(rs);
    if (!found.chosen) throw std::runtime_error("no G2 root numbering satisfies the defining relations");
    labels = found.chosen;
  }
  return assemble_model(std::move(rs), std::move(labels));
}

bool SensitivityResult::all_detected() const {
  return !flips.empty() && std::all_of(flips.begin(), flips.end(), [](const FlipOutcome& f) { return f.detected; });
}

namespace {

/// First relation id that passed in `baseline` and fails on `cw`; empty if none.
std::string first_new_failure(const CartanWeyl& cw, const TensorBasis& basis, const std::set<std::string>& baseline_pass,
                              unsigned jobs) {
  using Check = std::vector<RelationResult> (*)(const CartanWeyl&, const TensorBasis&);
  const Check checks[] = {verify_definitions, verify_charges, verify_coupled_relations, verify_plain_commutators,
                          verify_hermiticity};
  for (Check c : checks)
    for (const auto& r : c(cw, basis))
      if (!r.pass && baseline_pass.count(r.id)) return r.id;
  RelationResult j = verify_jacobi(cw, jobs, true);
  if (!j.pass && baseline_pass.count(j.id)) return j.id;
  return {};
}

}  // namespace

SensitivityResult sensitivity_check(const AlgebraModel& model, std::size_t flips, std::uint64_t seed, unsigned jobs) {
  const RootSystem& rs = model.roots;
  const int n = rs.size();
  const ConstantOrbits orbits = structure_orbits(rs);
  const StructureTable& table = model.cw.table();

  std::set<int> listed;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (table.has(a, b) && table.provenance(a, b) == Provenance::Listed) listed.insert(orbits.orbit[a * n + b]);
  std::vector<int> pool(listed.begin(), listed.end());

  SensitivityResult result;
  result.algebra = model.kind;
  result.listed_orbits = pool.size();
  if (pool.empty()) return result;

  std::set<std::string> baseline;
  {
    using Check = std::vector<RelationResult> (*)(const CartanWeyl&, const TensorBasis&);
    for (Check c : {verify_definitions, verify_charges, verify_coupled_relations, verify_plain_commutators,
                    verify_hermiticity})
      for (const auto& r : c(model.cw, model.basis))
        if (r.pass) baseline.insert(r.id);
    RelationResult j = verify_jacobi(model.cw, jobs, true);
    if (j.pass) baseline.insert(j.id);
  }

  std::vector<int> picks;
  std::mt19937_64 rng(seed);
  if (pool.size() >= flips) {
    std::vector<int> shuffled = pool;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    picks.assign(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(flips));
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (std::size_t i = 0; i < flips; ++i) picks.push_back(pool[pick(rng)]);
  }

  for (int o : picks) {
    StructureTable flipped = table;
    for (int p = 0; p < n * n; ++p)
      if (orbits.orbit[p] == o) {
        const int a = p / n, b = p % n;
        flipped.set(a, b, -table.at(a, b), table.provenance(a, b), table.note(a, b));
      }
    CartanWeyl cw(rs, std::move(flipped));
    const auto [x, y] = orbits.representative[o];
    FlipOutcome f{rs.root(x).label, rs.root(y).label, false, {}};
    f.caught_by = first_new_failure(cw, model.basis, baseline, jobs);
    f.detected = !f.caught_by.empty();
    result.flips.push_back(std::move(f));
  }
  return result;
}

}  // namespace xlie
