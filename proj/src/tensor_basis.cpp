#include "xlie/tensor_basis.hpp"

#include <algorithm>
#include <sstream>

#include "xlie/structure_data.hpp"
#include "xlie/verifier.hpp"

namespace xlie {

// ---------------------------------------------------------------------------
// G2Labels

int G2Labels::root_of(int k, const RootSystem& rs) const {
  if (k == 0 || std::abs(k) > 6) throw std::out_of_range("G2 root number must be in ±1..±6");
  int r = positive[std::abs(k) - 1];
  return k > 0 ? r : rs.negative(r);
}

nlohmann::json G2Labels::to_json(const RootSystem& rs) const {
  nlohmann::json j;
  j["reading"] = reading;
  for (int k = 1; k <= 6; ++k) j["E"][std::to_string(k)] = rs.root(positive[k - 1]).label;
  auto vec = [](const Vector& v) {
    auto a = nlohmann::json::array();
    for (const auto& x : v) a.push_back(x.to_json());
    return a;
  };
  j["H1"] = vec(h1);
  j["H2"] = vec(h2);
  j["J1_scale"] = j1_scale.to_json();
  j["J2_scale"] = j2_scale.to_json();
  j["second_constant_partner"] = extra_partner;
  j["completion_index"] = solution_index;
  return j;
}

G2Labels G2Labels::from_json(const RootSystem& rs, const nlohmann::json& j) {
  G2Labels l;
  l.reading = j.at("reading").get<std::string>();
  for (int k = 1; k <= 6; ++k) l.positive[k - 1] = rs.index_of(j.at("E").at(std::to_string(k)).get<std::string>());
  for (const auto& x : j.at("H1")) l.h1.push_back(ExactReal::from_json(x));
  for (const auto& x : j.at("H2")) l.h2.push_back(ExactReal::from_json(x));
  l.j1_scale = ExactReal::from_json(j.at("J1_scale"));
  l.j2_scale = ExactReal::from_json(j.at("J2_scale"));
  l.extra_partner = j.at("second_constant_partner").get<int>();
  l.solution_index = j.at("completion_index").get<int>();
  return l;
}

// ---------------------------------------------------------------------------
// TensorBasis

std::string ComponentRef::str() const {
  if (label.empty()) return op;
  if (op.rfind("J(", 0) == 0 && label.size() == 1) return "J_" + half_integer(label[0]) + op.substr(1);
  return op + "_" + label_text(label);
}

const TensorOperator* TensorBasis::find(std::string_view name) const {
  std::string canon = canonical_operator_name(algebra, name);
  for (const auto& op : operators)
    if (op.name == canon) return &op;
  return nullptr;
}

const TensorOperator& TensorBasis::op(std::string_view name) const {
  const TensorOperator* p = find(name);
  if (!p) throw std::out_of_range("no operator named " + std::string(name) + " in the " + to_string(algebra) + " basis");
  return *p;
}

bool TensorBasis::is_dependent(std::string_view name) const {
  return std::find(dependent.begin(), dependent.end(), name) != dependent.end();
}

std::vector<ComponentRef> TensorBasis::components() const {
  std::vector<ComponentRef> out;
  for (const auto& op : operators) {
    if (is_dependent(op.name)) continue;
    for (const auto& l : component_labels(op.ranks2)) out.push_back({op.name, l});
  }
  return out;
}

int algebra_order(AlgebraKind kind) {
  switch (kind) {
    case AlgebraKind::G2: return 14;
    case AlgebraKind::F4: return 52;
    case AlgebraKind::E6: return 78;
  }
  return 0;
}

std::string canonical_operator_name(AlgebraKind kind, std::string_view name) {
  std::string s(name);
  if (kind != AlgebraKind::E6) return s;
  // V(24) -> V(1234): two-digit forms name (i1 j1) with i = i1 - 1, j = j1 - 1
  if (s.size() == 5 && (s[0] == 'V' || s[0] == 'W') && s[1] == '(' && s[4] == ')') {
    int i1 = s[2] - '0', j1 = s[3] - '0';
    if (i1 % 2 == 0 && j1 % 2 == 0 && i1 >= 2 && j1 <= 6 && i1 < j1)
      return std::string(1, s[0]) + "(" + std::to_string(i1 - 1) + std::to_string(i1) + std::to_string(j1 - 1) +
             std::to_string(j1) + ")";
  }
  return s;
}

namespace {

const int kHalf = 1;  // twice-value of 1/2

Vector ambient(int dim, std::initializer_list<std::pair<int, int>> terms) {
  Vector v(dim);
  for (auto [c, i] : terms) v[i - 1] += ExactReal(c);
  return v;
}

int root_at(const RootSystem& rs, const Vector& v) {
  auto r = rs.find(v);
  if (!r) throw std::runtime_error("operator table names a vector that is not a root of " + to_string(rs.algebra()));
  return *r;
}

AlgebraElement H(const RootSystem& rs, const Vector& v) { return AlgebraElement::cartan(rs.project(v)); }

TensorOperator angular(const std::string& name, int slot, AlgebraElement j0, AlgebraElement jp, AlgebraElement jm) {
  TensorOperator op{name, {slot}, {2}, {}, {}};
  op.components[{2}] = std::move(jp);
  op.components[{0}] = std::move(j0);
  op.components[{-2}] = std::move(jm);
  return op;
}

/// Four 2x2 (or 4x4) table rows in the order (+,+), (+,-), (-,+), (-,-).
const std::array<std::pair<int, int>, 4> kRows = {{{kHalf, kHalf}, {kHalf, -kHalf}, {-kHalf, kHalf}, {-kHalf, -kHalf}}};

struct Cell {
  int sign;
  const char* root;
};

std::vector<TensorOperator> g2_tables(const RootSystem& rs, const G2Labels& l) {
  auto E = [&](int k, const ExactReal& c) { return AlgebraElement::root(l.root_of(k, rs), c); };
  std::vector<TensorOperator> ops;
  ops.push_back(angular("J(1)", 1, AlgebraElement::cartan(scaled(l.h1, l.j1_scale)), E(3, -l.j1_scale), E(-3, l.j1_scale)));
  ops.push_back(angular("J(2)", 2, AlgebraElement::cartan(scaled(l.h2, l.j2_scale)), E(6, -l.j2_scale), E(-6, l.j2_scale)));
  const ExactReal c = ExactReal::radical(2, 3);
  TensorOperator u{"U(12)", {1, 2}, {1, 3}, {}, {}};
  const std::array<std::tuple<int, int, int, int>, 8> cells = {{
      {1, 3, 5, 1}, {1, 1, 4, 1}, {1, -1, 2, 1}, {1, -3, 1, 1},
      {-1, 3, -1, -1}, {-1, 1, -2, 1}, {-1, -1, -4, -1}, {-1, -3, -5, 1},
  }};
  for (auto [p, q, k, s] : cells) u.components[{p, q}] = E(k, ExactReal(s) * c);
  ops.push_back(std::move(u));
  return ops;
}

std::vector<TensorOperator> f4_tables(const RootSystem& rs) {
  const int dim = 4;
  const ExactReal K = rs.K();
  const ExactReal kk = K * ExactReal::radical(mpq_class(1, 2), 2);  // K / sqrt(2)
  const ExactReal halfK = K * ExactReal::rational(1, 2);
  auto E = [&](const Vector& v, const ExactReal& c) { return AlgebraElement::root(root_at(rs, v), c); };
  auto El = [&](std::string_view label, const ExactReal& c) { return AlgebraElement::root(rs.index_of(label), c); };

  std::vector<TensorOperator> ops;
  for (int i : {1, 3}) {
    const int i1 = i + 1;
    Vector plus = ambient(dim, {{1, i}, {1, i1}});
    Vector minus = ambient(dim, {{-1, i}, {1, i1}});
    ops.push_back(angular("J(" + std::to_string(i) + ")", i, halfK * H(rs, plus),
                          E(plus, kk), E(-plus, -kk)));
    ops.push_back(angular("J(" + std::to_string(i1) + ")", i1, halfK * H(rs, minus), E(minus, kk), E(-minus, -kk)));
  }
  for (int i : {1, 3}) {
    const int i1 = i + 1;
    TensorOperator u{"U(" + std::to_string(i) + std::to_string(i1) + ")", {i, i1}, {kHalf, kHalf}, {}, {}};
    u.components[{kHalf, kHalf}] = E(ambient(dim, {{1, i1}}), -kk);
    u.components[{kHalf, -kHalf}] = E(ambient(dim, {{1, i}}), kk);
    u.components[{-kHalf, kHalf}] = E(ambient(dim, {{-1, i}}), kk);
    u.components[{-kHalf, -kHalf}] = E(ambient(dim, {{-1, i1}}), kk);
    ops.push_back(std::move(u));
  }
  const std::array<std::tuple<int, int, const char*>, 4> families = {{
      {1, 3, "alpha"}, {1, 4, "beta"}, {2, 3, "gamma"}, {2, 4, "epsilon"}}};
  for (auto [i, j, y] : families) {
    const std::string s(y);
    TensorOperator u{"U(" + std::to_string(i) + std::to_string(j) + ")", {i, j}, {kHalf, kHalf}, {}, {}};
    u.components[{kHalf, kHalf}] = El(s + "1", -kk);
    u.components[{kHalf, -kHalf}] = El(s + "2", kk);
    u.components[{-kHalf, kHalf}] = El("-" + s + "2", kk);
    u.components[{-kHalf, -kHalf}] = El("-" + s + "1", kk);
    ops.push_back(std::move(u));
  }
  const Cell table[4][4] = {
      {{-1, "2+4"}, {1, "2+3"}, {-1, "2-3"}, {-1, "2-4"}},
      {{1, "1+4"}, {-1, "1+3"}, {1, "1-3"}, {1, "1-4"}},
      {{1, "-1+4"}, {-1, "-1+3"}, {1, "-1-3"}, {1, "-1-4"}},
      {{1, "-2+4"}, {-1, "-2+3"}, {1, "-2-3"}, {1, "-2-4"}},
  };
  TensorOperator u4{"U(1234)", {1, 2, 3, 4}, {kHalf, kHalf, kHalf, kHalf}, {}, {}};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      u4.components[{kRows[a].first, kRows[a].second, kRows[b].first, kRows[b].second}] =
          El(table[a][b].root, ExactReal(table[a][b].sign) * kk);
  ops.push_back(std::move(u4));
  return ops;
}

std::vector<TensorOperator> e6_tables(const RootSystem& rs) {
  const int dim = 7;
  const ExactReal K = rs.K();
  const ExactReal kk = K * ExactReal::radical(mpq_class(1, 2), 2);
  const ExactReal halfK = K * ExactReal::rational(1, 2);
  auto El = [&](std::string_view label, const ExactReal& c) { return AlgebraElement::root(rs.index_of(label), c); };
  auto d = [](int a, int b) { return std::to_string(a) + "-" + std::to_string(b); };

  std::vector<TensorOperator> ops;
  for (int i : {1, 3, 5}) {
    TensorOperator a{"A(" + std::to_string(i) + ")", {}, {}, {}, {}};
    a.components[{}] = K * H(rs, ambient(dim, {{1, i}, {1, i + 1}}));
    ops.push_back(std::move(a));
  }
  for (int s : {2, 4, 6})
    ops.push_back(angular("J(" + std::to_string(s) + ")", s, halfK * H(rs, ambient(dim, {{-1, s - 1}, {1, s}})),
                          El(d(s, s - 1), kk), El(d(s - 1, s), -kk)));
  ops.push_back(angular("J(8)", 8, kk * H(rs, ambient(dim, {{1, 7}})), El("e7", kk), El("-e7", -kk)));

  auto vw = [&](const std::string& digits, std::pair<int, int> slots, std::pair<int, int> charge_slots) {
    TensorOperator v{"V(" + digits + ")", {slots.first, slots.second}, {kHalf, kHalf}, {}, {}};
    v.charges = {{charge_slots.first, 1}, {charge_slots.second, -1}};
    TensorOperator w = v;
    w.name = "W(" + digits + ")";
    w.charges = {{charge_slots.first, -1}, {charge_slots.second, 1}};
    return std::pair{v, w};
  };
  for (auto [i, j] : {std::pair{1, 3}, {1, 5}, {3, 5}}) {
    const int i1 = i + 1, j1 = j + 1;
    auto [v, w] = vw(std::to_string(i) + std::to_string(i1) + std::to_string(j) + std::to_string(j1), {i1, j1}, {i, j});
    v.components[{kHalf, kHalf}] = El(d(i1, j), -kk);
    v.components[{kHalf, -kHalf}] = El(d(i1, j1), -kk);
    v.components[{-kHalf, kHalf}] = El(d(i, j), kk);
    v.components[{-kHalf, -kHalf}] = El(d(i, j1), kk);
    w.components[{kHalf, kHalf}] = El(d(j1, i), kk);
    w.components[{kHalf, -kHalf}] = El(d(j, i), -kk);
    w.components[{-kHalf, kHalf}] = El(d(j1, i1), kk);
    w.components[{-kHalf, -kHalf}] = El(d(j, i1), -kk);
    ops.push_back(std::move(v));
    ops.push_back(std::move(w));
  }
  // rows (+,+), (+,-), (-,+), (-,-)
  struct Mixed {
    const char* digits;
    std::pair<int, int> slots, charges;
    Cell v[4], w[4];
    bool transpose;
  };
  const Mixed mixed[] = {
      {"1638", {6, 8}, {1, 3},
       {{-1, "alpha1"}, {-1, "alpha2"}, {1, "alpha3"}, {1, "alpha4"}},
       {{1, "-alpha4"}, {-1, "-alpha3"}, {1, "-alpha2"}, {-1, "-alpha1"}}, false},
      {"1458", {4, 8}, {1, 5},
       {{1, "beta1"}, {1, "beta2"}, {-1, "beta3"}, {-1, "beta4"}},
       {{-1, "-beta4"}, {1, "-beta3"}, {-1, "-beta2"}, {1, "-beta1"}}, false},
      // listed with rows labelled by the slot-8 projection
      {"3258", {2, 8}, {3, 5},
       {{-1, "eps1"}, {1, "eps3"}, {-1, "eps2"}, {1, "eps4"}},
       {{1, "-eps4"}, {1, "-eps2"}, {-1, "-eps3"}, {-1, "-eps1"}}, true},
  };
  for (const auto& m : mixed) {
    auto [v, w] = vw(m.digits, m.slots, m.charges);
    for (int r = 0; r < 4; ++r) {
      auto [p, q] = kRows[r];
      ComponentLabel label = m.transpose ? ComponentLabel{q, p} : ComponentLabel{p, q};
      v.components[label] = El(m.v[r].root, ExactReal(m.v[r].sign) * kk);
      w.components[label] = El(m.w[r].root, ExactReal(m.w[r].sign) * kk);
    }
    ops.push_back(std::move(v));
    ops.push_back(std::move(w));
  }
  const Cell table[4][4] = {
      {{-1, "lambda1"}, {1, "lambda2"}, {-1, "lambda3"}, {-1, "lambda4"}},
      {{1, "lambda5"}, {-1, "lambda6"}, {1, "lambda7"}, {1, "lambda8"}},
      {{1, "-lambda8"}, {-1, "-lambda7"}, {1, "-lambda6"}, {1, "-lambda5"}},
      {{1, "-lambda4"}, {-1, "-lambda3"}, {1, "-lambda2"}, {1, "-lambda1"}},
  };
  TensorOperator u{"U(2468)", {2, 4, 6, 8}, {kHalf, kHalf, kHalf, kHalf}, {}, {}};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      u.components[{kRows[a].first, kRows[a].second, kRows[b].first, kRows[b].second}] =
          El(table[a][b].root, ExactReal(table[a][b].sign) * kk);
  ops.push_back(std::move(u));
  return ops;
}

}  // namespace

std::vector<TensorOperator> operator_tables(const RootSystem& rs, const G2Labels* labels) {
  switch (rs.algebra()) {
    case AlgebraKind::G2:
      if (!labels) throw std::invalid_argument("G2 operator tables need a root numbering");
      return g2_tables(rs, *labels);
    case AlgebraKind::F4: return f4_tables(rs);
    case AlgebraKind::E6: return e6_tables(rs);
  }
  return {};
}

TensorBasis assemble(const RootSystem& rs, std::vector<TensorOperator> ops) {
  TensorBasis b;
  b.algebra = rs.algebra();
  if (b.algebra == AlgebraKind::E6) b.dependent = {"A(5)"};
  for (const auto& op : ops) {
    if (op.components.size() != op.expected_component_count())
      throw std::runtime_error(op.name + " has " + std::to_string(op.components.size()) + " components, expected " +
                               std::to_string(op.expected_component_count()));
    for (const auto& l : component_labels(op.ranks2)) {
      auto it = op.components.find(l);
      if (it == op.components.end()) throw std::runtime_error(op.name + " is missing component " + label_text(l));
      if (it->second.is_zero()) throw std::runtime_error(op.name + label_text(l) + " is zero");
    }
  }
  b.operators = std::move(ops);
  const int n = static_cast<int>(b.component_count());
  if (n != algebra_order(b.algebra))
    throw std::runtime_error(to_string(b.algebra) + " basis has " + std::to_string(n) + " components, expected " +
                             std::to_string(algebra_order(b.algebra)));
  return b;
}

TensorOperator hermitian_conjugate(const CartanWeyl& cw, const TensorOperator& op) {
  TensorOperator out = op;
  out.name = op.name + "†";
  for (auto& [l, x] : out.components) x = cw.dagger(x);
  for (auto& [s, q] : out.charges) q = -q;
  return out;
}

// ---------------------------------------------------------------------------
// G2 label search

namespace {

bool all_pass(const std::vector<RelationResult>& rs) {
  return std::all_of(rs.begin(), rs.end(), [](const RelationResult& r) { return r.pass; });
}

// Weight (2 p, 2 q) of E_b under (J_0(1), J_0(2)).
std::pair<ExactReal, ExactReal> weight2(const RootSystem& rs, int b, const Vector& u1, const Vector& u2,
                                        const ExactReal& a1, const ExactReal& a2) {
  const ExactReal twoOverK = ExactReal(2) * rs.K().inverse();
  const auto& c = rs.root(b).coords;
  return {a1 * dot(u1, c) * twoOverK, a2 * dot(u2, c) * twoOverK};
}

}  // namespace

LabelSearchResult solve_labels(const RootSystem& rs) {
  if (rs.algebra() != AlgebraKind::G2) throw std::invalid_argument("label search applies to G2 only");
  LabelSearchResult result;
  const ExactReal two_root3 = ExactReal::radical(2, 3);
  const std::array<std::tuple<const char*, ExactReal, ExactReal>, 2> readings = {{
      {"literal", two_root3, ExactReal(2)},
      {"swapped", ExactReal(2), two_root3},
  }};
  // E_5, E_4, E_2, E_1 carry weights (1/2, 3/2), (1/2, 1/2), (1/2, -1/2), (1/2, -3/2)
  const std::array<std::tuple<int, int, int>, 4> want = {{{5, 1, 3}, {4, 1, 1}, {2, 1, -1}, {1, 1, -3}}};
  const int n = rs.size();
  for (const auto& [reading, a1, a2] : readings) {
    int valid = 0;
    for (int i3 = 0; i3 < n; ++i3)
      for (int i6 = 0; i6 < n; ++i6) {
        const auto& r3 = rs.root(i3).coords;
        const auto& r6 = rs.root(i6).coords;
        if (!dot(r3, r6).is_zero()) continue;
        Vector u1 = scaled(r3, ExactReal::sqrt_rational(*dot(r3, r3).as_rational()).inverse());
        Vector u2 = scaled(r6, ExactReal::sqrt_rational(*dot(r6, r6).as_rational()).inverse());
        if (weight2(rs, i3, u1, u2, a1, a2) != std::pair{ExactReal(2), ExactReal(0)}) continue;
        if (weight2(rs, i6, u1, u2, a1, a2) != std::pair{ExactReal(0), ExactReal(2)}) continue;
        G2Labels l;
        l.reading = reading;
        l.h1 = u1;
        l.h2 = u2;
        l.j1_scale = a1;
        l.j2_scale = a2;
        l.positive[2] = i3;
        l.positive[5] = i6;
        bool placed = true;
        for (auto [k, p2, q2] : want) {
          int hit = -1, hits = 0;
          for (int b = 0; b < n; ++b)
            if (weight2(rs, b, u1, u2, a1, a2) == std::pair{ExactReal(p2), ExactReal(q2)}) {
              hit = b;
              ++hits;
            }
          if (hits != 1) placed = false;
          l.positive[k - 1] = hit;
        }
        if (!placed) continue;

        for (int y : {1, 2, 3, 4, 5, -1, -2, -3, -4, -5}) {
          if (rs.sum(l.root_of(6, rs), l.root_of(y, rs)) < 0) continue;
          l.extra_partner = y;
          ++result.candidates_examined;
          std::vector<TensorOperator> ops = operator_tables(rs, &l);
          ConstantOrbits orbits = structure_orbits(rs);
          auto eqs = jacobi_equations(rs, orbits);
          std::map<std::pair<int, int>, ExactReal> seeds;
          for (const auto& c : printed_constants(rs, &l)) seeds[{rs.index_of(c.x), rs.index_of(c.y)}] = c.value;
          std::vector<OrbitSolution> sols;
          try {
            sols = enumerate_constant_solutions(rs, orbits, eqs, seeds, 64);
          } catch (const SolverError&) {
            continue;
          }
          for (std::size_t si = 0; si < sols.size(); ++si) {
            CartanWeyl cw(rs, table_from_solution(rs, orbits, sols[si], StructureTable(n, rs.K())));
            TensorBasis basis = assemble(rs, ops);
            if (!all_pass(verify_definitions(cw, basis)) || !all_pass(verify_coupled_relations(cw, basis)) ||
                !all_pass(verify_hermiticity(cw, basis)))
              continue;
            ++valid;
            if (!result.chosen) {
              l.solution_index = static_cast<int>(si);
              result.chosen = l;
            }
          }
        }
      }
    (std::string(reading) == "literal" ? result.literal_valid : result.swapped_valid) = valid;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Export

namespace {

std::string operator_kind(const TensorOperator& op) {
  if (op.name.rfind("J(", 0) == 0) return "angular momentum";
  if (op.name.rfind("A(", 0) == 0) return "scalar";
  return std::to_string(op.slots.size()) + "-fold tensor";
}

std::string ranks_text(const TensorOperator& op) {
  std::string s;
  for (std::size_t i = 0; i < op.ranks2.size(); ++i) s += (i ? " " : "") + half_integer(op.ranks2[i]);
  return s.empty() ? "0" : s;
}

std::string slots_text(const std::vector<int>& slots) {
  std::string s;
  for (std::size_t i = 0; i < slots.size(); ++i) s += (i ? "," : "") + std::to_string(slots[i]);
  return s;
}

std::string charges_text(const std::map<int, int>& charges) {
  std::string s;
  for (const auto& [slot, q] : charges) s += (s.empty() ? "" : ", ") + ("A(" + std::to_string(slot) + "): " + (q > 0 ? "+" : "") + std::to_string(q));
  return s;
}

}  // namespace

nlohmann::json basis_to_json(const CartanWeyl& cw, const TensorBasis& basis) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["algebra"] = to_string(basis.algebra);
  j["K"] = cw.roots().K().str();
  j["component_count"] = basis.component_count();
  j["dependent"] = basis.dependent;
  auto ops = nlohmann::json::array();
  for (const auto& op : basis.operators) {
    nlohmann::json o;
    o["name"] = op.name;
    o["kind"] = operator_kind(op);
    o["slots"] = op.slots;
    auto ranks = nlohmann::json::array();
    for (int r : op.ranks2) ranks.push_back(half_integer(r));
    o["ranks"] = ranks;
    nlohmann::json ch = nlohmann::json::object();
    for (const auto& [s, q] : op.charges) ch[std::to_string(s)] = q;
    o["charges"] = ch;
    auto comps = nlohmann::json::array();
    for (const auto& l : component_labels(op.ranks2)) {
      nlohmann::json c;
      auto lab = nlohmann::json::array();
      for (int x : l) lab.push_back(half_integer(x));
      c["label"] = lab;
      c["element"] = op.at(l).str(cw.roots());
      c["terms"] = op.at(l).to_json(cw.roots());
      comps.push_back(std::move(c));
    }
    o["components"] = comps;
    ops.push_back(std::move(o));
  }
  j["operators"] = ops;
  return j;
}

std::string basis_to_markdown(const CartanWeyl& cw, const TensorBasis& basis) {
  std::ostringstream os;
  os << "# Irreducible tensor basis of " << to_string(basis.algebra) << "\n\n";
  os << "K = " << cw.roots().K() << ", " << basis.component_count() << " independent components";
  if (!basis.dependent.empty()) os << " (" << basis.dependent.front() << " is dependent)";
  os << "\n\n";
  for (const auto& op : basis.operators) {
    os << "## " << op.name << "\n\n";
    os << op.name << " is a " << operator_kind(op) << " operator";
    if (!op.slots.empty()) os << " on slots " << slots_text(op.slots) << " with ranks " << ranks_text(op);
    if (!op.charges.empty()) os << "; charges " << charges_text(op.charges);
    os << ".\n\n";
    os << "| component | element |\n|---|---|\n";
    for (const auto& l : component_labels(op.ranks2))
      os << "| " << (l.empty() ? std::string("-") : label_text(l)) << " | `" << op.at(l).str(cw.roots()) << "` |\n";
    os << "\n";
  }
  return os.str();
}

std::string basis_to_text(const CartanWeyl& cw, const TensorBasis& basis) {
  std::ostringstream os;
  os << to_string(basis.algebra) << " tensor basis, K = " << cw.roots().K() << ", " << basis.component_count()
     << " components\n";
  for (const auto& op : basis.operators) {
    os << op.name << "  [" << operator_kind(op);
    if (!op.slots.empty()) os << "; slots " << slots_text(op.slots) << "; ranks " << ranks_text(op);
    if (!op.charges.empty()) os << "; " << charges_text(op.charges);
    os << "]\n";
    for (const auto& l : component_labels(op.ranks2))
      os << "  " << (l.empty() ? std::string("()") : label_text(l)) << "  " << op.at(l).str(cw.roots()) << "\n";
  }
  return os.str();
}

}  // namespace xlie
