#include "xlie/structure_data.hpp"

#include <algorithm>
#include <map>

#include "xlie/so3.hpp"

namespace xlie {

namespace {

struct Listed {
  const char* x;
  const char* y;
  int sign;
  bool half_root;  // magnitude sqrt(1/2) instead of 1
};

// G_xy of F4, N_xy = G_xy / K.
const Listed kF4Listed[] = {
    {"alpha1", "alpha2", 1, false},   {"alpha1", "-alpha2", 1, false}, {"beta1", "beta2", 1, false},
    {"beta1", "-beta2", 1, false},    {"gamma1", "gamma2", 1, false},  {"gamma1", "-gamma2", 1, false},
    {"eps1", "eps2", 1, false},       {"eps1", "-eps2", 1, false},     {"alpha1", "-beta2", 1, true},
    {"alpha1", "-beta1", -1, true},   {"alpha2", "-beta2", 1, true},   {"alpha2", "-beta1", 1, true},
    {"gamma1", "-eps2", -1, true},    {"gamma1", "-eps1", 1, true},    {"gamma2", "-eps2", -1, true},
    {"gamma2", "-eps1", -1, true},    {"alpha1", "gamma2", 1, true},   {"alpha1", "-gamma1", -1, true},
    {"-alpha2", "gamma2", 1, true},   {"-alpha2", "-gamma1", 1, true}, {"beta1", "eps2", 1, true},
    {"beta1", "-eps1", -1, true},     {"-beta2", "eps2", 1, true},     {"-beta2", "-eps1", 1, true},
    {"alpha1", "eps1", 1, false},     {"alpha1", "-eps1", -1, false},  {"alpha1", "eps2", 1, false},
    {"alpha1", "-eps2", 1, false},    {"-alpha2", "eps1", 1, false},   {"-alpha2", "-eps1", 1, false},
    {"-alpha2", "eps2", 1, false},    {"-alpha2", "-eps2", -1, false}, {"beta1", "gamma1", 1, false},
    {"beta1", "-gamma1", 1, false},   {"beta1", "gamma2", -1, false},  {"beta1", "-gamma2", 1, false},
    {"-beta1", "gamma1", 1, false},   {"-beta1", "-gamma1", -1, false}, {"-beta1", "gamma2", -1, false},
    {"-beta1", "-gamma2", -1, false},
};

// S_xy of E6, N_xy = S_xy / K. sign 0 marks the entry printed without a value.
const Listed kE6Listed[] = {
    {"alpha1", "-alpha3", 1, false},   {"alpha1", "-alpha2", -1, false},  {"alpha4", "-alpha3", -1, false},
    {"alpha4", "-alpha2", 1, false},   {"beta1", "-alpha3", 1, false},    {"beta1", "-alpha1", 1, false},
    {"beta3", "-alpha3", 1, false},    {"beta3", "-alpha1", 1, false},    {"beta2", "-alpha4", 1, false},
    {"beta2", "-alpha2", 1, false},    {"beta4", "-alpha4", 1, false},    {"beta4", "-alpha2", 1, false},
    {"beta1", "-beta3", 1, false},     {"beta1", "-beta2", -1, false},    {"beta4", "-beta3", -1, false},
    {"beta4", "-beta2", 1, false},     {"eps1", "-eps3", 1, false},       {"eps1", "-eps2", -1, false},
    {"eps4", "-eps3", -1, false},      {"eps4", "-eps2", 1, false},       {"lambda1", "-lambda3", -1, false},
    {"lambda1", "-lambda2", 1, false}, {"lambda4", "-lambda3", 1, false}, {"lambda4", "-lambda2", -1, false},
    {"lambda1", "lambda8", 1, false},  {"lambda1", "-lambda5", 1, false}, {"-lambda4", "lambda8", -1, false},
    {"-lambda4", "-lambda5", -1, false}, {"lambda2", "lambda7", 1, false}, {"lambda2", "-lambda6", 1, false},
    {"-lambda3", "lambda7", -1, false}, {"-lambda3", "-lambda6", -1, false}, {"lambda5", "-lambda7", -1, false},
    {"lambda5", "-lambda6", 1, false}, {"lambda8", "-lambda7", -1, false}, {"lambda8", "-lambda6", 1, false},
    {"alpha1", "-lambda5", -1, false}, {"alpha1", "-lambda1", -1, false}, {"alpha1", "lambda4", -1, false},
    {"alpha1", "lambda8", 1, false},   {"-alpha4", "-lambda5", 1, false}, {"-alpha4", "-lambda1", -1, false},
    {"-alpha4", "lambda4", -1, false}, {"-alpha4", "lambda8", -1, false}, {"alpha2", "-lambda6", 1, false},
    {"alpha2", "-lambda2", 1, false},  {"alpha2", "lambda3", 1, false},   {"alpha2", "lambda7", -1, false},
    {"-alpha3", "-lambda6", 1, false}, {"-alpha3", "-lambda2", -1, false}, {"-alpha3", "lambda3", -1, false},
    {"-alpha3", "lambda7", -1, false}, {"beta1", "-lambda3", -1, false},  {"beta1", "-lambda1", 1, false},
    {"beta1", "lambda6", 1, false},    {"beta1", "lambda8", -1, false},   {"-beta4", "-lambda3", 1, false},
    {"-beta4", "-lambda1", 1, false},  {"-beta4", "lambda6", 1, false},   {"-beta4", "lambda8", 1, false},
    {"beta2", "-lambda4", -1, false},  {"beta2", "-lambda2", -1, false},  {"beta2", "lambda5", 1, false},
    {"beta2", "lambda7", 1, false},    {"-beta3", "-lambda4", -1, false}, {"-beta3", "-lambda2", 1, false},
    {"-beta3", "lambda5", -1, false},  {"-beta3", "lambda7", 0, false},   {"eps1", "alpha2", -1, false},
    {"eps1", "alpha4", 1, false},      {"eps1", "-beta3", 1, false},      {"eps1", "-beta1", -1, false},
    {"eps3", "alpha2", -1, false},     {"eps3", "alpha4", 1, false},      {"eps3", "-beta3", -1, false},
    {"eps3", "-beta1", 1, false},      {"eps2", "alpha1", 1, false},      {"eps2", "alpha3", -1, false},
    {"eps2", "-beta4", 1, false},      {"eps2", "-beta2", -1, false},     {"eps4", "alpha1", 1, false},
    {"eps4", "alpha3", -1, false},     {"eps4", "-beta4", -1, false},     {"eps4", "-beta2", 1, false},
    {"eps1", "-lambda7", -1, false},   {"eps1", "-lambda5", 1, false},    {"eps1", "-lambda3", 1, false},
    {"eps1", "-lambda1", -1, false},   {"-eps4", "-lambda7", -1, false},  {"-eps4", "-lambda5", -1, false},
    {"-eps4", "-lambda3", -1, false},  {"-eps4", "-lambda1", -1, false},  {"eps2", "-lambda8", -1, false},
    {"eps2", "-lambda6", -1, false},   {"eps2", "lambda4", 1, false},     {"eps2", "lambda2", 1, false},
    {"-eps3", "-lambda8", 1, false},   {"-eps3", "-lambda6", -1, false},  {"-eps3", "lambda4", 1, false},
    {"-eps3", "lambda2", -1, false},
};

std::string label_of(const RootSystem& rs, std::string_view name) { return rs.root(rs.index_of(name)).label; }

std::string pair_text(const RootSystem& rs, int a, int b) {
  return "(" + rs.root(a).label + ", " + rs.root(b).label + ")";
}

template <std::size_t N>
std::vector<PrintedConstant> from_listed(const RootSystem& rs, const Listed (&rows)[N]) {
  const ExactReal invK = rs.K().inverse();
  const ExactReal half_root = ExactReal::sqrt_rational(mpq_class(1, 2));
  std::vector<PrintedConstant> out;
  for (const auto& r : rows) {
    PrintedConstant c{label_of(rs, r.x), label_of(rs, r.y), {}, r.sign != 0};
    if (c.known) c.value = ExactReal(r.sign) * (r.half_root ? half_root : ExactReal(1)) * invK;
    out.push_back(std::move(c));
  }
  return out;
}

Vector ambient(int dim, std::initializer_list<std::pair<int, int>> terms) {
  Vector v(dim);
  for (auto [c, i] : terms) v[i - 1] += ExactReal(c);
  return v;
}

}  // namespace

std::vector<PrintedConstant> printed_constants(const RootSystem& rs, const G2Labels* labels) {
  switch (rs.algebra()) {
    case AlgebraKind::G2: {
      if (!labels) throw std::invalid_argument("G2 constants need a root numbering");
      auto name = [&](int k) { return rs.root(labels->root_of(k, rs)).label; };
      const ExactReal quarter_root = ExactReal::sqrt_rational(mpq_class(1, 8));
      std::vector<PrintedConstant> out;
      for (auto [a, b] : {std::pair{6, 1}, {6, 4}, {4, 2}, {1, 5}}) out.push_back({name(a), name(b), quarter_root});
      out.push_back({name(6), name(labels->extra_partner), ExactReal::sqrt_rational(mpq_class(1, 6))});
      return out;
    }
    case AlgebraKind::F4:
      return from_listed(rs, kF4Listed);
    case AlgebraKind::E6:
      return from_listed(rs, kE6Listed);
  }
  return {};
}

std::vector<PrintedConstant> subalgebra_constants(const RootSystem& rs) {
  std::vector<PrintedConstant> out;
  const ExactReal invK = rs.K().inverse();
  const int dim = rs.ambient_dimension();
  auto label = [&](const Vector& v) {
    auto r = rs.find(v);
    if (!r) throw std::logic_error("subalgebra constant names a non-root");
    return rs.root(*r).label;
  };
  auto add = [&](const Vector& x, const Vector& y, const ExactReal& v) { out.push_back({label(x), label(y), v}); };
  if (rs.algebra() == AlgebraKind::F4) {
    for (int i = 1; i <= 4; ++i)
      for (int j = i + 1; j <= 4; ++j) {
        add(ambient(dim, {{1, i}}), ambient(dim, {{1, j}}), -invK);
        add(ambient(dim, {{1, j}}), ambient(dim, {{1, i}, {-1, j}}), -invK);
        for (int k = j + 1; k <= 4; ++k) {
          add(ambient(dim, {{1, i}, {-1, k}}), ambient(dim, {{1, j}, {1, k}}), -invK);
          add(ambient(dim, {{1, i}, {1, k}}), ambient(dim, {{1, j}, {-1, k}}), -invK);
          add(ambient(dim, {{1, j}, {1, k}}), ambient(dim, {{1, i}, {-1, j}}), -invK);
          add(ambient(dim, {{1, j}, {-1, k}}), ambient(dim, {{1, i}, {-1, j}}), -invK);
        }
      }
  } else if (rs.algebra() == AlgebraKind::E6) {
    for (int i = 1; i <= 6; ++i)
      for (int j = i + 1; j <= 6; ++j)
        for (int k = j + 1; k <= 6; ++k)
          add(ambient(dim, {{1, i}, {-1, j}}), ambient(dim, {{1, j}, {-1, k}}), invK);
  }
  return out;
}

std::vector<SeedConstant> ladder_constants(const RootSystem& rs, const std::vector<TensorOperator>& ops,
                                           std::vector<std::string>* problems) {
  struct Ladder {
    int root[2]{-1, -1};  // J_+1, J_-1
    ExactReal kappa[2];
  };
  std::map<int, Ladder> ladders;
  auto single = [](const AlgebraElement& x, int& root, ExactReal& c) {
    if (x.terms().size() != 1 || x.terms().begin()->first.kind != Generator::Kind::Root) return false;
    root = x.terms().begin()->first.index;
    c = x.terms().begin()->second;
    return true;
  };
  for (const auto& op : ops) {
    if (op.name.rfind("J(", 0) != 0 || op.slots.size() != 1) continue;
    Ladder l;
    bool ok = single(op.at({2}), l.root[0], l.kappa[0]) && single(op.at({-2}), l.root[1], l.kappa[1]);
    if (ok) ladders[op.slots[0]] = l;
  }

  std::vector<SeedConstant> out;
  auto report = [&](std::string msg) {
    if (problems) problems->push_back(std::move(msg));
  };
  for (const auto& op : ops) {
    if (op.name.rfind("J(", 0) == 0) continue;
    for (const auto& [label, x] : op.components) {
      int xr;
      ExactReal a;
      if (!single(x, xr, a)) continue;
      for (std::size_t i = 0; i < op.slots.size(); ++i) {
        auto it = ladders.find(op.slots[i]);
        if (it == ladders.end()) continue;
        for (int k = 0; k < 2; ++k) {
          const int sg = k == 0 ? 1 : -1;
          const int j = it->second.root[k];
          const int target = rs.sum(j, xr);
          ComponentLabel next = label;
          next[i] += 2 * sg;
          std::string where = "J(" + std::to_string(op.slots[i]) + ")_" + (sg > 0 ? "+1" : "-1") + " on " + op.name +
                              label_text(label);
          if (std::abs(next[i]) > op.ranks2[i]) {
            if (target >= 0) report(where + ": top of ladder but " + pair_text(rs, j, xr) + " sums to a root");
            continue;
          }
          int yr;
          ExactReal b;
          if (!single(op.at(next), yr, b)) continue;
          if (target != yr) {
            report(where + ": " + pair_text(rs, j, xr) + " does not sum to " + rs.root(yr).label);
            continue;
          }
          ExactReal C = ladder_coeff(op.ranks2[i], label[i], sg);
          out.push_back({j, xr, C * b / (it->second.kappa[k] * a), "ladder action of " + where});
        }
      }
    }
  }
  return out;
}

nlohmann::json ConstantsReport::to_json(const RootSystem& rs) const {
  nlohmann::json j = table.to_json(rs);
  j["completions"] = completions;
  j["chosen_completion"] = chosen;
  j["listed_total"] = listed_total;
  j["listed_agree"] = listed_agree;
  auto rej = nlohmann::json::array();
  for (const auto& r : rejected) rej.push_back({{"x", r.x}, {"y", r.y}, {"listed", r.listed}, {"reason", r.reason}});
  j["rejected"] = rej;
  j["resolved"] = resolved;
  return j;
}

ConstantsReport load_structure_constants(const RootSystem& rs, const std::vector<TensorOperator>& ops,
                                         const G2Labels* labels) {
  const int n = rs.size();
  ConstantOrbits orbits = structure_orbits(rs);
  auto eqs = jacobi_equations(rs, orbits);

  ConstantsReport rep;
  StructureTable origin(n, rs.K());
  std::map<std::pair<int, int>, ExactReal> seeds;
  std::map<int, std::pair<ExactReal, std::string>> orbit_value;

  auto try_seed = [&](int a, int b, const ExactReal& v, const std::string& source) {
    const int p = a * n + b;
    if (orbits.orbit[p] < 0) {
      rep.rejected.push_back({rs.root(a).label, rs.root(b).label, (v * rs.K()).str(), "sum is not a root"});
      return;
    }
    ExactReal u = ExactReal(orbits.sign[p]) * v;
    auto [it, inserted] = orbit_value.try_emplace(orbits.orbit[p], u, source);
    if (!inserted && it->second.first != u) {
      rep.rejected.push_back({rs.root(a).label, rs.root(b).label, (v * rs.K()).str(),
                              "conflicts with " + it->second.second});
      return;
    }
    seeds[{a, b}] = v;
    if (!origin.has(a, b)) origin.set(a, b, v, Provenance::Listed, source);
    rep.seeds.push_back({a, b, v, source});
  };

  const auto listed = printed_constants(rs, labels);
  rep.listed_total = listed.size();

  if (rs.algebra() == AlgebraKind::G2) {
    for (const auto& c : listed) try_seed(rs.index_of(c.x), rs.index_of(c.y), c.value, "listed constant");
    if (!rep.rejected.empty()) throw SolverError(SolverError::Kind::Contradiction, "listed G2 constants are inconsistent");
    auto sols = enumerate_constant_solutions(rs, orbits, eqs, seeds, 64);
    rep.completions = sols.size();
    if (labels->solution_index < 0 || static_cast<std::size_t>(labels->solution_index) >= sols.size())
      throw std::out_of_range("G2 completion index out of range");
    rep.chosen = labels->solution_index;
    rep.table = table_from_solution(rs, orbits, sols[rep.chosen], origin);
    rep.listed_agree = listed.size();
    return rep;
  }

  const std::string sub = rs.algebra() == AlgebraKind::F4 ? "B4" : "A5";
  for (const auto& c : subalgebra_constants(rs))
    try_seed(rs.index_of(c.x), rs.index_of(c.y), c.value, sub + " subalgebra constant");
  std::vector<std::string> problems;
  for (const auto& s : ladder_constants(rs, ops, &problems)) try_seed(s.x, s.y, s.value, s.source);
  if (!problems.empty()) throw std::runtime_error("operator table inconsistent with the root system: " + problems.front());

  auto sols = enumerate_constant_solutions(rs, orbits, eqs, seeds, 1024);
  rep.completions = sols.size();

  // listed entries usable for scoring
  struct Usable {
    int a, b;
    ExactReal value;
  };
  std::vector<Usable> usable;
  std::vector<std::pair<int, int>> unknown;
  for (const auto& c : listed) {
    const int a = rs.index_of(c.x), b = rs.index_of(c.y);
    if (orbits.orbit[a * n + b] < 0) {
      std::string reason = "sum is not a root";
      const int nb = rs.negative(b);
      if (c.known && orbits.orbit[a * n + nb] >= 0) reason += "; reading the column as " + rs.root(nb).label + " ";
      rep.rejected.push_back({c.x, c.y, c.known ? (c.value * rs.K()).str() : "?", reason});
      continue;
    }
    if (!c.known) {
      unknown.emplace_back(a, b);
      continue;
    }
    usable.push_back({a, b, c.value});
  }
  auto value_in = [&](const OrbitSolution& s, int a, int b) {
    const int p = a * n + b;
    return ExactReal(orbits.sign[p]) * s.values[orbits.orbit[p]];
  };
  std::size_t best = 0, best_score = 0;
  for (std::size_t i = 0; i < sols.size(); ++i) {
    std::size_t score = 0;
    for (const auto& u : usable) score += value_in(sols[i], u.a, u.b) == u.value;
    if (i == 0 || score > best_score) {
      best = i;
      best_score = score;
    }
  }
  rep.chosen = best;
  rep.table = table_from_solution(rs, orbits, sols[best], origin);

  // Finish the non-root reasons with the value the alternate reading would need.
  for (auto& r : rep.rejected) {
    const std::string marker = "; reading the column as ";
    auto pos = r.reason.find(marker);
    if (pos == std::string::npos) continue;
    const int a = rs.index_of(r.x), b = rs.negative(rs.index_of(r.y));
    ExactReal got = rep.table.at(a, b) * rs.K();
    r.reason += got == ExactReal::parse(r.listed) ? "matches the completed table" : "gives " + got.str();
  }

  for (const auto& u : usable) {
    ExactReal got = rep.table.at(u.a, u.b);
    if (got == u.value) {
      ++rep.listed_agree;
      std::string note = rep.table.note(u.a, u.b);
      note = note.empty() ? "listed constant" : note + "; listed constant";
      rep.table.set(u.a, u.b, got, Provenance::Listed, note);
    } else {
      rep.rejected.push_back({rs.root(u.a).label, rs.root(u.b).label, (u.value * rs.K()).str(),
                              "completion gives " + (got * rs.K()).str()});
      rep.table.set(u.a, u.b, got, rep.table.provenance(u.a, u.b),
                    "listed value " + (u.value * rs.K()).str() + " (times K) differs");
    }
  }
  for (auto [a, b] : unknown) {
    ExactReal got = rep.table.at(a, b);
    rep.table.set(a, b, got, rep.table.provenance(a, b), "listed without a value; fixed by the Jacobi completion");
    rep.resolved.push_back(pair_text(rs, a, b) + " = " + got.str() + " (times K: " + (got * rs.K()).str() + ")");
  }
  return rep;
}

}  // namespace xlie
