#include "xlie/cartan_weyl.hpp"

#include <algorithm>
#include <functional>

namespace xlie {

// ---------------------------------------------------------------------------
// AlgebraElement

AlgebraElement AlgebraElement::cartan(const Vector& v) {
  AlgebraElement x;
  for (int i = 0; i < static_cast<int>(v.size()); ++i) x.add(Generator::cartan(i), v[i]);
  return x;
}

AlgebraElement AlgebraElement::root(int r, const ExactReal& coefficient) {
  AlgebraElement x;
  x.add(Generator::root(r), coefficient);
  return x;
}

void AlgebraElement::add(const Generator& g, const ExactReal& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(g, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ExactReal AlgebraElement::coefficient(const Generator& g) const {
  auto it = terms_.find(g);
  return it == terms_.end() ? ExactReal() : it->second;
}

Vector AlgebraElement::cartan_part(int dim) const {
  Vector v(dim);
  for (const auto& [g, c] : terms_)
    if (g.kind == Generator::Kind::Cartan) v[g.index] = c;
  return v;
}

bool AlgebraElement::is_cartan() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.first.kind == Generator::Kind::Cartan; });
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  for (const auto& [g, c] : o.terms_) add(g, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  for (const auto& [g, c] : o.terms_) add(g, -c);
  return *this;
}

AlgebraElement AlgebraElement::operator-() const {
  AlgebraElement out = *this;
  for (auto& [g, c] : out.terms_) c = -c;
  return out;
}

AlgebraElement operator*(const ExactReal& s, const AlgebraElement& x) {
  if (s.is_zero()) return {};
  AlgebraElement out = x;
  for (auto& [g, c] : out.terms_) c = s * c;
  return out;
}

std::string generator_name(const Generator& g, const RootSystem& rs) {
  if (g.kind == Generator::Kind::Cartan) return "H" + std::to_string(g.index + 1);
  return "E[" + rs.root(g.index).label + "]";
}

std::string AlgebraElement::str(const RootSystem& rs) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [g, c] : terms_) {
    std::string coef = c.str();
    bool compound = c.terms().size() > 1;
    if (!first) out += " + ";
    out += compound ? "(" + coef + ")" : coef;
    out += "*" + generator_name(g, rs);
    first = false;
  }
  return out;
}

nlohmann::json AlgebraElement::to_json(const RootSystem& rs) const {
  auto arr = nlohmann::json::array();
  for (const auto& [g, c] : terms_) {
    nlohmann::json t;
    t["generator"] = generator_name(g, rs);
    t["coefficient"] = c.str();
    t["exact"] = c.to_json();
    arr.push_back(std::move(t));
  }
  return arr;
}

// ---------------------------------------------------------------------------
// StructureTable

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Listed: return "listed";
    case Provenance::Symmetry: return "symmetry";
    case Provenance::JacobiSolved: return "jacobi-solved";
  }
  return "?";
}

Provenance parse_provenance(std::string_view s) {
  if (s == "listed") return Provenance::Listed;
  if (s == "symmetry") return Provenance::Symmetry;
  if (s == "jacobi-solved") return Provenance::JacobiSolved;
  throw std::invalid_argument("unknown provenance '" + std::string(s) + "'");
}

const ExactReal& StructureTable::at(int a, int b) const {
  const auto& v = values_[a * n_ + b];
  if (!v) throw std::out_of_range("structure constant missing for root pair (" + std::to_string(a) + ", " +
                                  std::to_string(b) + ")");
  return *v;
}

const std::string& StructureTable::note(int a, int b) const {
  static const std::string empty;
  auto it = notes_.find(a * n_ + b);
  return it == notes_.end() ? empty : it->second;
}

void StructureTable::set(int a, int b, const ExactReal& v, Provenance p, std::string note) {
  values_[a * n_ + b] = v;
  prov_[a * n_ + b] = p;
  if (note.empty())
    notes_.erase(a * n_ + b);
  else
    notes_[a * n_ + b] = std::move(note);
}

int StructureTable::entry_count() const {
  return static_cast<int>(std::count_if(values_.begin(), values_.end(), [](const auto& v) { return v.has_value(); }));
}

nlohmann::json StructureTable::to_json(const RootSystem& rs) const {
  nlohmann::json j;
  j["algebra"] = to_string(rs.algebra());
  j["K"] = K_.str();
  j["K_exact"] = K_.to_json();
  auto arr = nlohmann::json::array();
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) {
      if (!has(a, b)) continue;
      nlohmann::json e;
      e["x"] = rs.root(a).label;
      e["y"] = rs.root(b).label;
      e["N"] = at(a, b).str();
      e["N_exact"] = at(a, b).to_json();
      e["N_times_K"] = (at(a, b) * K_).str();
      e["provenance"] = to_string(provenance(a, b));
      if (!note(a, b).empty()) e["note"] = note(a, b);
      arr.push_back(std::move(e));
    }
  j["entries"] = arr;
  return j;
}

StructureTable StructureTable::from_json(const RootSystem& rs, const nlohmann::json& j) {
  StructureTable t(rs.size(), ExactReal::from_json(j.at("K_exact")));
  for (const auto& e : j.at("entries")) {
    int a = rs.index_of(e.at("x").get<std::string>());
    int b = rs.index_of(e.at("y").get<std::string>());
    t.set(a, b, ExactReal::from_json(e.at("N_exact")), parse_provenance(e.at("provenance").get<std::string>()),
          e.value("note", std::string()));
  }
  return t;
}

// ---------------------------------------------------------------------------
// CartanWeyl

int exact_rank(std::vector<Vector> rows) {
  int rank = 0;
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    auto pivot = std::find_if(rows.begin() + rank, rows.end(), [c](const Vector& r) { return !r[c].is_zero(); });
    if (pivot == rows.end()) continue;
    std::iter_swap(rows.begin() + rank, pivot);
    const Vector& p = rows[rank];
    ExactReal inv = p[c].inverse();
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c].is_zero()) continue;
      ExactReal f = rows[r][c] * inv;
      for (std::size_t k = c; k < cols; ++k)
        if (!p[k].is_zero()) rows[r][k] -= f * p[k];
    }
    ++rank;
  }
  return rank;
}

CartanWeyl::CartanWeyl(RootSystem rs, StructureTable table) : rs_(std::move(rs)), table_(std::move(table)) {
  if (table_.root_count() != rs_.size()) throw std::invalid_argument("structure table does not match root system");
  if (table_.K() != rs_.K()) throw std::invalid_argument("structure table normalization differs from root system");
  ExactReal invK = rs_.K().inverse();
  for (const auto& r : rs_.roots()) root_over_K_.push_back(scaled(r.coords, invK));

  const int dim = rs_.ambient_dimension();
  std::vector<Vector> chosen;
  for (int i = 0; i < dim && static_cast<int>(chosen.size()) < rs_.rank(); ++i) {
    Vector e(dim);
    e[i] = ExactReal(1);
    Vector v = rs_.project(e);
    auto trial = chosen;
    trial.push_back(v);
    if (exact_rank(trial) > static_cast<int>(chosen.size())) chosen = std::move(trial);
  }
  for (const auto& v : chosen) basis_.push_back(AlgebraElement::cartan(v));
  for (int r = 0; r < rs_.size(); ++r) basis_.push_back(AlgebraElement::root(r));
}

AlgebraElement CartanWeyl::commutator(const AlgebraElement& x, const AlgebraElement& y) const {
  using Kind = Generator::Kind;
  AlgebraElement out;
  for (const auto& [g, cg] : x.terms()) {
    for (const auto& [h, ch] : y.terms()) {
      if (g.kind == Kind::Cartan && h.kind == Kind::Cartan) continue;
      if (g.kind == Kind::Cartan) {
        const ExactReal& a = root_over_K_[h.index][g.index];
        if (!a.is_zero()) out.add(h, cg * ch * a);
        continue;
      }
      if (h.kind == Kind::Cartan) {
        const ExactReal& a = root_over_K_[g.index][h.index];
        if (!a.is_zero()) out.add(g, -(cg * ch * a));
        continue;
      }
      if (rs_.negative(g.index) == h.index) {
        ExactReal c = cg * ch;
        const Vector& a = root_over_K_[g.index];
        for (int i = 0; i < rs_.ambient_dimension(); ++i)
          if (!a[i].is_zero()) out.add(Generator::cartan(i), c * a[i]);
        continue;
      }
      int s = rs_.sum(g.index, h.index);
      if (s < 0) continue;
      out.add(Generator::root(s), cg * ch * table_.at(g.index, h.index));
    }
  }
  return out;
}

AlgebraElement CartanWeyl::dagger(const AlgebraElement& x) const {
  AlgebraElement out;
  for (const auto& [g, c] : x.terms()) {
    if (g.kind == Generator::Kind::Cartan)
      out.add(g, c);
    else
      out.add(Generator::root(rs_.negative(g.index)), c);
  }
  return out;
}

Vector CartanWeyl::coordinates(const AlgebraElement& x) const {
  const int dim = rs_.ambient_dimension();
  Vector v(dim + rs_.size());
  for (const auto& [g, c] : x.terms()) v[g.kind == Generator::Kind::Cartan ? g.index : dim + g.index] = c;
  return v;
}

// ---------------------------------------------------------------------------
// Orbits and Jacobi completion

ConstantOrbits structure_orbits(const RootSystem& rs) {
  const int n = rs.size();
  const int pairs = n * n;
  std::vector<int> parent(pairs, -1), parity(pairs, 1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (rs.sum(a, b) >= 0) parent[a * n + b] = a * n + b;

  // returns root, with N_x = sign * N_root
  std::function<std::pair<int, int>(int)> find = [&](int x) -> std::pair<int, int> {
    if (parent[x] == x) return {x, 1};
    auto [r, s] = find(parent[x]);
    parent[x] = r;
    parity[x] *= s;
    return {r, parity[x]};
  };
  auto unite = [&](int x, int y, int s) {  // N_y = s * N_x
    auto [rx, px] = find(x);
    auto [ry, py] = find(y);
    if (rx == ry) {
      if (px * s != py) throw std::logic_error("structure-constant symmetries are inconsistent");
      return;
    }
    parent[ry] = rx;
    parity[ry] = s * px * py;
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int c = rs.sum(a, b);
      if (c < 0) continue;
      int p = a * n + b;
      unite(p, b * n + a, -1);
      unite(p, rs.negative(a) * n + rs.negative(b), -1);
      unite(p, b * n + rs.negative(c), 1);
    }

  ConstantOrbits o;
  o.root_count = n;
  o.orbit.assign(pairs, -1);
  o.sign.assign(pairs, 0);
  std::map<int, int> id_of_root;
  std::vector<int> rep_parity;
  for (int p = 0; p < pairs; ++p) {
    if (parent[p] < 0) continue;
    auto [r, s] = find(p);
    auto [it, inserted] = id_of_root.try_emplace(r, o.count);
    if (inserted) {
      ++o.count;
      o.representative.emplace_back(p / n, p % n);
      rep_parity.push_back(s);
    }
    o.orbit[p] = it->second;
    o.sign[p] = s * rep_parity[it->second];
  }
  return o;
}

std::vector<JacobiEquation> jacobi_equations(const RootSystem& rs, const ConstantOrbits& orbits) {
  const int n = rs.size();
  const ExactReal invK2 = (rs.K() * rs.K()).inverse();
  std::vector<JacobiEquation> eqs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        JacobiEquation eq;
        eq.triple = {a, b, c};
        int target = -1;
        bool any = false;
        for (auto [x, y, z] : {std::array<int, 3>{a, b, c}, {b, c, a}, {c, a, b}}) {
          if (rs.negative(x) == y) {
            eq.constant += dot(rs.root(x).coords, rs.root(z).coords) * invK2;
            target = z;
            any = true;
            continue;
          }
          int s = rs.sum(x, y);
          if (s < 0) continue;
          int t = rs.sum(s, z);
          if (t < 0) continue;
          target = t;
          any = true;
          int p1 = x * n + y, p2 = s * n + z;
          eq.terms.push_back({orbits.sign[p1] * orbits.sign[p2], orbits.orbit[p1], orbits.orbit[p2]});
        }
        if (!any || target < 0) continue;
        eqs.push_back(std::move(eq));
      }
  return eqs;
}

namespace {

using Values = std::vector<std::optional<ExactReal>>;

struct Reduced {
  int unknown_count = 0;
  int unknown = -1;
  ExactReal A, B, C;  // A u^2 + B u + C
};

Reduced reduce(const JacobiEquation& eq, const Values& v) {
  Reduced r;
  int second = -1;
  for (const auto& t : eq.terms)
    for (int k : {1, 2})
      if (!v[t[k]]) {
        if (r.unknown < 0)
          r.unknown = t[k];
        else if (t[k] != r.unknown)
          second = t[k];
      }
  r.unknown_count = r.unknown < 0 ? 0 : (second < 0 ? 1 : 2);
  if (r.unknown_count == 2) return r;
  r.C = eq.constant;
  for (const auto& t : eq.terms) {
    ExactReal s(t[0]);
    bool u1 = t[1] == r.unknown, u2 = t[2] == r.unknown;
    if (u1 && u2)
      r.A += s;
    else if (u1)
      r.B += s * *v[t[2]];
    else if (u2)
      r.B += s * *v[t[1]];
    else
      r.C += s * *v[t[1]] * *v[t[2]];
  }
  return r;
}

struct Search {
  const ConstantOrbits& orbits;
  const std::vector<JacobiEquation>& eqs;
  std::size_t limit;
  std::vector<OrbitSolution> found;
  int first_failure = -1;

  // index of a violated equation, or -1
  int propagate(Values& v) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < eqs.size(); ++i) {
        Reduced r = reduce(eqs[i], v);
        if (r.unknown_count == 0) {
          if (!r.C.is_zero()) return static_cast<int>(i);
        } else if (r.unknown_count == 1 && r.A.is_zero()) {
          if (r.B.is_zero()) {
            if (!r.C.is_zero()) return static_cast<int>(i);
            continue;
          }
          ExactReal u = -r.C / r.B;
          if (u.is_zero()) return static_cast<int>(i);
          v[r.unknown] = u;
          changed = true;
        }
      }
    }
    return -1;
  }

  void run(Values v, std::vector<std::pair<int, int>> branches) {
    if (found.size() >= limit) return;
    int bad = propagate(v);
    if (bad >= 0) {
      if (first_failure < 0) first_failure = bad;
      return;
    }
    for (const auto& eq : eqs) {
      Reduced r = reduce(eq, v);
      if (r.unknown_count != 1 || r.A.is_zero()) continue;
      // A u^2 + B u + C = 0
      ExactReal disc = r.B * r.B - ExactReal(4) * r.A * r.C;
      auto q = disc.as_rational();
      if (!q) continue;
      if (*q < 0) return;
      ExactReal root = *q == 0 ? ExactReal() : ExactReal::sqrt_rational(*q);
      ExactReal inv2A = (ExactReal(2) * r.A).inverse();
      for (int sgn : {1, -1}) {
        if (sgn < 0 && root.is_zero()) break;
        ExactReal u = (-r.B + ExactReal(sgn) * root) * inv2A;
        if (u.is_zero()) continue;
        Values next = v;
        next[r.unknown] = u;
        auto nb = branches;
        nb.emplace_back(r.unknown, u.sign());
        run(std::move(next), std::move(nb));
      }
      return;
    }
    std::vector<std::pair<int, int>> free_set;
    for (int o = 0; o < static_cast<int>(v.size()); ++o)
      if (!v[o]) free_set.push_back(orbits.representative[o]);
    if (!free_set.empty())
      throw SolverError(SolverError::Kind::Underdetermined,
                        "structure constants not fixed by the Jacobi identity: " + std::to_string(free_set.size()) +
                            " free orbit(s)",
                        {-1, -1, -1}, free_set);
    OrbitSolution sol;
    for (auto& x : v) sol.values.push_back(*x);
    sol.branches = std::move(branches);
    found.push_back(std::move(sol));
  }
};

std::string pair_name(const RootSystem& rs, int a, int b) {
  return "(" + rs.root(a).label + ", " + rs.root(b).label + ")";
}

}  // namespace

std::vector<OrbitSolution> enumerate_constant_solutions(const RootSystem& rs, const ConstantOrbits& orbits,
                                                        const std::vector<JacobiEquation>& equations,
                                                        const std::map<std::pair<int, int>, ExactReal>& seeds,
                                                        std::size_t limit) {
  const int n = rs.size();
  Values v(orbits.count);
  std::vector<std::pair<int, int>> seeded_by(orbits.count, {-1, -1});
  for (const auto& [ab, value] : seeds) {
    auto [a, b] = ab;
    int p = a * n + b;
    if (orbits.orbit[p] < 0)
      throw std::invalid_argument("seed " + pair_name(rs, a, b) + " does not name a root sum");
    if (value.is_zero()) throw SolverError(SolverError::Kind::Contradiction, "zero seed " + pair_name(rs, a, b));
    int o = orbits.orbit[p];
    ExactReal u = ExactReal(orbits.sign[p]) * value;
    if (v[o] && *v[o] != u) {
      auto [c, d] = seeded_by[o];
      throw SolverError(SolverError::Kind::Contradiction, "seeds " + pair_name(rs, c, d) + " and " +
                                                              pair_name(rs, a, b) +
                                                              " violate the structure-constant symmetries");
    }
    v[o] = u;
    seeded_by[o] = {a, b};
  }
  Search search{orbits, equations, limit, {}, -1};
  search.run(std::move(v), {});
  if (search.found.empty()) {
    std::array<int, 3> tri{-1, -1, -1};
    std::string where;
    if (search.first_failure >= 0) {
      tri = equations[search.first_failure].triple;
      where = " on triple (" + rs.root(tri[0]).label + ", " + rs.root(tri[1]).label + ", " + rs.root(tri[2]).label +
              ")";
    }
    throw SolverError(SolverError::Kind::Contradiction, "Jacobi identity violated" + where, tri);
  }
  return std::move(search.found);
}

StructureTable table_from_solution(const RootSystem& rs, const ConstantOrbits& orbits, const OrbitSolution& sol,
                                   const StructureTable& origin) {
  const int n = rs.size();
  std::vector<bool> touched(orbits.count, false);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (origin.has(a, b) && orbits.orbit[a * n + b] >= 0) touched[orbits.orbit[a * n + b]] = true;
  StructureTable t(n, rs.K());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int p = a * n + b;
      if (orbits.orbit[p] < 0) continue;
      ExactReal value = ExactReal(orbits.sign[p]) * sol.values[orbits.orbit[p]];
      if (origin.has(a, b) && origin.at(a, b) == value)
        t.set(a, b, value, origin.provenance(a, b), origin.note(a, b));
      else
        t.set(a, b, value, touched[orbits.orbit[p]] ? Provenance::Symmetry : Provenance::JacobiSolved,
              origin.has(a, b) ? "replaces listed value " + origin.at(a, b).str() : std::string());
    }
  return t;
}

StructureTable solve_missing_constants(const RootSystem& rs, const StructureTable& partial) {
  ConstantOrbits orbits = structure_orbits(rs);
  auto eqs = jacobi_equations(rs, orbits);
  std::map<std::pair<int, int>, ExactReal> seeds;
  for (int a = 0; a < rs.size(); ++a)
    for (int b = 0; b < rs.size(); ++b)
      if (partial.has(a, b)) seeds.emplace(std::make_pair(a, b), partial.at(a, b));
  auto sols = enumerate_constant_solutions(rs, orbits, eqs, seeds, 2);
  if (sols.size() > 1) {
    std::vector<std::pair<int, int>> free_set;
    for (auto [o, s] : sols.front().branches) free_set.push_back(orbits.representative[o]);
    std::string names;
    for (auto [a, b] : free_set) names += " " + pair_name(rs, a, b);
    throw SolverError(SolverError::Kind::Underdetermined,
                      "Jacobi completion leaves residual sign freedom at" + names, {-1, -1, -1}, free_set);
  }
  return table_from_solution(rs, orbits, sols.front(), partial);
}

}  // namespace xlie
