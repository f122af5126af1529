#pragma once

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "xlie/exact_real.hpp"
#include "xlie/root_system.hpp"

namespace xlie {

struct Generator {
  enum class Kind { Cartan, Root };
  Kind kind{Kind::Cartan};
  int index{0};  // ambient coordinate for Cartan, root index for Root

  static Generator cartan(int i) { return {Kind::Cartan, i}; }
  static Generator root(int r) { return {Kind::Root, r}; }
  auto operator<=>(const Generator&) const = default;
};

std::string generator_name(const Generator& g, const RootSystem& rs);

class AlgebraElement {
 public:
  using Terms = std::map<Generator, ExactReal>;

  AlgebraElement() = default;
  /// Cartan element with ambient components v, taken as given.
  static AlgebraElement cartan(const Vector& v);
  static AlgebraElement root(int r, const ExactReal& coefficient = ExactReal(1));

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const Generator& g, const ExactReal& c);
  ExactReal coefficient(const Generator& g) const;
  Vector cartan_part(int dim) const;
  bool is_cartan() const;

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement operator-() const;
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(const ExactReal& s, const AlgebraElement& x);
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const AlgebraElement& a, const AlgebraElement& b) { return !(a == b); }

  std::string str(const RootSystem& rs) const;
  nlohmann::json to_json(const RootSystem& rs) const;

 private:
  Terms terms_;
};

enum class Provenance { Listed, Symmetry, JacobiSolved };
std::string to_string(Provenance p);
Provenance parse_provenance(std::string_view s);

/// N_xy indexed by root pairs; only pairs whose sum is a root carry entries.
class StructureTable {
 public:
  StructureTable() = default;
  StructureTable(int root_count, ExactReal K) : n_(root_count), K_(std::move(K)), values_(n_ * n_), prov_(n_ * n_) {}

  int root_count() const { return n_; }
  const ExactReal& K() const { return K_; }
  bool has(int a, int b) const { return values_[a * n_ + b].has_value(); }
  const ExactReal& at(int a, int b) const;
  Provenance provenance(int a, int b) const { return prov_[a * n_ + b]; }
  const std::string& note(int a, int b) const;
  void set(int a, int b, const ExactReal& v, Provenance p, std::string note = {});
  void erase(int a, int b) { values_[a * n_ + b].reset(); }
  int entry_count() const;

  /// Fixture form: every stored entry with its provenance, in (x, y) index order.
  nlohmann::json to_json(const RootSystem& rs) const;
  static StructureTable from_json(const RootSystem& rs, const nlohmann::json& j);

 private:
  int n_{0};
  ExactReal K_;
  std::vector<std::optional<ExactReal>> values_;
  std::vector<Provenance> prov_;
  std::map<int, std::string> notes_;
};

/// Commutator engine with ᾱ = α / K:
///   [H_v, E_α] = (v·ᾱ) E_α,  [E_α, E_-α] = Σ ᾱ_i H_i,  [E_α, E_β] = N_αβ E_{α+β}.
class CartanWeyl {
 public:
  CartanWeyl(RootSystem rs, StructureTable table);

  const RootSystem& roots() const { return rs_; }
  const StructureTable& table() const { return table_; }
  int dimension() const { return rs_.rank() + rs_.size(); }

  AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b) const;
  /// Cartan element for an ambient vector, projected onto the root span.
  AlgebraElement H(const Vector& v) const { return AlgebraElement::cartan(rs_.project(v)); }
  AlgebraElement E(int root, const ExactReal& c = ExactReal(1)) const { return AlgebraElement::root(root, c); }
  /// H_i† = H_i, E_α† = E_-α; coefficients are real.
  AlgebraElement dagger(const AlgebraElement& x) const;

  /// rank Cartan generators (projected ambient unit vectors) followed by every E_α.
  const std::vector<AlgebraElement>& basis() const { return basis_; }
  /// Coordinates in the ambient Cartan components followed by root coefficients.
  Vector coordinates(const AlgebraElement& x) const;

 private:
  RootSystem rs_;
  StructureTable table_;
  std::vector<Vector> root_over_K_;
  std::vector<AlgebraElement> basis_;
};

// ---------------------------------------------------------------------------
// Structure-constant completion

/// Pairs (a, b) with a+b a root, grouped by N_ba = -N_ab, N_-a,-b = -N_ab and
/// N_ab = N_b,-(a+b). orbit[a*n+b] = -1 when a+b is not a root.
struct ConstantOrbits {
  int root_count{0};
  int count{0};
  std::vector<int> orbit;
  std::vector<int> sign;  // N_ab = sign * value(orbit)
  std::vector<std::pair<int, int>> representative;
};

ConstantOrbits structure_orbits(const RootSystem& rs);

/// Coefficient of E_{a+b+c} in the Jacobi sum on (E_a, E_b, E_c).
struct JacobiEquation {
  std::array<int, 3> triple{};
  ExactReal constant;
  std::vector<std::array<int, 3>> terms;  // sign, orbit, orbit
};

std::vector<JacobiEquation> jacobi_equations(const RootSystem& rs, const ConstantOrbits& orbits);

struct OrbitSolution {
  std::vector<ExactReal> values;
  std::vector<std::pair<int, int>> branches;  // (orbit, sign) chosen where only N^2 was fixed
};

class SolverError : public std::runtime_error {
 public:
  enum class Kind { Contradiction, Underdetermined };
  SolverError(Kind kind, const std::string& what, std::array<int, 3> triple = {-1, -1, -1},
              std::vector<std::pair<int, int>> free_set = {})
      : std::runtime_error(what), kind_(kind), triple_(triple), free_set_(std::move(free_set)) {}
  Kind kind() const { return kind_; }
  const std::array<int, 3>& triple() const { return triple_; }
  const std::vector<std::pair<int, int>>& free_set() const { return free_set_; }

 private:
  Kind kind_;
  std::array<int, 3> triple_;
  std::vector<std::pair<int, int>> free_set_;
};

/// Depth-first enumeration of every orbit assignment consistent with the seeds
/// and all Jacobi equations; + is tried before - at each branch. Stops after limit.
std::vector<OrbitSolution> enumerate_constant_solutions(const RootSystem& rs, const ConstantOrbits& orbits,
                                                        const std::vector<JacobiEquation>& equations,
                                                        const std::map<std::pair<int, int>, ExactReal>& seeds,
                                                        std::size_t limit);

/// Completes a partial table. Throws SolverError on contradiction, or when more
/// than one completion exists.
StructureTable solve_missing_constants(const RootSystem& rs, const StructureTable& partial);

/// Table from an orbit solution; seeded pairs keep provenance from `origin`.
StructureTable table_from_solution(const RootSystem& rs, const ConstantOrbits& orbits, const OrbitSolution& sol,
                                   const StructureTable& origin);

int exact_rank(std::vector<Vector> rows);

}  // namespace xlie
