#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xlie/cartan_weyl.hpp"
#include "xlie/tensor_operator.hpp"

namespace xlie {

/// Numbering of the G2 positive roots behind E_1..E_6, together with the
/// Cartan directions carried by H_1 and H_2.
struct G2Labels {
  std::array<int, 6> positive{};  // root index of E_k at position k-1
  Vector h1, h2;                  // unit ambient vectors
  ExactReal j1_scale, j2_scale;   // J_0(1) = j1_scale H_1, J_±1(1) = ∓ j1_scale E_±3; same for J(2)
  int extra_partner{0};           // y in the second listed constant N_6y = sqrt(1/6); negative for E_-y
  int solution_index{0};          // position of the chosen completion in solver order
  std::string reading;            // "literal" or "swapped" J scales

  /// Root index for E_k, k in ±1..±6.
  int root_of(int k, const RootSystem& rs) const;

  nlohmann::json to_json(const RootSystem& rs) const;
  static G2Labels from_json(const RootSystem& rs, const nlohmann::json& j);
};

struct ComponentRef {
  std::string op;
  ComponentLabel label;

  std::string str() const;
  auto operator<=>(const ComponentRef&) const = default;
};

struct TensorBasis {
  AlgebraKind algebra{AlgebraKind::G2};
  std::vector<TensorOperator> operators;
  /// Operators that are linear combinations of the others (E6: A(5)).
  std::vector<std::string> dependent;

  const TensorOperator& op(std::string_view name) const;
  const TensorOperator* find(std::string_view name) const;
  bool is_dependent(std::string_view name) const;
  /// Components of the independent operators, in operator order.
  std::vector<ComponentRef> components() const;
  const AlgebraElement& element(const ComponentRef& ref) const { return op(ref.op).at(ref.label); }
  std::size_t component_count() const { return components().size(); }
};

/// Order of the algebra: 14, 52 or 78.
int algebra_order(AlgebraKind kind);

/// Operator tables for the given algebra as elements over rs. G2 needs a
/// label assignment; F4 and E6 ignore it. Tables do not depend on structure
/// constants.
std::vector<TensorOperator> operator_tables(const RootSystem& rs, const G2Labels* labels = nullptr);

/// Throws std::runtime_error on a missing component, a zero component, or a
/// count different from the algebra order.
TensorBasis assemble(const RootSystem& rs, std::vector<TensorOperator> ops);

/// Componentwise X†, named "X†".
TensorOperator hermitian_conjugate(const CartanWeyl& cw, const TensorOperator& op);

/// Canonical names for the E6 V/W operators: "V(1234)" and aliases "V(24)".
std::string canonical_operator_name(AlgebraKind kind, std::string_view name);

struct LabelSearchResult {
  std::optional<G2Labels> chosen;
  int literal_valid{0};
  int swapped_valid{0};
  int candidates_examined{0};
};

/// Exhaustive search for G2 numberings, Cartan directions, the mislabeled
/// second constant and residual signs such that the defining relations, the
/// U U coupling relations and the Hermiticity phase all hold.
LabelSearchResult solve_labels(const RootSystem& rs);

nlohmann::json basis_to_json(const CartanWeyl& cw, const TensorBasis& basis);
std::string basis_to_markdown(const CartanWeyl& cw, const TensorBasis& basis);
std::string basis_to_text(const CartanWeyl& cw, const TensorBasis& basis);

}  // namespace xlie
