#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "xlie/so3.hpp"
#include "xlie/tensor_basis.hpp"

namespace xlie {

enum class RelationKind {
  Angular,          // J(i) commutation relations, mutual commutation of different J
  Scalar,           // A(i) against A(j) and every J
  Tensor,           // weight, ladder and cross-slot relations of a tensor operator
  Charge,           // [A(i), X] = charge * X
  Coupled,          // CG-coupled products equal to a basis operator
  PlainCommutator,  // componentwise brackets between tensor operators
  Hermiticity,
  Jacobi,
  Closure,
  Grading,
  Cartan,
  Dimension,
};

std::string to_string(RelationKind kind);

struct Witness {
  std::string component;
  std::string lhs;
  std::string rhs;
  std::string difference;
};

struct RelationResult {
  std::string id;
  RelationKind kind{RelationKind::Angular};
  std::string statement;
  bool pass{true};
  std::size_t checks{0};
  std::optional<Witness> witness;
};

struct InfoEntry {
  std::string id;
  std::string detail;
};

struct VerificationReport {
  AlgebraKind algebra{AlgebraKind::G2};
  std::vector<RelationResult> relations;
  std::vector<InfoEntry> appendix;
  double elapsed_seconds{0};

  std::size_t passed() const;
  std::size_t failed() const;
  bool all_pass() const { return failed() == 0; }
  const RelationResult* find(std::string_view id) const;

  /// Deterministic apart from `elapsed`, which is omitted when include_timing is false.
  nlohmann::json to_json(bool include_timing = true) const;
  std::string to_markdown(bool include_timing = true) const;
  std::string to_text(bool include_timing = true) const;
};

inline constexpr const char* kReportSchemaVersion = "1";
inline constexpr const char* kSuiteVersion = "1.0";

// ---------------------------------------------------------------------------
// Relation data

/// Expected right-hand side as a function of the coupled component, keyed by slot id.
using SlotLabels = std::map<int, int>;

struct CoupledRelationSpec {
  std::string id;
  std::string statement;
  std::string left, right;
  std::map<int, int> targets;  // shared slot -> twice-rank
  CouplingMode mode{CouplingMode::Plain};
  std::function<AlgebraElement(const TensorBasis&, const SlotLabels&)> expected;
};

/// [X_x, Y_y] = c * prod_s (2 x_s) * Z_z over shared slots s with y_s = -x_s,
/// z read off the remaining labels by slot id; all other component pairs give 0.
struct CommutatorFamilySpec {
  std::string id;
  std::string statement;
  std::string left, right, target;
  ExactReal coefficient;
};

std::vector<CoupledRelationSpec> coupled_relation_specs(AlgebraKind kind);
std::vector<CommutatorFamilySpec> commutator_family_specs(AlgebraKind kind);

struct HermiticitySpec {
  std::string op, partner;
  int phase_offset{0};  // X_{-p...} = (-)^{offset + Σp} (partner_{p...})†
};
std::vector<HermiticitySpec> hermiticity_specs(AlgebraKind kind);

// ---------------------------------------------------------------------------
// Checks

std::vector<RelationResult> verify_definitions(const CartanWeyl& cw, const TensorBasis& basis);
std::vector<RelationResult> verify_charges(const CartanWeyl& cw, const TensorBasis& basis);
std::vector<RelationResult> verify_coupled_relations(const CartanWeyl& cw, const TensorBasis& basis);
std::vector<RelationResult> verify_plain_commutators(const CartanWeyl& cw, const TensorBasis& basis);
std::vector<RelationResult> verify_hermiticity(const CartanWeyl& cw, const TensorBasis& basis);

/// Maximal set of basis components, in basis order, that commute with each
/// other, are linearly independent, and act by a scalar on every component.
std::vector<ComponentRef> identify_cartan(const CartanWeyl& cw, const TensorBasis& basis);
std::vector<ComponentRef> expected_cartan(AlgebraKind kind);
RelationResult verify_cartan(const CartanWeyl& cw, const TensorBasis& basis);

std::vector<RelationResult> verify_dimension(const CartanWeyl& cw, const TensorBasis& basis);

/// Jacobi identity over all unordered triples of distinct basis generators,
/// split over `jobs` threads. stop_at_first ends the scan at the first violation.
RelationResult verify_jacobi(const CartanWeyl& cw, unsigned jobs, bool stop_at_first = false);

/// Closure of generator brackets and grading ([E_a, E_b] = 0 unless a+b is a root or zero).
std::vector<RelationResult> verify_closure(const CartanWeyl& cw);

/// Grading-forced vanishing for unlisted operator pairs, plus computed
/// brackets that are recorded rather than asserted.
std::vector<RelationResult> verify_unlisted_pairs(const CartanWeyl& cw, const TensorBasis& basis,
                                                  std::vector<InfoEntry>* appendix);

/// Diagnostic values for failing coupled relations and commutator families.
std::vector<InfoEntry> diagnostics(const CartanWeyl& cw, const TensorBasis& basis, const VerificationReport& report);

struct VerifyOptions {
  unsigned jobs{1};
  bool jacobi{true};
  bool appendix{true};
};

VerificationReport verify_basis(const CartanWeyl& cw, const TensorBasis& basis, const VerifyOptions& options);

}  // namespace xlie
