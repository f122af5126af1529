#pragma once

#include <string>
#include <vector>

#include "xlie/cartan_weyl.hpp"
#include "xlie/tensor_basis.hpp"

namespace xlie {

/// One listed constant N_xy. `known` is false for an entry printed without a
/// value; its N is then left to the Jacobi completion.
struct PrintedConstant {
  std::string x, y;
  ExactReal value;
  bool known{true};
};

/// Explicitly listed constants: the G2 values (needs labels), the F4 and E6
/// G_xy / S_xy tables (already divided by K).
std::vector<PrintedConstant> printed_constants(const RootSystem& rs, const G2Labels* labels = nullptr);

/// Closed-form constants of the embedded B4 (F4) or A5 (E6); empty for G2.
std::vector<PrintedConstant> subalgebra_constants(const RootSystem& rs);

struct SeedConstant {
  int x{0}, y{0};
  ExactReal value;
  std::string source;
};

/// N_jx forced by [J_±(s), X] = C_± X' for single-generator components.
/// Entries that would require N = 0 or a mismatched target come back in `problems`.
std::vector<SeedConstant> ladder_constants(const RootSystem& rs, const std::vector<TensorOperator>& ops,
                                           std::vector<std::string>* problems = nullptr);

struct RejectedConstant {
  std::string x, y;
  std::string listed;
  std::string reason;
};

struct ConstantsReport {
  StructureTable table;
  std::vector<SeedConstant> seeds;
  std::vector<RejectedConstant> rejected;
  std::vector<std::string> resolved;  // listed entries without a value, with the value found
  std::size_t completions{0};
  std::size_t chosen{0};
  std::size_t listed_total{0};
  std::size_t listed_agree{0};

  /// Fixture form: the table plus the bookkeeping above.
  nlohmann::json to_json(const RootSystem& rs) const;
};

/// Seeds -> Jacobi completions -> pick the completion agreeing with the most
/// listed constants (first in solver order on ties) -> table with provenance.
/// G2 seeds are the listed values; the completion index comes from `labels`.
ConstantsReport load_structure_constants(const RootSystem& rs, const std::vector<TensorOperator>& ops,
                                         const G2Labels* labels = nullptr);

}  // namespace xlie
