#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xlie/structure_data.hpp"
#include "xlie/tensor_basis.hpp"
#include "xlie/verifier.hpp"

namespace xlie {

/// Everything built for one algebra: roots -> (G2 labels) -> constants -> basis.
struct AlgebraModel {
  AlgebraKind kind{AlgebraKind::G2};
  RootSystem roots;
  std::optional<G2Labels> labels;
  ConstantsReport constants;
  CartanWeyl cw;
  TensorBasis basis;
};

/// Full pipeline. G2 runs the label search; throws std::runtime_error if it finds nothing.
AlgebraModel build_model(AlgebraKind kind);

struct FlipOutcome {
  std::string x, y;  // representative pair of the flipped orbit
  bool detected{false};
  std::string caught_by;  // first relation that passed before and fails after
};

struct SensitivityResult {
  AlgebraKind algebra{AlgebraKind::G2};
  std::size_t listed_orbits{0};
  std::vector<FlipOutcome> flips;
  bool all_detected() const;
};

/// Flips the sign of randomly drawn listed-constant orbits (with replacement
/// when there are fewer orbits than flips) and reruns the suite on each.
SensitivityResult sensitivity_check(const AlgebraModel& model, std::size_t flips, std::uint64_t seed, unsigned jobs);

}  // namespace xlie
