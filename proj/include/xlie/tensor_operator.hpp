#pragma once

#include <map>
#include <string>
#include <vector>

#include "xlie/cartan_weyl.hpp"

namespace xlie {

/// Component tuple; every entry is a twice-value projection.
using ComponentLabel = std::vector<int>;

/// "1/2", "-3/2", "1", "0" for a twice-value.
std::string half_integer(int twice);
std::string label_text(const ComponentLabel& label);

/// All labels for the given twice-ranks, each slot running r, r-1, ..., -r.
std::vector<ComponentLabel> component_labels(const std::vector<int>& ranks2);

/// Labeled grid of algebra elements: one angular-momentum slot per rank,
/// plus optional additive scalar charges.
struct TensorOperator {
  std::string name;
  std::vector<int> slots;
  std::vector<int> ranks2;
  std::map<int, int> charges;
  std::map<ComponentLabel, AlgebraElement> components;

  int slot_position(int slot) const;
  const AlgebraElement& at(const ComponentLabel& label) const;
  std::size_t expected_component_count() const;
};

}  // namespace xlie
