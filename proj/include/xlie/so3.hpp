#pragma once

#include <map>
#include <stdexcept>
#include <utility>

#include "xlie/cartan_weyl.hpp"
#include "xlie/tensor_operator.hpp"

namespace xlie {

/// C_±(r, p) = ∓ sqrt(½ (r ∓ p)(r ± p + 1)), arguments as twice-values.
/// Throws std::out_of_range when |p| > r or parities differ.
ExactReal ladder_coeff(int rank2, int proj2, int sign);

/// <j1 m1 j2 m2 | j m> with Condon-Shortley phase; twice-value arguments.
/// Selection-rule violations give exact zero.
ExactReal clebsch_gordan(int j1, int m1, int j2, int m2, int j, int m);

/// Element of the degree <= 2 part of the enveloping algebra, split as
/// symmetric products plus a Lie-algebra part: xy = x⊙y + ½[x, y].
struct EnvelopingElement {
  /// key (g, h) with g <= h stands for ½(gh + hg).
  std::map<std::pair<Generator, Generator>, ExactReal> symmetric;
  AlgebraElement linear;

  bool is_zero() const { return symmetric.empty() && linear.is_zero(); }
  EnvelopingElement& operator+=(const EnvelopingElement& o);
  EnvelopingElement& operator-=(const EnvelopingElement& o);
  friend EnvelopingElement operator*(const ExactReal& s, const EnvelopingElement& x);
  friend bool operator==(const EnvelopingElement& a, const EnvelopingElement& b) {
    return a.symmetric == b.symmetric && a.linear == b.linear;
  }
  std::string str(const RootSystem& rs) const;
};

/// Ordered product xy.
EnvelopingElement ordered_product(const CartanWeyl& cw, const AlgebraElement& x, const AlgebraElement& y);

enum class CouplingMode {
  Plain,           // (X Y)
  Anticommutator,  // {X Y} = (X Y) + (Y X)
  Commutator,      // [X Y] = (X Y) - (Y X)
  Bracket,         // Σ CG [X_x, Y_y]; diagnostic only
};

std::string to_string(CouplingMode m);

struct CouplingSpec {
  const TensorOperator* left{nullptr};
  const TensorOperator* right{nullptr};
  std::map<int, int> target_ranks2;  // shared slot -> coupled twice-rank
  CouplingMode mode{CouplingMode::Plain};
};

/// Coupled tensor. Slots: left's slots, then right's unshared slots.
/// (Y X) terms use CG coefficients taken in the order Y, X.
struct CoupledTensor {
  std::vector<int> slots;
  std::vector<int> ranks2;
  std::map<int, int> charges;
  std::map<ComponentLabel, EnvelopingElement> components;

  const EnvelopingElement& at(const ComponentLabel& label) const;
};

class CouplingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

CoupledTensor couple(const CartanWeyl& cw, const CouplingSpec& spec);

}  // namespace xlie
