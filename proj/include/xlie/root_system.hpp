#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "xlie/exact_real.hpp"

namespace xlie {

enum class AlgebraKind { G2, F4, E6 };

std::string to_string(AlgebraKind kind);
/// Accepts "g2", "G2", ... Throws std::invalid_argument otherwise.
AlgebraKind parse_algebra(std::string_view name);

using Vector = std::vector<ExactReal>;

ExactReal dot(const Vector& a, const Vector& b);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a);
Vector scaled(const Vector& v, const ExactReal& s);
bool is_zero(const Vector& v);

struct Root {
  Vector coords;
  std::string family;
  std::string label;
};

/// Returns K with sum_r r r^T = K^2 P for the orthogonal projector P onto the
/// root span. Throws std::invalid_argument when no such K exists.
ExactReal derive_normalization(const std::vector<Root>& roots);

class RootSystem {
 public:
  static RootSystem build(AlgebraKind kind);

  AlgebraKind algebra() const { return kind_; }
  int ambient_dimension() const { return dim_; }
  int rank() const { return rank_; }
  int size() const { return static_cast<int>(roots_.size()); }
  const std::vector<Root>& roots() const { return roots_; }
  const Root& root(int index) const { return roots_.at(index); }

  /// Normalization applied by the commutator engine.
  const ExactReal& K() const { return K_; }
  /// Value produced by derive_normalization on this root set.
  const ExactReal& derived_K() const { return derived_K_; }
  /// Same roots, different normalization.
  RootSystem with_normalization(const ExactReal& K) const;

  std::optional<int> find(const Vector& coords) const;
  int negative(int index) const { return negative_[index]; }
  /// Index of root a+b, or -1 when a+b is zero or not a root.
  int sum(int a, int b) const { return sum_[a * size() + b]; }
  int index_of(std::string_view label) const;
  const Root& resolve_family_label(std::string_view label) const;

  /// "B4", "A5" or empty.
  const std::string& subalgebra_tag(int index) const { return tags_[index]; }

  /// Orthogonal projector onto the root span, row-major dim x dim.
  const std::vector<Vector>& projector() const { return projector_; }
  Vector project(const Vector& v) const;

  nlohmann::json to_json() const;

 private:
  RootSystem() = default;
  void add(Vector coords, std::string family, std::string label, std::string tag = {});
  void finalize();
  void alias(const std::string& name, int index);

  AlgebraKind kind_{AlgebraKind::G2};
  int dim_{0};
  int rank_{0};
  std::vector<Root> roots_;
  std::vector<std::string> tags_;
  std::vector<int> negative_;
  std::vector<int> sum_;
  std::unordered_map<std::string, int> by_key_;
  std::unordered_map<std::string, int> by_label_;
  std::vector<Vector> projector_;
  ExactReal K_;
  ExactReal derived_K_;
};

std::string coordinate_key(const Vector& v);

}  // namespace xlie
