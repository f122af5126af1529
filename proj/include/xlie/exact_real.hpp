#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <json.hpp>

namespace xlie {

/// Element of Q adjoined square roots: a finite sum of q * sqrt(d) over
/// distinct square-free d >= 1. The term map is canonical, so equality is
/// map identity.
class ExactReal {
 public:
  using Radicand = std::uint64_t;
  using Terms = std::map<Radicand, mpq_class>;

  ExactReal() = default;
  ExactReal(long value);  // NOLINT(google-explicit-constructor)
  ExactReal(const mpq_class& value);  // NOLINT(google-explicit-constructor)

  /// q * sqrt(d) for arbitrary positive d; square factors of d are pulled out.
  static ExactReal radical(const mpq_class& q, Radicand d);
  static ExactReal rational(long num, long den);

  /// The unique single-term r with r*r = q. Throws std::domain_error for q <= 0.
  static ExactReal sqrt_rational(const mpq_class& q);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  std::optional<mpq_class> as_rational() const;

  /// -1, 0 or +1, decided with exact rational interval bounds.
  int sign() const;
  double to_double() const;

  ExactReal inverse() const;

  ExactReal operator-() const;
  ExactReal& operator+=(const ExactReal& other);
  ExactReal& operator-=(const ExactReal& other);
  ExactReal& operator*=(const ExactReal& other);
  ExactReal& operator/=(const ExactReal& other);

  friend ExactReal operator+(ExactReal a, const ExactReal& b) { return a += b; }
  friend ExactReal operator-(ExactReal a, const ExactReal& b) { return a -= b; }
  friend ExactReal operator*(const ExactReal& a, const ExactReal& b);
  friend ExactReal operator/(ExactReal a, const ExactReal& b) { return a /= b; }

  friend bool operator==(const ExactReal& a, const ExactReal& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const ExactReal& a, const ExactReal& b) { return !(a == b); }

  /// Numeric order.
  friend bool operator<(const ExactReal& a, const ExactReal& b) { return (a - b).sign() < 0; }

  /// Structural order on term maps; cheap, used for container keys.
  static bool structural_less(const ExactReal& a, const ExactReal& b);

  std::string str() const;
  static ExactReal parse(std::string_view text);

  nlohmann::json to_json() const;
  static ExactReal from_json(const nlohmann::json& j);

 private:
  void add_term(Radicand d, const mpq_class& q);

  Terms terms_;
};

ExactReal pow_minus_one(long exponent);

/// Radicand helpers; throw std::overflow_error past 64 bits.
ExactReal::Radicand squarefree_part(const mpz_class& n, mpz_class& square_root_of_rest);
bool is_squarefree(ExactReal::Radicand d);

std::ostream& operator<<(std::ostream& os, const ExactReal& x);

}  // namespace xlie
