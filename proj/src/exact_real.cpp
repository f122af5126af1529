#include "xlie/exact_real.hpp"

#include <cctype>
#include <cmath>
#include <numeric>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace xlie {

namespace {

using Radicand = ExactReal::Radicand;

Radicand to_radicand(const mpz_class& n) {
  if (n <= 0 || !n.fits_ulong_p()) throw std::overflow_error("radicand out of range: " + n.get_str());
  return n.get_ui();
}

Radicand checked_product(Radicand a, Radicand b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  if (p > std::numeric_limits<Radicand>::max()) throw std::overflow_error("radicand product overflows");
  return static_cast<Radicand>(p);
}

Radicand smallest_prime_factor(Radicand d) {
  if (d % 2 == 0) return 2;
  for (Radicand p = 3; p * p <= d; p += 2)
    if (d % p == 0) return p;
  return d;
}

// floor(sqrt(d) * 2^bits)
mpz_class scaled_isqrt(Radicand d, unsigned bits) {
  mpz_class n(static_cast<unsigned long>(d));
  n <<= 2 * bits;
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

}  // namespace

Radicand squarefree_part(const mpz_class& n, mpz_class& square_root_of_rest) {
  if (n <= 0) throw std::domain_error("squarefree_part of non-positive integer");
  mpz_class rest = n;
  mpz_class core = 1;
  square_root_of_rest = 1;
  for (mpz_class p = 2; p * p <= rest; ++p) {
    int mult = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
      rest /= p;
      ++mult;
    }
    for (int i = 0; i + 1 < mult; i += 2) square_root_of_rest *= p;
    if (mult % 2 == 1) core *= p;
  }
  core *= rest;
  return to_radicand(core);
}

bool is_squarefree(Radicand d) {
  if (d == 0) return false;
  mpz_class root;
  return squarefree_part(mpz_class(static_cast<unsigned long>(d)), root) == d;
}

ExactReal::ExactReal(long value) {
  if (value != 0) terms_.emplace(1, mpq_class(value));
}

ExactReal::ExactReal(const mpq_class& value) {
  if (value != 0) {
    mpq_class v = value;
    v.canonicalize();
    terms_.emplace(1, v);
  }
}

ExactReal ExactReal::rational(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return ExactReal(q);
}

ExactReal ExactReal::radical(const mpq_class& q, Radicand d) {
  if (d == 0) return {};
  mpz_class root;
  Radicand core = squarefree_part(mpz_class(static_cast<unsigned long>(d)), root);
  ExactReal out;
  out.add_term(core, q * root);
  return out;
}

ExactReal ExactReal::sqrt_rational(const mpq_class& q) {
  if (q <= 0) throw std::domain_error("sqrt_rational requires a positive rational");
  mpq_class c = q;
  c.canonicalize();
  // sqrt(p/r) = sqrt(p*r) / r
  mpz_class pr = c.get_num() * c.get_den();
  mpz_class root;
  Radicand core = squarefree_part(pr, root);
  ExactReal out;
  out.add_term(core, mpq_class(root, c.get_den()));
  return out;
}

void ExactReal::add_term(Radicand d, const mpq_class& q) {
  if (q == 0) return;
  auto [it, inserted] = terms_.try_emplace(d, q);
  if (!inserted) {
    it->second += q;
    if (it->second == 0) terms_.erase(it);
  } else {
    it->second.canonicalize();
  }
}

bool ExactReal::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

std::optional<mpq_class> ExactReal::as_rational() const {
  if (terms_.empty()) return mpq_class(0);
  if (!is_rational()) return std::nullopt;
  return terms_.begin()->second;
}

int ExactReal::sign() const {
  if (terms_.empty()) return 0;
  if (terms_.size() == 1) return sgn(terms_.begin()->second);
  for (unsigned bits = 16;; bits *= 2) {
    mpq_class lo = 0, hi = 0;
    mpq_class scale(mpz_class(1) << bits, 1);
    for (const auto& [d, q] : terms_) {
      mpq_class s_lo, s_hi;
      if (d == 1) {
        s_lo = s_hi = 1;
      } else {
        mpz_class r = scaled_isqrt(d, bits);
        s_lo = mpq_class(r) / scale;
        s_hi = mpq_class(r + 1) / scale;
      }
      if (q > 0) {
        lo += q * s_lo;
        hi += q * s_hi;
      } else {
        lo += q * s_hi;
        hi += q * s_lo;
      }
    }
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    if (bits > (1u << 20)) throw std::runtime_error("sign undecidable");
  }
}

double ExactReal::to_double() const {
  double v = 0;
  for (const auto& [d, q] : terms_) v += q.get_d() * std::sqrt(static_cast<double>(d));
  return v;
}

ExactReal ExactReal::operator-() const {
  ExactReal out = *this;
  for (auto& [d, q] : out.terms_) q = -q;
  return out;
}

ExactReal& ExactReal::operator+=(const ExactReal& other) {
  for (const auto& [d, q] : other.terms_) add_term(d, q);
  return *this;
}

ExactReal& ExactReal::operator-=(const ExactReal& other) {
  for (const auto& [d, q] : other.terms_) add_term(d, -q);
  return *this;
}

ExactReal operator*(const ExactReal& a, const ExactReal& b) {
  ExactReal out;
  for (const auto& [da, qa] : a.terms_) {
    for (const auto& [db, qb] : b.terms_) {
      Radicand g = std::gcd(da, db);
      Radicand d = checked_product(da / g, db / g);
      out.add_term(d, qa * qb * static_cast<unsigned long>(g));
    }
  }
  return out;
}

ExactReal& ExactReal::operator*=(const ExactReal& other) {
  *this = *this * other;
  return *this;
}

ExactReal& ExactReal::operator/=(const ExactReal& other) {
  *this = *this * other.inverse();
  return *this;
}

ExactReal ExactReal::inverse() const {
  if (terms_.empty()) throw std::domain_error("inverse of zero");
  if (terms_.size() == 1) {
    const auto& [d, q] = *terms_.begin();
    ExactReal out;
    out.add_term(d, 1 / (q * static_cast<unsigned long>(d)));
    return out;
  }
  // Multiply by conjugates prime by prime until the denominator is rational.
  ExactReal numerator(1);
  ExactReal denominator = *this;
  while (!denominator.is_rational()) {
    Radicand p = 0;
    for (const auto& [d, q] : denominator.terms_) {
      if (d != 1) {
        p = smallest_prime_factor(d);
        break;
      }
    }
    ExactReal conj = denominator;
    for (auto& [d, q] : conj.terms_)
      if (d % p == 0) q = -q;
    numerator *= conj;
    denominator *= conj;
  }
  return numerator * ExactReal(mpq_class(1 / *denominator.as_rational()));
}

bool ExactReal::structural_less(const ExactReal& a, const ExactReal& b) {
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first;
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  return ia == a.terms_.end() && ib != b.terms_.end();
}

std::string ExactReal::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [d, q] : terms_) {
    mpq_class mag = abs(q);
    if (first) {
      if (q < 0) out += "-";
    } else {
      out += q < 0 ? " - " : " + ";
    }
    out += mag.get_str();
    if (d != 1) out += "*sqrt(" + std::to_string(d) + ")";
    first = false;
  }
  return out;
}

ExactReal ExactReal::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty number");
  ExactReal out;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("cannot parse '" + std::string(text) + "': " + why);
  };
  auto read_int = [&]() {
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) fail("expected digits");
    return s.substr(start, i - start);
  };
  auto read_sqrt = [&]() -> Radicand {
    if (s.compare(i, 5, "sqrt(") != 0) fail("expected sqrt(");
    i += 5;
    mpz_class d(read_int());
    if (i >= s.size() || s[i] != ')') fail("expected )");
    ++i;
    return to_radicand(d);
  };
  bool first = true;
  while (i < s.size()) {
    int sgn_ = 1;
    if (s[i] == '+' || s[i] == '-') {
      sgn_ = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      fail("expected + or -");
    }
    mpq_class q = 1;
    Radicand d = 1;
    if (i < s.size() && s[i] == 's') {
      d = read_sqrt();
    } else {
      std::string num = read_int();
      std::string den = "1";
      if (i < s.size() && s[i] == '/') {
        ++i;
        den = read_int();
      }
      mpz_class dz(den);
      if (dz == 0) fail("zero denominator");
      q = mpq_class(mpz_class(num), dz);
      q.canonicalize();
      if (i < s.size() && s[i] == '*') {
        ++i;
        d = read_sqrt();
      }
    }
    out += radical(sgn_ * q, d);
    first = false;
  }
  return out;
}

nlohmann::json ExactReal::to_json() const {
  auto j = nlohmann::json::array();
  auto int_json = [](const mpz_class& z) -> nlohmann::json {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
  };
  for (const auto& [d, q] : terms_)
    j.push_back({int_json(q.get_num()), int_json(q.get_den()), d});
  return j;
}

ExactReal ExactReal::from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("exact number JSON must be an array");
  auto to_mpz = [](const nlohmann::json& v) {
    if (v.is_number_integer()) return mpz_class(std::to_string(v.get<long long>()));
    if (v.is_string()) return mpz_class(v.get<std::string>());
    throw std::invalid_argument("integer expected in exact number JSON");
  };
  ExactReal out;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3) throw std::invalid_argument("term must be [num, den, radicand]");
    mpq_class q(to_mpz(t[0]), to_mpz(t[1]));
    q.canonicalize();
    out += radical(q, t[2].get<Radicand>());
  }
  return out;
}

ExactReal pow_minus_one(long exponent) { return (exponent % 2 == 0) ? ExactReal(1) : ExactReal(-1); }

std::ostream& operator<<(std::ostream& os, const ExactReal& x) { return os << x.str(); }

}  // namespace xlie
