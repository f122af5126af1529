#include "xlie/so3.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace xlie {

// ---------------------------------------------------------------------------
// Tensor operator helpers

std::string half_integer(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

std::string label_text(const ComponentLabel& label) {
  std::string s = "(";
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (i) s += ", ";
    s += half_integer(label[i]);
  }
  return s + ")";
}

std::vector<ComponentLabel> component_labels(const std::vector<int>& ranks2) {
  std::vector<ComponentLabel> out{{}};
  for (int r : ranks2) {
    std::vector<ComponentLabel> next;
    for (const auto& prefix : out)
      for (int p = r; p >= -r; p -= 2) {
        auto l = prefix;
        l.push_back(p);
        next.push_back(std::move(l));
      }
    out = std::move(next);
  }
  return out;
}

int TensorOperator::slot_position(int slot) const {
  auto it = std::find(slots.begin(), slots.end(), slot);
  return it == slots.end() ? -1 : static_cast<int>(it - slots.begin());
}

const AlgebraElement& TensorOperator::at(const ComponentLabel& label) const {
  auto it = components.find(label);
  if (it == components.end()) throw std::out_of_range(name + " has no component " + label_text(label));
  return it->second;
}

std::size_t TensorOperator::expected_component_count() const {
  std::size_t n = 1;
  for (int r : ranks2) n *= static_cast<std::size_t>(r + 1);
  return n;
}

// ---------------------------------------------------------------------------
// Ladder and Clebsch-Gordan coefficients

ExactReal ladder_coeff(int rank2, int proj2, int sign) {
  if (rank2 < 0 || std::abs(proj2) > rank2 || (rank2 - proj2) % 2 != 0)
    throw std::out_of_range("projection " + half_integer(proj2) + " outside rank " + half_integer(rank2));
  if (sign != 1 && sign != -1) throw std::invalid_argument("ladder sign must be +1 or -1");
  // ½ (r ∓ p)(r ± p + 1) = (R ∓ P)(R ± P + 2) / 8 with R = 2r, P = 2p
  long a = rank2 - sign * proj2;
  long b = rank2 + sign * proj2 + 2;
  if (a == 0) return {};
  return ExactReal(-sign) * ExactReal::sqrt_rational(mpq_class(a * b, 8));
}

namespace {

mpz_class factorial(long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

}  // namespace

ExactReal clebsch_gordan(int j1, int m1, int j2, int m2, int j, int m) {
  if (m1 + m2 != m) return {};
  if (j1 < 0 || j2 < 0 || j < 0) return {};
  if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(m) > j) return {};
  if ((j1 - m1) % 2 || (j2 - m2) % 2 || (j - m) % 2) return {};
  if ((j1 + j2 + j) % 2) return {};
  if (j < std::abs(j1 - j2) || j > j1 + j2) return {};

  auto h = [](int twice) { return static_cast<long>(twice / 2); };  // exact: arguments are even here
  mpq_class pre(static_cast<unsigned long>(j + 1));
  pre *= factorial(h(j + j1 - j2)) * factorial(h(j - j1 + j2)) * factorial(h(j1 + j2 - j));
  pre /= factorial(h(j1 + j2 + j) + 1);
  pre *= factorial(h(j + m)) * factorial(h(j - m)) * factorial(h(j1 - m1)) * factorial(h(j1 + m1)) *
         factorial(h(j2 - m2)) * factorial(h(j2 + m2));
  pre.canonicalize();

  mpq_class sum = 0;
  for (long k = 0;; ++k) {
    long a[6] = {k,
                 h(j1 + j2 - j) - k,
                 h(j1 - m1) - k,
                 h(j2 + m2) - k,
                 h(j - j2 + m1) + k,
                 h(j - j1 - m2) + k};
    if (a[1] < 0 || a[2] < 0 || a[3] < 0) break;
    if (a[4] < 0 || a[5] < 0) continue;
    mpz_class d = 1;
    for (long x : a) d *= factorial(x);
    mpq_class term(1, 1);
    term /= d;
    sum += (k % 2 == 0) ? term : mpq_class(-term);
  }
  if (sum == 0) return {};
  return ExactReal::sqrt_rational(pre) * ExactReal(sum);
}

// ---------------------------------------------------------------------------
// Enveloping-algebra products

EnvelopingElement& EnvelopingElement::operator+=(const EnvelopingElement& o) {
  for (const auto& [k, c] : o.symmetric) {
    auto [it, inserted] = symmetric.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) symmetric.erase(it);
    }
  }
  linear += o.linear;
  return *this;
}

EnvelopingElement& EnvelopingElement::operator-=(const EnvelopingElement& o) {
  return *this += ExactReal(-1) * o;
}

EnvelopingElement operator*(const ExactReal& s, const EnvelopingElement& x) {
  EnvelopingElement out;
  if (s.is_zero()) return out;
  for (const auto& [k, c] : x.symmetric) out.symmetric.emplace(k, s * c);
  out.linear = s * x.linear;
  return out;
}

std::string EnvelopingElement::str(const RootSystem& rs) const {
  std::string out = linear.str(rs);
  if (symmetric.empty()) return out;
  out += " + sym{";
  bool first = true;
  for (const auto& [k, c] : symmetric) {
    if (!first) out += ", ";
    out += c.str() + "*" + generator_name(k.first, rs) + "." + generator_name(k.second, rs);
    first = false;
  }
  return out + "}";
}

EnvelopingElement ordered_product(const CartanWeyl& cw, const AlgebraElement& x, const AlgebraElement& y) {
  EnvelopingElement out;
  for (const auto& [g, cg] : x.terms())
    for (const auto& [h, ch] : y.terms()) {
      auto key = g <= h ? std::make_pair(g, h) : std::make_pair(h, g);
      ExactReal c = cg * ch;
      auto [it, inserted] = out.symmetric.try_emplace(key, c);
      if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) out.symmetric.erase(it);
      }
    }
  out.linear = ExactReal::rational(1, 2) * cw.commutator(x, y);
  return out;
}

std::string to_string(CouplingMode m) {
  switch (m) {
    case CouplingMode::Plain: return "plain";
    case CouplingMode::Anticommutator: return "anticommutator";
    case CouplingMode::Commutator: return "commutator";
    case CouplingMode::Bracket: return "bracket";
  }
  return "?";
}

const EnvelopingElement& CoupledTensor::at(const ComponentLabel& label) const {
  auto it = components.find(label);
  if (it == components.end()) throw std::out_of_range("coupled tensor has no component " + label_text(label));
  return it->second;
}

namespace {

struct Layout {
  std::vector<int> slots;
  std::vector<int> ranks2;
};

// Σ Π_s <r_a p_a r_b p_b | k m> (A_a B_b), accumulated into `out` with slot order `layout`.
// bracket: use [A_a, B_b] in place of the ordered product.
void accumulate(const CartanWeyl& cw, const TensorOperator& a, const TensorOperator& b,
                const std::map<int, int>& targets, const Layout& layout, const ExactReal& scale, bool bracket,
                std::map<ComponentLabel, EnvelopingElement>& out) {
  for (const auto& [la, xa] : a.components) {
    for (const auto& [lb, xb] : b.components) {
      ExactReal coef(1);
      ComponentLabel result(layout.slots.size());
      for (std::size_t i = 0; i < layout.slots.size() && !coef.is_zero(); ++i) {
        int s = layout.slots[i];
        int pa = a.slot_position(s), pb = b.slot_position(s);
        if (pa >= 0 && pb >= 0) {
          int m = la[pa] + lb[pb];
          int k = targets.at(s);
          if (std::abs(m) > k) {
            coef = ExactReal();
            break;
          }
          coef *= clebsch_gordan(a.ranks2[pa], la[pa], b.ranks2[pb], lb[pb], k, m);
          result[i] = m;
        } else {
          result[i] = pa >= 0 ? la[pa] : lb[pb];
        }
      }
      if (coef.is_zero()) continue;
      EnvelopingElement term;
      if (bracket)
        term.linear = cw.commutator(xa, xb);
      else
        term = ordered_product(cw, xa, xb);
      out[result] += (scale * coef) * term;
    }
  }
}

}  // namespace

CoupledTensor couple(const CartanWeyl& cw, const CouplingSpec& spec) {
  if (!spec.left || !spec.right) throw CouplingError("coupling needs two operators");
  const TensorOperator& x = *spec.left;
  const TensorOperator& y = *spec.right;

  std::set<int> shared;
  for (int s : x.slots)
    if (y.slot_position(s) >= 0) shared.insert(s);
  std::set<int> targeted;
  for (const auto& [s, k] : spec.target_ranks2) targeted.insert(s);
  if (shared.empty()) throw CouplingError(x.name + " and " + y.name + " share no angular-momentum slot");
  if (shared != targeted)
    throw CouplingError("target ranks must be given for exactly the shared slots of " + x.name + " and " + y.name);

  CoupledTensor out;
  for (std::size_t i = 0; i < x.slots.size(); ++i) {
    int s = x.slots[i];
    out.slots.push_back(s);
    if (shared.count(s)) {
      int k = spec.target_ranks2.at(s);
      int r1 = x.ranks2[i], r2 = y.ranks2[y.slot_position(s)];
      if (k < std::abs(r1 - r2) || k > r1 + r2 || (r1 + r2 + k) % 2)
        throw CouplingError("rank " + half_integer(k) + " violates the triangle rule on slot " + std::to_string(s));
      out.ranks2.push_back(k);
    } else {
      out.ranks2.push_back(x.ranks2[i]);
    }
  }
  for (std::size_t i = 0; i < y.slots.size(); ++i)
    if (!shared.count(y.slots[i])) {
      out.slots.push_back(y.slots[i]);
      out.ranks2.push_back(y.ranks2[i]);
    }
  out.charges = x.charges;
  for (const auto& [s, q] : y.charges) {
    out.charges[s] += q;
    if (out.charges[s] == 0) out.charges.erase(s);
  }

  Layout layout{out.slots, out.ranks2};
  switch (spec.mode) {
    case CouplingMode::Plain:
      accumulate(cw, x, y, spec.target_ranks2, layout, ExactReal(1), false, out.components);
      break;
    case CouplingMode::Anticommutator:
      accumulate(cw, x, y, spec.target_ranks2, layout, ExactReal(1), false, out.components);
      accumulate(cw, y, x, spec.target_ranks2, layout, ExactReal(1), false, out.components);
      break;
    case CouplingMode::Commutator:
      accumulate(cw, x, y, spec.target_ranks2, layout, ExactReal(1), false, out.components);
      accumulate(cw, y, x, spec.target_ranks2, layout, ExactReal(-1), false, out.components);
      break;
    case CouplingMode::Bracket:
      accumulate(cw, x, y, spec.target_ranks2, layout, ExactReal(1), true, out.components);
      break;
  }
  for (const auto& l : component_labels(out.ranks2)) out.components.try_emplace(l);
  return out;
}

}  // namespace xlie
