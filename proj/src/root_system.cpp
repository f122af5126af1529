#include "xlie/root_system.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>

namespace xlie {

std::string to_string(AlgebraKind kind) {
  switch (kind) {
    case AlgebraKind::G2: return "G2";
    case AlgebraKind::F4: return "F4";
    case AlgebraKind::E6: return "E6";
  }
  return "?";
}

AlgebraKind parse_algebra(std::string_view name) {
  std::string s(name);
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (s == "G2") return AlgebraKind::G2;
  if (s == "F4") return AlgebraKind::F4;
  if (s == "E6") return AlgebraKind::E6;
  throw std::invalid_argument("unknown algebra '" + std::string(name) + "' (expected g2, f4 or e6)");
}

ExactReal dot(const Vector& a, const Vector& b) {
  ExactReal s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

Vector operator+(const Vector& a, const Vector& b) {
  Vector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

Vector operator-(const Vector& a) {
  Vector out = a;
  for (auto& x : out) x = -x;
  return out;
}

Vector scaled(const Vector& v, const ExactReal& s) {
  Vector out = v;
  for (auto& x : out) x = x * s;
  return out;
}

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const ExactReal& x) { return x.is_zero(); });
}

std::string coordinate_key(const Vector& v) {
  std::string key;
  for (const auto& x : v) {
    key += x.str();
    key += ';';
  }
  return key;
}

namespace {

using Matrix = std::vector<Vector>;

Matrix gram_sum(const std::vector<Root>& roots) {
  const std::size_t n = roots.front().coords.size();
  Matrix m(n, Vector(n));
  for (const auto& r : roots)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!r.coords[i].is_zero() && !r.coords[j].is_zero()) m[i][j] += r.coords[i] * r.coords[j];
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix c(n, Vector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (!a[i][k].is_zero())
        for (std::size_t j = 0; j < n; ++j)
          if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// c with M*M = c*M, i.e. M = c*P for a projector P.
ExactReal projector_scale(const Matrix& m) {
  Matrix m2 = multiply(m, m);
  std::optional<ExactReal> c;
  for (std::size_t i = 0; i < m.size() && !c; ++i)
    if (!m[i][i].is_zero()) c = m2[i][i] / m[i][i];
  if (!c) throw std::invalid_argument("root set spans nothing");
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m2[i][j] != *c * m[i][j])
        throw std::invalid_argument("root set fails the proportionality sum r_i r_j ~ delta_ij on its span");
  return *c;
}

const ExactReal kHalf = ExactReal::rational(1, 2);

Vector unit(int dim, int i, const ExactReal& s = ExactReal(1)) {
  Vector v(dim);
  v[i] = s;
  return v;
}

Vector combo(int dim, std::initializer_list<std::pair<int, int>> terms) {
  Vector v(dim);
  for (auto [sign, index] : terms) v[index - 1] += ExactReal(sign);
  return v;
}

std::string signed_index(int sign, int index, bool leading) {
  std::string s = sign < 0 ? "-" : (leading ? "" : "+");
  return s + std::to_string(index);
}

const std::array<std::pair<const char*, const char*>, 5> kGreek = {{
    {"alpha", "α"},
    {"beta", "β"},
    {"gamma", "γ"},
    {"epsilon", "ε"},
    {"lambda", "λ"},
}};

std::string greek_label(const std::string& ascii, int k) {
  for (const auto& [a, g] : kGreek)
    if (ascii == a) return std::string(g) + "_" + std::to_string(k);
  throw std::logic_error("unknown family " + ascii);
}

std::string normalize_label(std::string_view label) {
  std::string s(label);
  for (std::size_t pos; (pos = s.find("−")) != std::string::npos;) s.replace(pos, 3, "-");
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  return s;
}

}  // namespace

ExactReal derive_normalization(const std::vector<Root>& roots) {
  if (roots.empty()) throw std::invalid_argument("empty root set");
  ExactReal c = projector_scale(gram_sum(roots));
  auto q = c.as_rational();
  if (!q) throw std::invalid_argument("normalization square is irrational");
  return ExactReal::sqrt_rational(*q);
}

void RootSystem::add(Vector coords, std::string family, std::string label, std::string tag) {
  const int index = size();
  by_key_.emplace(coordinate_key(coords), index);
  alias(label, index);
  roots_.push_back({std::move(coords), std::move(family), std::move(label)});
  tags_.push_back(std::move(tag));
}

void RootSystem::alias(const std::string& name, int index) { by_label_.emplace(normalize_label(name), index); }

void RootSystem::finalize() {
  const int n = size();
  negative_.assign(n, -1);
  sum_.assign(static_cast<std::size_t>(n) * n, -1);
  for (int a = 0; a < n; ++a) {
    auto neg = find(-roots_[a].coords);
    if (!neg) throw std::logic_error("root set not closed under negation");
    negative_[a] = *neg;
    for (int b = 0; b < n; ++b) {
      auto s = find(roots_[a].coords + roots_[b].coords);
      if (s) sum_[a * n + b] = *s;
    }
  }
  if (static_cast<int>(by_key_.size()) != n) throw std::logic_error("duplicate root");

  Matrix m = gram_sum(roots_);
  ExactReal c = projector_scale(m);
  derived_K_ = ExactReal::sqrt_rational(*c.as_rational());
  ExactReal inv = c.inverse();
  projector_ = m;
  for (auto& row : projector_)
    for (auto& x : row) x = x * inv;
  ExactReal trace;
  for (int i = 0; i < dim_; ++i) trace += projector_[i][i];
  if (trace != ExactReal(rank_)) throw std::logic_error("projector rank mismatch");
  if (K_.is_zero()) K_ = derived_K_;

  // Greek aliases: alpha_1, alpha1, α1, and ASCII "eps".
  std::vector<std::pair<std::string, int>> extra;
  for (int i = 0; i < n; ++i) {
    const std::string& label = roots_[i].label;
    std::string sign = label.rfind('-', 0) == 0 ? "-" : "";
    std::string body = label.substr(sign.size());
    for (const auto& [ascii, glyph] : kGreek) {
      std::string g(glyph);
      if (body.rfind(g, 0) == 0) {
        std::string k = body.substr(g.size() + 1);
        for (const std::string& stem : {std::string(ascii), g}) {
          extra.emplace_back(sign + stem + "_" + k, i);
          extra.emplace_back(sign + stem + k, i);
        }
        if (std::string(ascii) == "epsilon") {
          extra.emplace_back(sign + "eps_" + k, i);
          extra.emplace_back(sign + "eps" + k, i);
        }
      }
    }
    if (kind_ != AlgebraKind::G2 && std::isdigit(static_cast<unsigned char>(body.empty() ? 'x' : body[0]))) {
      std::string with_e;
      for (char ch : label) {
        if (std::isdigit(static_cast<unsigned char>(ch))) with_e += 'e';
        with_e += ch;
      }
      extra.emplace_back(with_e, i);
    }
  }
  for (auto& [name, i] : extra) alias(name, i);
}

RootSystem RootSystem::build(AlgebraKind kind) {
  RootSystem rs;
  rs.kind_ = kind;
  switch (kind) {
    case AlgebraKind::G2: {
      rs.dim_ = 3;
      rs.rank_ = 2;
      for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
          if (i != j)
            rs.add(combo(3, {{1, i}, {-1, j}}), "e_i-e_j", std::to_string(i) + "-" + std::to_string(j));
      for (int k = 1; k <= 3; ++k) {
        int i = k == 1 ? 2 : 1;
        int j = k == 3 ? 2 : 3;
        for (int s : {1, -1}) {
          Vector v = combo(3, {{s, i}, {s, j}, {-2 * s, k}});
          std::string label = signed_index(s, i, true) + signed_index(s, j, false) + (s > 0 ? "-2*" : "+2*") +
                              std::to_string(k);
          rs.add(std::move(v), "±(e_i+e_j-2e_k)", label);
        }
      }
      break;
    }
    case AlgebraKind::F4: {
      rs.dim_ = 4;
      rs.rank_ = 4;
      for (int i = 1; i <= 4; ++i)
        for (int s : {1, -1}) rs.add(unit(4, i - 1, ExactReal(s)), "±e_i", signed_index(s, i, true), "B4");
      for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j)
          for (int si : {1, -1})
            for (int sj : {1, -1})
              rs.add(combo(4, {{si, i}, {sj, j}}), "±e_i±e_j",
                     signed_index(si, i, true) + signed_index(sj, j, false), "B4");
      // y_1 = (first) + (second), y_2 = (first) - (second)
      const std::array<std::tuple<const char*, Vector, Vector>, 4> families = {{
          {"alpha", combo(4, {{1, 1}, {1, 2}}), combo(4, {{1, 3}, {1, 4}})},
          {"beta", combo(4, {{1, 1}, {1, 2}}), combo(4, {{-1, 3}, {1, 4}})},
          {"gamma", combo(4, {{-1, 1}, {1, 2}}), combo(4, {{1, 3}, {1, 4}})},
          {"epsilon", combo(4, {{-1, 1}, {1, 2}}), combo(4, {{-1, 3}, {1, 4}})},
      }};
      for (const auto& [name, first, second] : families) {
        for (int k : {1, 2}) {
          Vector v = scaled(first + scaled(second, ExactReal(k == 1 ? 1 : -1)), kHalf);
          std::string label = greek_label(name, k);
          rs.add(v, "half-sum", label);
          rs.add(-v, "half-sum", "-" + label);
        }
      }
      break;
    }
    case AlgebraKind::E6: {
      rs.dim_ = 7;
      rs.rank_ = 6;
      for (int i = 1; i <= 6; ++i)
        for (int j = 1; j <= 6; ++j)
          if (i != j)
            rs.add(combo(7, {{1, i}, {-1, j}}), "e_i-e_j", std::to_string(i) + "-" + std::to_string(j), "A5");
      const ExactReal sqrt2 = ExactReal::radical(1, 2);
      const Vector e7 = unit(7, 6, sqrt2);
      rs.add(e7, "±√2e7", "e7");
      rs.add(-e7, "±√2e7", "-e7");
      rs.alias("√2e7", rs.size() - 2);
      rs.alias("-√2e7", rs.size() - 1);
      // ½{first ± second ± √2 e7}; y_1..y_4 = (+,+), (+,-), (-,+), (-,-)
      const std::array<std::tuple<const char*, Vector, Vector>, 3> families = {{
          {"alpha", combo(7, {{1, 1}, {1, 2}, {-1, 3}, {-1, 4}}), combo(7, {{1, 6}, {-1, 5}})},
          {"beta", combo(7, {{1, 1}, {1, 2}, {-1, 5}, {-1, 6}}), combo(7, {{1, 4}, {-1, 3}})},
          {"epsilon", combo(7, {{1, 3}, {1, 4}, {-1, 5}, {-1, 6}}), combo(7, {{1, 2}, {-1, 1}})},
      }};
      const std::array<std::pair<int, int>, 4> patterns = {{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
      for (const auto& [name, first, second] : families) {
        for (int k = 0; k < 4; ++k) {
          auto [s1, s2] = patterns[k];
          Vector v = scaled(first + scaled(second, ExactReal(s1)) + scaled(e7, ExactReal(s2)), kHalf);
          std::string label = greek_label(name, k + 1);
          rs.add(v, "half-sum", label);
          rs.add(-v, "half-sum", "-" + label);
        }
      }
      // λ_k = ½{(e2-e1) ± (e4-e3) ± (e6-e5) ± √2 e7}, signs in lexicographic (+ before -) order
      const Vector d1 = combo(7, {{1, 2}, {-1, 1}});
      const Vector d2 = combo(7, {{1, 4}, {-1, 3}});
      const Vector d3 = combo(7, {{1, 6}, {-1, 5}});
      int k = 1;
      for (int a : {1, -1})
        for (int b : {1, -1})
          for (int c : {1, -1}) {
            Vector v = scaled(d1 + scaled(d2, ExactReal(a)) + scaled(d3, ExactReal(b)) + scaled(e7, ExactReal(c)), kHalf);
            std::string label = greek_label("lambda", k++);
            rs.add(v, "half-sum", label);
            rs.add(-v, "half-sum", "-" + label);
          }
      rs.K_ = ExactReal(12);
      break;
    }
  }
  rs.finalize();
  return rs;
}

RootSystem RootSystem::with_normalization(const ExactReal& K) const {
  if (K.sign() <= 0) throw std::invalid_argument("normalization must be positive");
  RootSystem out = *this;
  out.K_ = K;
  return out;
}

std::optional<int> RootSystem::find(const Vector& coords) const {
  auto it = by_key_.find(coordinate_key(coords));
  if (it == by_key_.end()) return std::nullopt;
  return it->second;
}

int RootSystem::index_of(std::string_view label) const {
  auto it = by_label_.find(normalize_label(label));
  if (it == by_label_.end())
    throw std::invalid_argument("label '" + std::string(label) + "' does not name a root of " + to_string(kind_));
  return it->second;
}

const Root& RootSystem::resolve_family_label(std::string_view label) const { return roots_[index_of(label)]; }

Vector RootSystem::project(const Vector& v) const {
  Vector out(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      if (!projector_[i][j].is_zero() && !v[j].is_zero()) out[i] += projector_[i][j] * v[j];
  return out;
}

nlohmann::json RootSystem::to_json() const {
  nlohmann::json j;
  j["algebra"] = to_string(kind_);
  j["ambient_dimension"] = dim_;
  j["rank"] = rank_;
  j["K"] = K_.str();
  j["K_exact"] = K_.to_json();
  j["derived_K"] = derived_K_.str();
  auto arr = nlohmann::json::array();
  for (int i = 0; i < size(); ++i) {
    nlohmann::json r;
    r["index"] = i;
    r["label"] = roots_[i].label;
    r["family"] = roots_[i].family;
    if (!tags_[i].empty()) r["subalgebra"] = tags_[i];
    auto coords = nlohmann::json::array();
    for (const auto& x : roots_[i].coords) coords.push_back(x.to_json());
    r["coords"] = coords;
    auto text = nlohmann::json::array();
    for (const auto& x : roots_[i].coords) text.push_back(x.str());
    r["coords_text"] = text;
    arr.push_back(r);
  }
  j["roots"] = arr;
  return j;
}

}  // namespace xlie
