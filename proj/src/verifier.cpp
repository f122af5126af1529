#include "xlie/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace xlie {

std::string to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::Angular: return "angular";
    case RelationKind::Scalar: return "scalar";
    case RelationKind::Tensor: return "tensor";
    case RelationKind::Charge: return "charge";
    case RelationKind::Coupled: return "coupled";
    case RelationKind::PlainCommutator: return "plain_commutator";
    case RelationKind::Hermiticity: return "hermiticity";
    case RelationKind::Jacobi: return "jacobi";
    case RelationKind::Closure: return "closure";
    case RelationKind::Grading: return "grading";
    case RelationKind::Cartan: return "cartan_id";
    case RelationKind::Dimension: return "dimension";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Report

std::size_t VerificationReport::passed() const {
  return static_cast<std::size_t>(std::count_if(relations.begin(), relations.end(), [](const auto& r) { return r.pass; }));
}

std::size_t VerificationReport::failed() const { return relations.size() - passed(); }

const RelationResult* VerificationReport::find(std::string_view id) const {
  for (const auto& r : relations)
    if (r.id == id) return &r;
  return nullptr;
}

nlohmann::json VerificationReport::to_json(bool include_timing) const {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["suite_version"] = kSuiteVersion;
  j["algebra"] = to_string(algebra);
  auto rel = nlohmann::json::array();
  for (const auto& r : relations) {
    nlohmann::json e;
    e["id"] = r.id;
    e["kind"] = to_string(r.kind);
    e["statement"] = r.statement;
    e["status"] = r.pass ? "pass" : "fail";
    e["checks"] = r.checks;
    if (r.witness)
      e["witness"] = {{"component", r.witness->component},
                      {"lhs", r.witness->lhs},
                      {"rhs", r.witness->rhs},
                      {"difference", r.witness->difference}};
    rel.push_back(std::move(e));
  }
  j["relations"] = rel;
  j["counts"] = {{"total", relations.size()}, {"passed", passed()}, {"failed", failed()}};
  auto app = nlohmann::json::array();
  for (const auto& a : appendix) app.push_back({{"id", a.id}, {"detail", a.detail}});
  j["appendix"] = app;
  if (include_timing) j["elapsed_seconds"] = elapsed_seconds;
  return j;
}

std::string VerificationReport::to_markdown(bool include_timing) const {
  std::ostringstream os;
  os << "# " << to_string(algebra) << " verification\n\n";
  os << passed() << " of " << relations.size() << " relations pass";
  if (include_timing) os << " (" << elapsed_seconds << " s)";
  os << ".\n\n| id | kind | status | checks | statement |\n|---|---|---|---|---|\n";
  for (const auto& r : relations)
    os << "| `" << r.id << "` | " << to_string(r.kind) << " | " << (r.pass ? "pass" : "**fail**") << " | " << r.checks
       << " | " << r.statement << " |\n";
  bool any = false;
  for (const auto& r : relations) {
    if (!r.witness) continue;
    if (!any) os << "\n## Witnesses\n\n";
    any = true;
    os << "- `" << r.id << "` at " << r.witness->component << ": lhs `" << r.witness->lhs << "`, rhs `" << r.witness->rhs
       << "`, difference `" << r.witness->difference << "`\n";
  }
  if (!appendix.empty()) {
    os << "\n## Appendix\n\n";
    for (const auto& a : appendix) os << "- `" << a.id << "`: " << a.detail << "\n";
  }
  return os.str();
}

std::string VerificationReport::to_text(bool include_timing) const {
  std::ostringstream os;
  for (const auto& r : relations) {
    os << (r.pass ? "PASS " : "FAIL ") << r.id << "  (" << r.checks << " checks)  " << r.statement << "\n";
    if (r.witness)
      os << "     at " << r.witness->component << "\n     lhs  " << r.witness->lhs << "\n     rhs  " << r.witness->rhs
         << "\n     diff " << r.witness->difference << "\n";
  }
  for (const auto& a : appendix) os << "info " << a.id << ": " << a.detail << "\n";
  os << to_string(algebra) << ": " << passed() << "/" << relations.size() << " relations pass";
  if (include_timing) os << " in " << elapsed_seconds << " s";
  os << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Relation data

namespace {

const ExactReal& sqrt_half() {
  static const ExactReal v = ExactReal::sqrt_rational(mpq_class(1, 2));
  return v;
}

std::string alg_prefix(AlgebraKind kind) {
  std::string s = to_string(kind);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string pair_name(int a, int b) { return "U(" + std::to_string(a) + std::to_string(b) + ")"; }

AlgebraElement J(const TensorBasis& b, int slot, int mu2) { return b.op("J(" + std::to_string(slot) + ")").at({mu2}); }

/// Target map with `hot` at rank 1 and every other listed slot at rank 0.
std::map<int, int> one_hot(std::initializer_list<int> slots, int hot) {
  std::map<int, int> m;
  for (int s : slots) m[s] = s == hot ? 2 : 0;
  return m;
}

std::string rank_text(const std::map<int, int>& targets, const std::vector<int>& order) {
  std::string s;
  for (int slot : order) s += half_integer(targets.at(slot));
  return s;
}

void add_self_coupling(std::vector<CoupledRelationSpec>& out, AlgebraKind kind, const std::string& op,
                       std::initializer_list<int> slots, const ExactReal& c) {
  std::vector<int> order(slots);
  for (int s : slots) {
    auto t = one_hot(slots, s);
    CoupledRelationSpec spec;
    spec.id = alg_prefix(kind) + ".coupled." + op + op + "^" + rank_text(t, order);
    spec.statement = "(" + op + " " + op + ")^" + rank_text(t, order) + " = " + c.str() + " J(" + std::to_string(s) + ")";
    spec.left = spec.right = op;
    spec.targets = t;
    spec.mode = CouplingMode::Plain;
    spec.expected = [c, s](const TensorBasis& b, const SlotLabels& l) { return c * J(b, s, l.at(s)); };
    out.push_back(std::move(spec));
  }
}

}  // namespace

std::vector<CoupledRelationSpec> coupled_relation_specs(AlgebraKind kind) {
  std::vector<CoupledRelationSpec> out;
  const std::string pre = alg_prefix(kind);
  switch (kind) {
    case AlgebraKind::G2: {
      const std::array<std::pair<int, mpq_class>, 2> lines = {{{1, mpq_class(9, 2)}, {2, mpq_class(5, 2)}}};
      for (const auto& [s, sq] : lines) {
        const ExactReal c = ExactReal::sqrt_rational(sq);
        auto t = one_hot({1, 2}, s);
        CoupledRelationSpec spec;
        spec.id = pre + ".coupled.U(12)U(12)^" + rank_text(t, {1, 2});
        spec.statement = "(U(12) U(12))^" + rank_text(t, {1, 2}) + " = " + c.str() + " J(" + std::to_string(s) + ")";
        spec.left = spec.right = "U(12)";
        spec.targets = t;
        spec.mode = CouplingMode::Plain;
        spec.expected = [c, s](const TensorBasis& b, const SlotLabels& l) { return c * J(b, s, l.at(s)); };
        out.push_back(std::move(spec));
      }
      break;
    }
    case AlgebraKind::F4: {
      const ExactReal minus_half = ExactReal::rational(-1, 2);
      for (auto [i, j] : {std::pair{1, 2}, {3, 4}, {1, 3}, {1, 4}, {2, 3}, {2, 4}})
        add_self_coupling(out, kind, pair_name(i, j), {i, j}, minus_half);
      for (auto [i, j, k] : {std::tuple{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}) {
        const ExactReal c = pow_minus_one(i + 1) * sqrt_half();
        const std::string left = pair_name(i, j), right = pair_name(j, k), target = pair_name(i, k);
        CoupledRelationSpec spec;
        spec.id = pre + ".coupled.{" + left + right + "}^1/2,0,1/2";
        spec.statement = "{" + left + " " + right + "}^(1/2 0 1/2) = " + c.str() + " " + target;
        spec.left = left;
        spec.right = right;
        spec.targets = {{j, 0}};
        spec.mode = CouplingMode::Anticommutator;
        spec.expected = [c, target, i, k](const TensorBasis& b, const SlotLabels& l) {
          return c * b.op(target).at({l.at(i), l.at(k)});
        };
        out.push_back(std::move(spec));
      }
      {
        const ExactReal c = -ExactReal::radical(1, 2);
        CoupledRelationSpec spec;
        spec.id = pre + ".coupled.[U(12)U(1234)]^0,0,1/2,1/2";
        spec.statement = "[U(12) U(1234)]^(0 0 1/2 1/2) = " + c.str() + " U(34)";
        spec.left = "U(12)";
        spec.right = "U(1234)";
        spec.targets = {{1, 0}, {2, 0}};
        spec.mode = CouplingMode::Commutator;
        spec.expected = [c](const TensorBasis& b, const SlotLabels& l) { return c * b.op("U(34)").at({l.at(3), l.at(4)}); };
        out.push_back(std::move(spec));
      }
      {
        const ExactReal c = pow_minus_one(1 + 1) * ExactReal::radical(1, 2);
        CoupledRelationSpec spec;
        spec.id = pre + ".coupled.[U(13)U(1234)]^0,1/2,0,1/2";
        spec.statement = "[U(13) U(1234)]^(0 1/2 0 1/2) = " + c.str() + " U(24)";
        spec.left = "U(13)";
        spec.right = "U(1234)";
        spec.targets = {{1, 0}, {3, 0}};
        spec.mode = CouplingMode::Commutator;
        spec.expected = [c](const TensorBasis& b, const SlotLabels& l) { return c * b.op("U(24)").at({l.at(2), l.at(4)}); };
        out.push_back(std::move(spec));
      }
      add_self_coupling(out, kind, "U(1234)", {1, 2, 3, 4}, ExactReal(-1));
      break;
    }
    case AlgebraKind::E6: {
      for (auto [i, j] : {std::pair{1, 3}, {1, 5}, {3, 5}}) {
        const int i1 = i + 1, j1 = j + 1;
        const std::string digits = std::to_string(i) + std::to_string(i1) + std::to_string(j) + std::to_string(j1);
        const std::string v = "V(" + digits + ")", w = "W(" + digits + ")";
        for (int s : {i1, j1}) {
          auto t = one_hot({i1, j1}, s);
          CoupledRelationSpec spec;
          spec.id = pre + ".coupled.[" + v + w + "]^" + rank_text(t, {i1, j1});
          spec.statement = "[" + v + " " + w + "]^" + rank_text(t, {i1, j1}) + " = J(" + std::to_string(s) + ")";
          spec.left = v;
          spec.right = w;
          spec.targets = t;
          spec.mode = CouplingMode::Commutator;
          spec.expected = [s](const TensorBasis& b, const SlotLabels& l) { return J(b, s, l.at(s)); };
          out.push_back(std::move(spec));
        }
        CoupledRelationSpec spec;
        spec.id = pre + ".coupled.[" + v + w + "]^00";
        spec.statement = "[" + v + " " + w + "]^00 = 1/2 (A(" + std::to_string(i) + ") - A(" + std::to_string(j) + "))";
        spec.left = v;
        spec.right = w;
        spec.targets = {{i1, 0}, {j1, 0}};
        spec.mode = CouplingMode::Commutator;
        spec.expected = [i, j](const TensorBasis& b, const SlotLabels&) {
          const ExactReal half = ExactReal::rational(1, 2);
          return half * (b.op("A(" + std::to_string(i) + ")").at({}) - b.op("A(" + std::to_string(j) + ")").at({}));
        };
        out.push_back(std::move(spec));
      }
      for (const char* x : {"V", "W"}) {
        const std::string left = std::string(x) + "(1234)", right = std::string(x) + "(3456)",
                          target = std::string(x) + "(1256)";
        CoupledRelationSpec spec;
        spec.id = pre + ".coupled.{" + left + right + "}^1/2,0,1/2";
        spec.statement = "{" + left + " " + right + "}^(1/2 0 1/2) = " + target;
        spec.left = left;
        spec.right = right;
        spec.targets = {{4, 0}};
        spec.mode = CouplingMode::Anticommutator;
        spec.expected = [target](const TensorBasis& b, const SlotLabels& l) { return b.op(target).at({l.at(2), l.at(6)}); };
        out.push_back(std::move(spec));
      }
      add_self_coupling(out, kind, "U(2468)", {2, 4, 6, 8}, ExactReal(-1));
      break;
    }
  }
  return out;
}

std::vector<CommutatorFamilySpec> commutator_family_specs(AlgebraKind kind) {
  struct Row {
    const char* x;
    const char* y;
    int sign;
    const char* z;
  };
  std::vector<Row> rows;
  if (kind == AlgebraKind::F4) {
    rows = {{"U(12)", "U(34)", 1, "U(1234)"}, {"U(13)", "U(24)", -1, "U(1234)"}, {"U(14)", "U(23)", -1, "U(1234)"}};
  } else if (kind == AlgebraKind::E6) {
    rows = {
        {"V(1638)", "W(1458)", -1, "W(3456)"}, {"W(1638)", "V(1458)", 1, "V(3456)"},
        {"V(3456)", "W(1638)", -1, "W(1458)"}, {"W(3456)", "V(1638)", 1, "V(1458)"},
        {"V(3456)", "W(1458)", 1, "W(1638)"},  {"W(3456)", "V(1458)", -1, "V(1638)"},
        {"V(1638)", "W(3258)", 1, "W(1256)"},  {"W(1638)", "V(3258)", -1, "V(1256)"},
        {"V(1256)", "W(1638)", 1, "W(3258)"},  {"W(1256)", "V(1638)", -1, "V(3258)"},
        {"V(1256)", "W(3258)", -1, "W(1458)"}, {"W(1256)", "V(3258)", 1, "V(1458)"},
        {"V(1458)", "W(3258)", -1, "W(1234)"}, {"W(1458)", "V(3258)", 1, "V(1234)"},
        {"V(1234)", "W(1458)", -1, "W(3258)"}, {"W(1234)", "V(1458)", 1, "V(3258)"},
        {"V(1234)", "W(3258)", 1, "W(1458)"},  {"W(1234)", "V(3258)", -1, "V(1458)"},
        {"V(1234)", "W(1638)", 1, "U(2468)"},  {"W(1234)", "V(1638)", -1, "U(2468)"},
        {"V(1234)", "U(2468)", -1, "V(1638)"}, {"W(1234)", "U(2468)", 1, "W(1638)"},
        {"V(1638)", "U(2468)", 1, "V(1234)"},  {"W(1638)", "U(2468)", -1, "W(1234)"},
        {"V(1256)", "W(1458)", 1, "U(2468)"},  {"W(1256)", "V(1458)", -1, "U(2468)"},
        {"V(1256)", "U(2468)", -1, "V(1458)"}, {"W(1256)", "U(2468)", 1, "W(1458)"},
        {"V(1458)", "U(2468)", 1, "V(1256)"},  {"W(1458)", "U(2468)", -1, "W(1256)"},
        {"V(3456)", "W(3258)", 1, "U(2468)"},  {"W(3456)", "V(3258)", -1, "U(2468)"},
        {"V(3456)", "U(2468)", -1, "V(3258)"}, {"W(3456)", "U(2468)", 1, "W(3258)"},
        {"V(3258)", "U(2468)", 1, "V(3456)"},  {"W(3258)", "U(2468)", -1, "W(3456)"},
    };
  }
  std::vector<CommutatorFamilySpec> out;
  for (const auto& r : rows) {
    CommutatorFamilySpec s;
    s.left = r.x;
    s.right = r.y;
    s.target = r.z;
    s.coefficient = ExactReal(r.sign) * sqrt_half();
    s.id = alg_prefix(kind) + ".commutator.[" + s.left + "," + s.right + "]";
    s.statement = "[" + s.left + ", " + s.right + "] = " + s.coefficient.str() + " " + s.target;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<HermiticitySpec> hermiticity_specs(AlgebraKind kind) {
  switch (kind) {
    case AlgebraKind::G2: return {{"U(12)", "U(12)", 0}};
    case AlgebraKind::F4: {
      std::vector<HermiticitySpec> out;
      for (const char* u : {"U(12)", "U(34)", "U(13)", "U(14)", "U(23)", "U(24)"}) out.push_back({u, u, 0});
      out.push_back({"U(1234)", "U(1234)", 1});
      return out;
    }
    case AlgebraKind::E6: {
      std::vector<HermiticitySpec> out;
      for (const char* d : {"1234", "1256", "3456", "1638", "1458", "3258"}) {
        const std::string v = std::string("V(") + d + ")", w = std::string("W(") + d + ")";
        out.push_back({v, w, 1});
        out.push_back({w, v, 1});
      }
      out.push_back({"U(2468)", "U(2468)", 1});
      return out;
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Checks

namespace {

/// Accumulates exact comparisons; keeps the first mismatch as witness.
struct Tally {
  RelationResult result;
  const RootSystem* rs;

  Tally(const RootSystem& roots, std::string id, RelationKind kind, std::string statement) : rs(&roots) {
    result.id = std::move(id);
    result.kind = kind;
    result.statement = std::move(statement);
  }

  void check(const std::string& component, const AlgebraElement& lhs, const AlgebraElement& rhs) {
    ++result.checks;
    if (lhs == rhs) return;
    fail(component, lhs.str(*rs), rhs.str(*rs), (lhs - rhs).str(*rs));
  }

  void check(const std::string& component, const EnvelopingElement& lhs, const AlgebraElement& rhs) {
    ++result.checks;
    EnvelopingElement r;
    r.linear = rhs;
    if (lhs == r) return;
    EnvelopingElement d = lhs;
    d -= r;
    fail(component, lhs.str(*rs), rhs.str(*rs), d.str(*rs));
  }

  void fail(const std::string& component, std::string lhs, std::string rhs, std::string diff) {
    if (result.pass) result.witness = Witness{component, std::move(lhs), std::move(rhs), std::move(diff)};
    result.pass = false;
  }
};

bool is_angular(const TensorOperator& op) { return op.name.rfind("J(", 0) == 0; }
bool is_scalar(const TensorOperator& op) { return op.name.rfind("A(", 0) == 0; }

std::string component_name(const TensorOperator& op, const ComponentLabel& l) { return ComponentRef{op.name, l}.str(); }

int slot_of(const TensorOperator& j) { return j.slots.front(); }

/// Components with the label on `pos` moved by `delta`; nullopt off the grid.
std::optional<ComponentLabel> shifted(const TensorOperator& op, const ComponentLabel& l, int pos, int delta) {
  ComponentLabel m = l;
  m[pos] += delta;
  if (std::abs(m[pos]) > op.ranks2[pos]) return std::nullopt;
  return m;
}

}  // namespace

std::vector<RelationResult> verify_definitions(const CartanWeyl& cw, const TensorBasis& basis) {
  const RootSystem& rs = cw.roots();
  const std::string pre = alg_prefix(basis.algebra);
  std::vector<const TensorOperator*> angular;
  std::vector<const TensorOperator*> scalars;
  for (const auto& op : basis.operators) {
    if (is_angular(op)) angular.push_back(&op);
    if (is_scalar(op)) scalars.push_back(&op);
  }
  std::vector<RelationResult> out;
  for (const auto& x : basis.operators) {
    RelationKind kind = is_angular(x) ? RelationKind::Angular : is_scalar(x) ? RelationKind::Scalar : RelationKind::Tensor;
    std::string statement;
    if (kind == RelationKind::Angular)
      statement = x.name + " is an angular momentum operator commuting with every other J";
    else if (kind == RelationKind::Scalar)
      statement = x.name + " commutes with every J and every A";
    else
      statement = x.name + " is an irreducible tensor operator of rank (" + [&] {
        std::string s;
        for (std::size_t i = 0; i < x.ranks2.size(); ++i) s += (i ? " " : "") + half_integer(x.ranks2[i]);
        return s;
      }() + ") on slots (" + [&] {
        std::string s;
        for (std::size_t i = 0; i < x.slots.size(); ++i) s += (i ? " " : "") + std::to_string(x.slots[i]);
        return s;
      }() + ")";
    Tally t(rs, pre + ".def." + x.name, kind, statement);
    for (const auto& l : component_labels(x.ranks2)) {
      const AlgebraElement& xl = x.at(l);
      for (const TensorOperator* j : angular) {
        const int s = slot_of(*j);
        const auto slot_it = std::find(x.slots.begin(), x.slots.end(), s);
        for (int mu : {2, 0, -2}) {
          AlgebraElement lhs = cw.commutator(j->at({mu}), xl);
          AlgebraElement rhs;
          if (slot_it != x.slots.end()) {
            const int pos = static_cast<int>(slot_it - x.slots.begin());
            if (mu == 0) {
              rhs = ExactReal::rational(l[pos], 2) * xl;
            } else {
              const int sign = mu > 0 ? 1 : -1;
              if (auto m = shifted(x, l, pos, 2 * sign)) rhs = ladder_coeff(x.ranks2[pos], l[pos], sign) * x.at(*m);
            }
          }
          t.check("[" + component_name(*j, {mu}) + ", " + component_name(x, l) + "]", lhs, rhs);
        }
      }
      if (kind == RelationKind::Scalar)
        for (const TensorOperator* a : scalars)
          t.check("[" + a->name + ", " + x.name + "]", cw.commutator(a->at({}), xl), AlgebraElement());
    }
    out.push_back(std::move(t.result));
  }
  return out;
}

std::vector<RelationResult> verify_charges(const CartanWeyl& cw, const TensorBasis& basis) {
  const RootSystem& rs = cw.roots();
  std::vector<const TensorOperator*> scalars;
  for (const auto& op : basis.operators)
    if (is_scalar(op)) scalars.push_back(&op);
  std::vector<RelationResult> out;
  if (scalars.empty()) return out;
  for (const auto& x : basis.operators) {
    if (is_scalar(x) || is_angular(x)) continue;
    std::string statement;
    for (const TensorOperator* a : scalars) {
      const int slot = std::stoi(a->name.substr(2));
      auto it = x.charges.find(slot);
      const int q = it == x.charges.end() ? 0 : it->second;
      statement += (statement.empty() ? "" : ", ") + ("[" + a->name + ", " + x.name + "] = " + std::to_string(q) + " " + x.name);
    }
    Tally t(rs, alg_prefix(basis.algebra) + ".charge." + x.name, RelationKind::Charge, statement);
    for (const TensorOperator* a : scalars) {
      const int slot = std::stoi(a->name.substr(2));
      auto it = x.charges.find(slot);
      const ExactReal q(it == x.charges.end() ? 0L : static_cast<long>(it->second));
      for (const auto& l : component_labels(x.ranks2))
        t.check("[" + a->name + ", " + component_name(x, l) + "]", cw.commutator(a->at({}), x.at(l)), q * x.at(l));
    }
    out.push_back(std::move(t.result));
  }
  return out;
}

namespace {

SlotLabels slot_labels(const std::vector<int>& slots, const ComponentLabel& l) {
  SlotLabels m;
  for (std::size_t i = 0; i < slots.size(); ++i) m[slots[i]] = l[i];
  return m;
}

std::string coupled_component(const CoupledRelationSpec& spec, const CoupledTensor& c, const ComponentLabel& l) {
  std::string s = spec.id + " component (";
  for (std::size_t i = 0; i < l.size(); ++i)
    s += (i ? ", " : "") + std::to_string(c.slots[i]) + ":" + half_integer(l[i]);
  return s + ")";
}

RelationResult check_coupled(const CartanWeyl& cw, const TensorBasis& basis, const CoupledRelationSpec& spec) {
  Tally t(cw.roots(), spec.id, RelationKind::Coupled, spec.statement);
  CoupledTensor c = couple(cw, {&basis.op(spec.left), &basis.op(spec.right), spec.targets, spec.mode});
  for (const auto& [l, value] : c.components)
    t.check(coupled_component(spec, c, l), value, spec.expected(basis, slot_labels(c.slots, l)));
  return std::move(t.result);
}

struct FamilyOutcome {
  RelationResult result;
  std::optional<std::string> inconsistency;
  bool passes_negated{false};
  std::size_t mismatches{0};
};

std::string family_component(const TensorOperator& x, const ComponentLabel& a, const TensorOperator& y,
                             const ComponentLabel& b) {
  return "[" + component_name(x, a) + ", " + component_name(y, b) + "]";
}

FamilyOutcome check_family(const CartanWeyl& cw, const TensorBasis& basis, const CommutatorFamilySpec& spec) {
  FamilyOutcome out{Tally(cw.roots(), spec.id, RelationKind::PlainCommutator, spec.statement).result, {}, false, 0};
  const RootSystem& rs = cw.roots();
  const TensorOperator& x = basis.op(spec.left);
  const TensorOperator& y = basis.op(spec.right);
  const TensorOperator& z = basis.op(spec.target);

  std::set<int> shared, free;
  for (int s : x.slots) (std::count(y.slots.begin(), y.slots.end(), s) ? shared : free).insert(s);
  for (int s : y.slots)
    if (!shared.count(s)) free.insert(s);
  std::map<int, int> charge = x.charges;
  for (const auto& [s, q] : y.charges)
    if ((charge[s] += q) == 0) charge.erase(s);
  const std::set<int> zslots(z.slots.begin(), z.slots.end());

  auto set_text = [](const auto& c) {
    std::string s;
    for (int v : c) s += (s.empty() ? "" : ",") + std::to_string(v);
    return "{" + s + "}";
  };
  auto charge_text = [](const std::map<int, int>& m) {
    std::string s;
    for (const auto& [k, v] : m) s += (s.empty() ? "" : ",") + std::to_string(k) + ":" + std::to_string(v);
    return "{" + s + "}";
  };
  if (zslots != free || charge != z.charges) {
    std::string why = "free slots " + set_text(free) + " and charges " + charge_text(charge) + " of the bracket do not match " +
                      spec.target + " (slots " + set_text(zslots) + ", charges " + charge_text(z.charges) + ")";
    out.inconsistency = why;
    out.result.pass = false;
    out.result.checks = 1;
    out.result.witness = Witness{spec.left + " x " + spec.right, "slots " + set_text(free) + ", charges " + charge_text(charge),
                                 spec.target + ": slots " + set_text(zslots) + ", charges " + charge_text(z.charges), why};
    return out;
  }

  Tally t(rs, spec.id, RelationKind::PlainCommutator, spec.statement);
  bool negated_ok = true;
  for (const auto& a : component_labels(x.ranks2)) {
    for (const auto& b : component_labels(y.ranks2)) {
      AlgebraElement lhs = cw.commutator(x.at(a), y.at(b));
      AlgebraElement rhs;
      bool contracted = true;
      ExactReal factor = spec.coefficient;
      for (int s : shared) {
        const int xa = a[x.slot_position(s)], yb = b[y.slot_position(s)];
        if (yb != -xa) contracted = false;
        factor *= ExactReal(static_cast<long>(xa));  // 2 x_s as a twice-value
      }
      if (contracted) {
        ComponentLabel zl;
        for (int s : z.slots) {
          auto xs = std::find(x.slots.begin(), x.slots.end(), s);
          zl.push_back(xs != x.slots.end() ? a[xs - x.slots.begin()] : b[y.slot_position(s)]);
        }
        rhs = factor * z.at(zl);
      }
      if (!(lhs == rhs)) ++out.mismatches;
      if (!(lhs == -rhs)) negated_ok = false;
      t.check(family_component(x, a, y, b), lhs, rhs);
    }
  }
  out.result = std::move(t.result);
  out.passes_negated = negated_ok && !out.result.pass;
  return out;
}

}  // namespace

std::vector<RelationResult> verify_coupled_relations(const CartanWeyl& cw, const TensorBasis& basis) {
  std::vector<RelationResult> out;
  for (const auto& spec : coupled_relation_specs(basis.algebra)) out.push_back(check_coupled(cw, basis, spec));
  return out;
}

std::vector<RelationResult> verify_plain_commutators(const CartanWeyl& cw, const TensorBasis& basis) {
  std::vector<RelationResult> out;
  for (const auto& spec : commutator_family_specs(basis.algebra)) out.push_back(check_family(cw, basis, spec).result);
  return out;
}

std::vector<RelationResult> verify_hermiticity(const CartanWeyl& cw, const TensorBasis& basis) {
  std::vector<RelationResult> out;
  for (const auto& spec : hermiticity_specs(basis.algebra)) {
    const TensorOperator& x = basis.op(spec.op);
    const TensorOperator& p = basis.op(spec.partner);
    std::string phase = "(-)^(" + (spec.phase_offset ? std::to_string(spec.phase_offset) + "+" : std::string()) + "sum p)";
    Tally t(cw.roots(), alg_prefix(basis.algebra) + ".hermiticity." + spec.op, RelationKind::Hermiticity,
            spec.op + "_{-p} = " + phase + " " + spec.partner + "_{p}†");
    for (const auto& l : component_labels(x.ranks2)) {
      ComponentLabel neg = l;
      int sum2 = 0;
      for (auto& v : neg) {
        sum2 += v;
        v = -v;
      }
      if (sum2 % 2 != 0) throw std::logic_error("half-odd component sum in " + x.name);
      ExactReal phase_value = pow_minus_one(spec.phase_offset + sum2 / 2);
      t.check(component_name(x, neg), x.at(neg), phase_value * cw.dagger(p.at(l)));
    }
    out.push_back(std::move(t.result));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cartan identification

namespace {

/// λ with [h, x] = λ x, or nullopt when the bracket is not proportional to x.
std::optional<ExactReal> eigenvalue(const CartanWeyl& cw, const AlgebraElement& h, const AlgebraElement& x) {
  AlgebraElement c = cw.commutator(h, x);
  if (c.is_zero()) return ExactReal(0);
  const auto& [g, coeff] = *x.terms().begin();
  ExactReal lambda = c.coefficient(g) / coeff;
  if (lambda * x == c) return lambda;
  return std::nullopt;
}

}  // namespace

std::vector<ComponentRef> identify_cartan(const CartanWeyl& cw, const TensorBasis& basis) {
  const auto comps = basis.components();
  std::vector<AlgebraElement> elements;
  for (const auto& c : comps) elements.push_back(basis.element(c));
  std::vector<ComponentRef> chosen;
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const AlgebraElement& h = elements[i];
    bool diagonal = std::all_of(elements.begin(), elements.end(),
                                [&](const AlgebraElement& x) { return eigenvalue(cw, h, x).has_value(); });
    if (!diagonal) continue;
    bool commutes = std::all_of(chosen.begin(), chosen.end(),
                                [&](const ComponentRef& c) { return cw.commutator(basis.element(c), h).is_zero(); });
    if (!commutes) continue;
    auto trial = rows;
    trial.push_back(cw.coordinates(h));
    if (exact_rank(trial) != static_cast<int>(trial.size())) continue;
    rows = std::move(trial);
    chosen.push_back(comps[i]);
  }
  return chosen;
}

std::vector<ComponentRef> expected_cartan(AlgebraKind kind) {
  switch (kind) {
    case AlgebraKind::G2: return {{"J(1)", {0}}, {"J(2)", {0}}};
    case AlgebraKind::F4: return {{"J(1)", {0}}, {"J(2)", {0}}, {"J(3)", {0}}, {"J(4)", {0}}};
    case AlgebraKind::E6:
      return {{"A(1)", {}}, {"A(3)", {}}, {"J(2)", {0}}, {"J(4)", {0}}, {"J(6)", {0}}, {"J(8)", {0}}};
  }
  return {};
}

RelationResult verify_cartan(const CartanWeyl& cw, const TensorBasis& basis) {
  auto found = identify_cartan(cw, basis);
  auto want = expected_cartan(basis.algebra);
  auto text = [](std::vector<ComponentRef> v) {
    std::sort(v.begin(), v.end());
    std::string s;
    for (const auto& c : v) s += (s.empty() ? "" : ", ") + c.str();
    return "{" + s + "}";
  };
  RelationResult r;
  r.id = alg_prefix(basis.algebra) + ".cartan";
  r.kind = RelationKind::Cartan;
  r.statement = "Cartan generators in the tensor basis are " + text(want);
  r.checks = basis.component_count();
  auto a = found, b = want;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  r.pass = a == b && static_cast<int>(found.size()) == cw.roots().rank();
  if (!r.pass) r.witness = Witness{"maximal diagonal commuting set", text(found), text(want), "sets differ"};
  return r;
}

// ---------------------------------------------------------------------------
// Dimension, closure, Jacobi

std::vector<RelationResult> verify_dimension(const CartanWeyl& cw, const TensorBasis& basis) {
  const std::string pre = alg_prefix(basis.algebra);
  const int order = algebra_order(basis.algebra);
  std::vector<RelationResult> out;
  {
    RelationResult r{pre + ".dimension.count", RelationKind::Dimension,
                     "the tensor basis has " + std::to_string(order) + " independent components", true, 1, {}};
    const int n = static_cast<int>(basis.component_count());
    r.pass = n == order && cw.dimension() == order;
    if (!r.pass)
      r.witness = Witness{"component count", std::to_string(n), std::to_string(order),
                          "algebra dimension " + std::to_string(cw.dimension())};
    out.push_back(std::move(r));
  }
  {
    std::vector<Vector> rows;
    for (const auto& c : basis.components()) rows.push_back(cw.coordinates(basis.element(c)));
    const int rank = exact_rank(rows);
    RelationResult r{pre + ".dimension.span", RelationKind::Dimension,
                     "the tensor basis components are linearly independent and span the algebra", rank == order,
                     rows.size(), {}};
    if (!r.pass) r.witness = Witness{"rank of components", std::to_string(rank), std::to_string(order), "rank deficit"};
    out.push_back(std::move(r));
  }
  if (!basis.dependent.empty()) {
    Tally t(cw.roots(), pre + ".dimension.dependent", RelationKind::Dimension, "A(1) + A(3) + A(5) = 0");
    t.check("A(1) + A(3) + A(5)", basis.op("A(1)").at({}) + basis.op("A(3)").at({}) + basis.op("A(5)").at({}),
            AlgebraElement());
    out.push_back(std::move(t.result));
  }
  return out;
}

std::vector<RelationResult> verify_closure(const CartanWeyl& cw) {
  const RootSystem& rs = cw.roots();
  const std::string pre = alg_prefix(rs.algebra());
  const auto& gens = cw.basis();
  const int rank = rs.rank();
  Tally closure(rs, pre + ".closure", RelationKind::Closure,
                "every generator bracket lies in the algebra, with Cartan parts inside the root span");
  Tally grading(rs, pre + ".grading", RelationKind::Grading,
                "[E_a, E_b] is N_ab E_(a+b) with N_ab nonzero when a+b is a root, Cartan when b = -a, zero otherwise");
  auto name = [&](int i) { return i < rank ? "H" + std::to_string(i + 1) : generator_name(Generator::root(i - rank), rs); };
  for (int i = 0; i < static_cast<int>(gens.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(gens.size()); ++j) {
      const AlgebraElement c = cw.commutator(gens[i], gens[j]);
      const std::string where = "[" + name(i) + ", " + name(j) + "]";
      const Vector h = c.cartan_part(rs.ambient_dimension());
      AlgebraElement projected_form;
      for (const auto& [g, v] : c.terms())
        if (g.kind == Generator::Kind::Root) projected_form.add(g, v);
      projected_form += AlgebraElement::cartan(rs.project(h));
      closure.check(where, c, projected_form);

      AlgebraElement expected;
      if (i < rank && j < rank) {
        expected = AlgebraElement();
      } else if (i < rank) {
        auto lambda = eigenvalue(cw, gens[i], gens[j]);
        expected = lambda ? *lambda * gens[j] : AlgebraElement();
      } else {
        const int a = i - rank, b = j - rank;
        if (rs.negative(a) == b) {
          expected = c.is_cartan() && !c.is_zero() ? c : AlgebraElement::root(a);
        } else if (int s = rs.sum(a, b); s >= 0) {
          if (cw.table().has(a, b) && !cw.table().at(a, b).is_zero()) expected = AlgebraElement::root(s, cw.table().at(a, b));
          else expected = AlgebraElement::root(s);
        }
      }
      grading.check(where, c, expected);
    }
  return {std::move(closure.result), std::move(grading.result)};
}

RelationResult verify_jacobi(const CartanWeyl& cw, unsigned jobs, bool stop_at_first) {
  const RootSystem& rs = cw.roots();
  const auto& gens = cw.basis();
  const int n = static_cast<int>(gens.size());
  const int rank = rs.rank();
  std::vector<AlgebraElement> bracket(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bracket[i * n + j] = cw.commutator(gens[i], gens[j]);
      bracket[j * n + i] = -bracket[i * n + j];
    }

  std::atomic<int> next{0};
  std::atomic<bool> stop{false};
  std::atomic<std::size_t> checked{0};
  std::mutex mu;
  std::optional<std::array<int, 3>> first;
  AlgebraElement first_value;

  auto worker = [&] {
    std::size_t local = 0;
    for (int i = next++; i < n && !stop; i = next++) {
      for (int j = i + 1; j < n && !stop; ++j)
        for (int k = j + 1; k < n; ++k) {
          ++local;
          AlgebraElement s = cw.commutator(bracket[i * n + j], gens[k]);
          s += cw.commutator(bracket[j * n + k], gens[i]);
          s += cw.commutator(bracket[k * n + i], gens[j]);
          if (s.is_zero()) continue;
          std::lock_guard lock(mu);
          std::array<int, 3> tri{i, j, k};
          if (!first || tri < *first) {
            first = tri;
            first_value = s;
          }
          if (stop_at_first) stop = true;
          break;
        }
    }
    checked += local;
  };
  const unsigned threads = std::max(1u, jobs);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  RelationResult r;
  r.id = alg_prefix(rs.algebra()) + ".jacobi";
  r.kind = RelationKind::Jacobi;
  r.statement = "[[a,b],c] + [[b,c],a] + [[c,a],b] = 0 for all " + std::to_string(static_cast<long>(n) * (n - 1) * (n - 2) / 6) +
                " unordered generator triples";
  r.checks = stop_at_first ? checked.load() : static_cast<std::size_t>(n) * (n - 1) * (n - 2) / 6;
  if (first) {
    auto name = [&](int i) { return i < rank ? "H" + std::to_string(i + 1) : generator_name(Generator::root(i - rank), rs); };
    r.pass = false;
    r.witness = Witness{"(" + name((*first)[0]) + ", " + name((*first)[1]) + ", " + name((*first)[2]) + ")",
                        first_value.str(rs), "0", first_value.str(rs)};
  }
  return r;
}

// ---------------------------------------------------------------------------
// Unlisted pairs and diagnostics

std::vector<RelationResult> verify_unlisted_pairs(const CartanWeyl& cw, const TensorBasis& basis,
                                                  std::vector<InfoEntry>* appendix) {
  const RootSystem& rs = cw.roots();
  std::set<std::pair<std::string, std::string>> listed;
  auto mark = [&](const std::string& a, const std::string& b) {
    listed.insert({a, b});
    listed.insert({b, a});
  };
  for (const auto& s : coupled_relation_specs(basis.algebra)) mark(s.left, s.right);
  for (const auto& s : commutator_family_specs(basis.algebra)) mark(s.left, s.right);

  Tally t(rs, alg_prefix(basis.algebra) + ".grading.unlisted", RelationKind::Grading,
          "brackets between tensor operators with no listed relation vanish wherever the root sum leaves the root system");
  std::vector<const TensorOperator*> tensors;
  for (const auto& op : basis.operators)
    if (!is_angular(op) && !is_scalar(op)) tensors.push_back(&op);
  auto single_root = [](const AlgebraElement& x) -> int {
    if (x.terms().size() != 1) return -1;
    const auto& g = x.terms().begin()->first;
    return g.kind == Generator::Kind::Root ? g.index : -1;
  };
  for (std::size_t i = 0; i < tensors.size(); ++i)
    for (std::size_t j = i; j < tensors.size(); ++j) {
      const TensorOperator& x = *tensors[i];
      const TensorOperator& y = *tensors[j];
      if (listed.count({x.name, y.name})) continue;
      std::size_t pairs = 0, nonzero = 0;
      for (const auto& a : component_labels(x.ranks2))
        for (const auto& b : component_labels(y.ranks2)) {
          ++pairs;
          AlgebraElement c = cw.commutator(x.at(a), y.at(b));
          const int ra = single_root(x.at(a)), rb = single_root(y.at(b));
          if (ra >= 0 && rb >= 0 && rs.sum(ra, rb) < 0 && rs.negative(ra) != rb)
            t.check(family_component(x, a, y, b), c, AlgebraElement());
          if (!c.is_zero()) ++nonzero;
        }
      if (appendix)
        appendix->push_back({"unlisted.[" + x.name + "," + y.name + "]",
                             std::to_string(nonzero) + " of " + std::to_string(pairs) + " component brackets are nonzero"});
    }
  return {std::move(t.result)};
}

std::vector<InfoEntry> diagnostics(const CartanWeyl& cw, const TensorBasis& basis, const VerificationReport& report) {
  std::vector<InfoEntry> out;
  for (const auto& spec : coupled_relation_specs(basis.algebra)) {
    const RelationResult* r = report.find(spec.id);
    if (!r || r->pass) continue;
    CoupledTensor c = couple(cw, {&basis.op(spec.left), &basis.op(spec.right), spec.targets, spec.mode});
    std::size_t symmetric = 0, linear_ok = 0;
    for (const auto& [l, value] : c.components) {
      if (!value.symmetric.empty()) ++symmetric;
      if (value.linear == spec.expected(basis, slot_labels(c.slots, l))) ++linear_ok;
    }
    CoupledTensor br = couple(cw, {&basis.op(spec.left), &basis.op(spec.right), spec.targets, CouplingMode::Bracket});
    std::size_t bracket_ok = 0;
    for (const auto& [l, value] : br.components)
      if (value.symmetric.empty() && value.linear == spec.expected(basis, slot_labels(br.slots, l))) ++bracket_ok;
    std::ostringstream os;
    os << c.components.size() << " components; " << symmetric << " keep a symmetric (non-Lie) part; the Lie part matches on "
       << linear_ok << "; the bracket-coupled form matches on " << bracket_ok;
    out.push_back({"diagnostic." + spec.id, os.str()});
  }
  for (const auto& spec : commutator_family_specs(basis.algebra)) {
    const RelationResult* r = report.find(spec.id);
    if (!r || r->pass) continue;
    FamilyOutcome f = check_family(cw, basis, spec);
    std::string detail;
    if (f.inconsistency)
      detail = "inconsistent: " + *f.inconsistency;
    else if (f.passes_negated)
      detail = "holds with the opposite sign: [" + spec.left + ", " + spec.right + "] = " + (-spec.coefficient).str() + " " +
               spec.target;
    else
      detail = std::to_string(f.mismatches) + " component pairs disagree";
    out.push_back({"diagnostic." + spec.id, detail});
  }
  return out;
}

VerificationReport verify_basis(const CartanWeyl& cw, const TensorBasis& basis, const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.algebra = basis.algebra;
  auto append = [&](std::vector<RelationResult> rs) {
    for (auto& r : rs) report.relations.push_back(std::move(r));
  };
  append(verify_dimension(cw, basis));
  append(verify_definitions(cw, basis));
  append(verify_charges(cw, basis));
  append(verify_coupled_relations(cw, basis));
  append(verify_plain_commutators(cw, basis));
  append(verify_hermiticity(cw, basis));
  report.relations.push_back(verify_cartan(cw, basis));
  append(verify_closure(cw));
  std::vector<InfoEntry> unlisted;
  append(verify_unlisted_pairs(cw, basis, options.appendix ? &unlisted : nullptr));
  if (options.jacobi) report.relations.push_back(verify_jacobi(cw, options.jobs));
  if (options.appendix) {
    report.appendix = diagnostics(cw, basis, report);
    for (auto& u : unlisted) report.appendix.push_back(std::move(u));
  }
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace xlie
