#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "xlie/model.hpp"

namespace {

using namespace xlie;

enum class Format { Json, Markdown, Text };

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConstruction = 2;
constexpr int kExitUsage = 64;

struct Options {
  std::string algebra;
  std::string format{"text"};
  std::string output;
  unsigned jobs{std::max(1u, std::thread::hardware_concurrency())};
  bool no_jacobi{false};
  bool no_appendix{false};
  bool timing{false};
  std::size_t flips{24};
  std::uint64_t seed{20240229};
};

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "md") return Format::Markdown;
  return Format::Text;
}

nlohmann::json versioned(nlohmann::json body) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  for (auto& [k, v] : body.items()) j[k] = v;
  return j;
}

// ---------------------------------------------------------------------------
// Renderers for the smaller commands

std::string roots_output(const RootSystem& rs, Format f) {
  if (f == Format::Json) return versioned(rs.to_json()).dump(2) + "\n";
  std::ostringstream os;
  if (f == Format::Markdown) {
    os << "# Roots of " << to_string(rs.algebra()) << "\n\n" << rs.size() << " roots, ambient dimension "
       << rs.ambient_dimension() << ", rank " << rs.rank() << ", K = " << rs.K() << " (derived " << rs.derived_K()
       << ")\n\n| # | label | family | coordinates |\n|---|---|---|---|\n";
  } else {
    os << to_string(rs.algebra()) << ": " << rs.size() << " roots, K = " << rs.K() << " (derived " << rs.derived_K() << ")\n";
  }
  for (int i = 0; i < rs.size(); ++i) {
    const Root& r = rs.root(i);
    std::string coords;
    for (std::size_t k = 0; k < r.coords.size(); ++k) coords += (k ? ", " : "") + r.coords[k].str();
    std::string tag = rs.subalgebra_tag(i).empty() ? "" : " [" + rs.subalgebra_tag(i) + "]";
    if (f == Format::Markdown)
      os << "| " << i << " | " << r.label << " | " << r.family << tag << " | (" << coords << ") |\n";
    else
      os << i << "\t" << r.label << "\t" << r.family << tag << "\t(" << coords << ")\n";
  }
  return os.str();
}

std::string constants_output(const AlgebraModel& m, Format f) {
  const RootSystem& rs = m.roots;
  const ConstantsReport& c = m.constants;
  if (f == Format::Json) {
    nlohmann::json j = c.to_json(rs);
    j["derived_K"] = rs.derived_K().str();
    return versioned(j).dump(2) + "\n";
  }
  std::ostringstream os;
  const bool md = f == Format::Markdown;
  if (md) os << "# Structure constants of " << to_string(rs.algebra()) << "\n\n";
  os << "K = " << rs.K() << " (derived " << rs.derived_K() << "); " << c.completions << " Jacobi completions, chose #"
     << c.chosen << "; listed constants reproduced: " << c.listed_agree << " of " << c.listed_total << "\n";
  if (md) os << "\n| x | y | N | N*K | provenance | note |\n|---|---|---|---|---|---|\n";
  const StructureTable& t = c.table;
  for (int a = 0; a < rs.size(); ++a)
    for (int b = 0; b < rs.size(); ++b) {
      if (!t.has(a, b)) continue;
      if (md)
        os << "| " << rs.root(a).label << " | " << rs.root(b).label << " | " << t.at(a, b) << " | " << t.at(a, b) * rs.K()
           << " | " << to_string(t.provenance(a, b)) << " | " << t.note(a, b) << " |\n";
      else
        os << "N(" << rs.root(a).label << ", " << rs.root(b).label << ") = " << t.at(a, b) << "  [" << to_string(t.provenance(a, b))
           << (t.note(a, b).empty() ? "" : "; " + t.note(a, b)) << "]\n";
    }
  if (!c.rejected.empty()) {
    os << (md ? "\n## Listed entries not reproduced\n\n" : "listed entries not reproduced:\n");
    for (const auto& r : c.rejected)
      os << (md ? "- " : "  ") << "(" << r.x << ", " << r.y << ") listed " << r.listed << ": " << r.reason << "\n";
  }
  if (!c.resolved.empty()) {
    os << (md ? "\n## Entries listed without a value\n\n" : "entries listed without a value:\n");
    for (const auto& r : c.resolved) os << (md ? "- " : "  ") << r << "\n";
  }
  return os.str();
}

std::string labels_output(const RootSystem& rs, const LabelSearchResult& r, Format f) {
  if (f == Format::Json) {
    nlohmann::json j;
    j["algebra"] = "G2";
    j["candidates_examined"] = r.candidates_examined;
    j["valid_literal"] = r.literal_valid;
    j["valid_swapped"] = r.swapped_valid;
    j["chosen"] = r.chosen ? r.chosen->to_json(rs) : nlohmann::json();
    return versioned(j).dump(2) + "\n";
  }
  std::ostringstream os;
  if (f == Format::Markdown) os << "# G2 root numbering\n\n";
  os << r.candidates_examined << " candidates examined; valid assignments: " << r.literal_valid
     << " with J(1) scale 2*sqrt(3), " << r.swapped_valid << " with the scales exchanged\n";
  if (r.chosen) {
    const G2Labels& l = *r.chosen;
    os << (f == Format::Markdown ? "\n" : "") << "chosen (" << l.reading << "):";
    for (int k = 1; k <= 6; ++k) os << " E" << k << "=E[" << rs.root(l.positive[k - 1]).label << "]";
    os << "; J_0(1) = " << l.j1_scale << " H(u1), J_0(2) = " << l.j2_scale << " H(u2); second constant pairs E6 with E"
       << l.extra_partner << "; completion #" << l.solution_index << "\n";
  }
  return os.str();
}

std::string diagram_output(const AlgebraModel& m, Format f) {
  const RootSystem& rs = m.roots;
  const G2Labels& l = *m.labels;
  ExactReal shortest;
  for (const auto& r : rs.roots()) {
    ExactReal len2 = dot(r.coords, r.coords);
    if (shortest.is_zero() || len2 < shortest) shortest = len2;
  }
  const ExactReal scale = ExactReal::sqrt_rational(*shortest.as_rational()).inverse();
  std::map<int, std::string> names;
  for (int k = 1; k <= 6; ++k) {
    names[l.root_of(k, rs)] = "E" + std::to_string(k);
    names[l.root_of(-k, rs)] = "E-" + std::to_string(k);
  }
  struct Point {
    std::string name, label;
    ExactReal x, y;
  };
  std::vector<Point> pts;
  for (int i = 0; i < rs.size(); ++i) {
    const auto& c = rs.root(i).coords;
    pts.push_back({names[i], rs.root(i).label, scale * dot(l.h1, c), scale * dot(l.h2, c)});
  }
  std::ostringstream os;
  if (f == Format::Json) {
    nlohmann::json j;
    j["algebra"] = "G2";
    j["axes"] = {"J_0(1) direction", "J_0(2) direction"};
    j["scale"] = "shortest root has length 1";
    auto arr = nlohmann::json::array();
    for (const auto& p : pts)
      arr.push_back({{"generator", p.name}, {"root", p.label}, {"x", p.x.str()}, {"y", p.y.str()},
                     {"x_exact", p.x.to_json()}, {"y_exact", p.y.to_json()}, {"xy", {p.x.to_double(), p.y.to_double()}}});
    j["points"] = arr;
    return versioned(j).dump(2) + "\n";
  }
  if (f == Format::Markdown) os << "# G2 root diagram\n\n| generator | root | x | y |\n|---|---|---|---|\n";
  for (const auto& p : pts) {
    if (f == Format::Markdown)
      os << "| " << p.name << " | " << p.label << " | " << p.x << " | " << p.y << " |\n";
    else
      os << p.name << "\t" << p.label << "\t" << p.x << "\t" << p.y << "\n";
  }
  return os.str();
}

std::string sensitivity_output(const SensitivityResult& s, Format f) {
  if (f == Format::Json) {
    nlohmann::json j;
    j["algebra"] = to_string(s.algebra);
    j["listed_orbits"] = s.listed_orbits;
    auto arr = nlohmann::json::array();
    for (const auto& x : s.flips)
      arr.push_back({{"x", x.x}, {"y", x.y}, {"detected", x.detected}, {"caught_by", x.caught_by}});
    j["flips"] = arr;
    j["all_detected"] = s.all_detected();
    return versioned(j).dump(2) + "\n";
  }
  std::ostringstream os;
  for (const auto& x : s.flips)
    os << (f == Format::Markdown ? "- " : "") << "flip N(" << x.x << ", " << x.y << "): "
       << (x.detected ? "caught by " + x.caught_by : std::string("not detected")) << "\n";
  os << to_string(s.algebra) << ": " << s.flips.size() << " flips over " << s.listed_orbits << " listed orbits, "
     << (s.all_detected() ? "all detected" : "some undetected") << "\n";
  return os.str();
}

int emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream out(o.output, std::ios::binary);
  if (!out) {
    std::cerr << "xlie: cannot write " << o.output << "\n";
    return kExitConstruction;
  }
  out << text;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Cartan-Weyl and irreducible tensor bases of G2, F4 and E6"};
  app.require_subcommand(1);
  Options o;

  auto algebra_arg = [&](CLI::App* sub) {
    sub->add_option("algebra", o.algebra, "g2, f4 or e6")
        ->required()
        ->transform(CLI::IsMember({"g2", "f4", "e6"}, CLI::ignore_case));
    sub->add_option("--format", o.format, "json, md or text")->check(CLI::IsMember({"json", "md", "text"}));
    sub->add_option("--output,-o", o.output, "write to this file instead of stdout");
    sub->add_option("--jobs,-j", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  };
  CLI::App* roots = app.add_subcommand("roots", "root system with labels and K");
  CLI::App* constants = app.add_subcommand("constants", "structure constants with provenance");
  CLI::App* basis = app.add_subcommand("basis", "irreducible tensor basis tables");
  CLI::App* verify = app.add_subcommand("verify", "run the full relation suite");
  CLI::App* diagram = app.add_subcommand("diagram", "G2 root diagram coordinates");
  CLI::App* labels = app.add_subcommand("solve-labels", "search G2 root numberings");
  CLI::App* sensitivity = app.add_subcommand("sensitivity", "sign-flip fault injection on listed constants");
  for (CLI::App* s : {roots, constants, basis, verify, diagram, labels, sensitivity}) algebra_arg(s);
  verify->add_flag("--no-jacobi", o.no_jacobi, "skip the Jacobi scan");
  verify->add_flag("--no-appendix", o.no_appendix, "omit diagnostics and unlisted-pair notes");
  verify->add_flag("--timing", o.timing, "include elapsed time");
  sensitivity->add_option("--flips", o.flips, "number of flips")->check(CLI::PositiveNumber);
  sensitivity->add_option("--seed", o.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const AlgebraKind kind = parse_algebra(o.algebra);
  const Format fmt = parse_format(o.format);
  if ((diagram->parsed() || labels->parsed()) && kind != AlgebraKind::G2) {
    std::cerr << "xlie: " << (diagram->parsed() ? "diagram" : "solve-labels") << " applies to g2 only\n";
    return kExitUsage;
  }

  try {
    if (roots->parsed()) return emit(o, roots_output(RootSystem::build(kind), fmt));
    if (labels->parsed()) {
      RootSystem rs = RootSystem::build(kind);
      LabelSearchResult r = solve_labels(rs);
      int rc = emit(o, labels_output(rs, r, fmt));
      return r.chosen ? rc : kExitConstruction;
    }
    AlgebraModel m = build_model(kind);
    if (constants->parsed()) return emit(o, constants_output(m, fmt));
    if (basis->parsed()) {
      switch (fmt) {
        case Format::Json: return emit(o, basis_to_json(m.cw, m.basis).dump(2) + "\n");
        case Format::Markdown: return emit(o, basis_to_markdown(m.cw, m.basis));
        case Format::Text: return emit(o, basis_to_text(m.cw, m.basis));
      }
    }
    if (diagram->parsed()) return emit(o, diagram_output(m, fmt));
    if (sensitivity->parsed()) {
      SensitivityResult s = sensitivity_check(m, o.flips, o.seed, o.jobs);
      int rc = emit(o, sensitivity_output(s, fmt));
      return rc != kExitOk ? rc : s.all_detected() ? kExitOk : kExitVerifyFailed;
    }
    if (verify->parsed()) {
      VerifyOptions vo;
      vo.jobs = o.jobs;
      vo.jacobi = !o.no_jacobi;
      vo.appendix = !o.no_appendix;
      VerificationReport rep = verify_basis(m.cw, m.basis, vo);
      std::string text = fmt == Format::Json       ? rep.to_json(o.timing).dump(2) + "\n"
                         : fmt == Format::Markdown ? rep.to_markdown(o.timing)
                                                   : rep.to_text(o.timing);
      int rc = emit(o, text);
      return rc != kExitOk ? rc : rep.all_pass() ? kExitOk : kExitVerifyFailed;
    }
  } catch (const std::exception& e) {
    std::cerr << "xlie: " << e.what() << "\n";
    return kExitConstruction;
  }
  return kExitUsage;
}
