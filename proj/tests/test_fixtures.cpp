#include <doctest.h>

#include <fstream>

#include "models.hpp"

using namespace xlie;
using xlie::test::model;

namespace {

nlohmann::json load(const std::string& name) {
  std::ifstream in(std::string(XLIE_FIXTURE_DIR) + "/" + name);
  REQUIRE_MESSAGE(in.good(), "missing fixture " << name);
  return nlohmann::json::parse(in);
}

nlohmann::json constants_json(const AlgebraModel& m) {
  nlohmann::json j = m.constants.to_json(m.roots);
  j["derived_K"] = m.roots.derived_K().str();
  j["schema_version"] = "1";
  return j;
}

}  // namespace

TEST_CASE("G2 numbering matches the frozen fixture") {
  const nlohmann::json frozen = load("g2_labels.json");
  const AlgebraModel& g2 = model(AlgebraKind::G2);
  CHECK(frozen.at("chosen") == g2.labels->to_json(g2.roots));
  CHECK(frozen.at("valid_literal") == 0);
  CHECK(frozen.at("valid_swapped") == 12);
  CHECK(frozen.at("candidates_examined") == 72);
}

TEST_CASE("structure constants match the frozen fixtures") {
  for (auto [kind, file] : {std::pair{AlgebraKind::G2, "g2_constants.json"}, std::pair{AlgebraKind::F4, "f4_constants.json"},
                            std::pair{AlgebraKind::E6, "e6_constants.json"}}) {
    CAPTURE(file);
    const nlohmann::json frozen = load(file);
    const nlohmann::json now = constants_json(model(kind));
    CHECK(frozen.at("K") == now.at("K"));
    CHECK(frozen.at("derived_K") == now.at("derived_K"));
    CHECK(frozen.at("chosen_completion") == now.at("chosen_completion"));
    CHECK(frozen.at("resolved") == now.at("resolved"));
    CHECK(frozen.at("rejected") == now.at("rejected"));
    CHECK(frozen.at("entries") == now.at("entries"));
    CHECK(frozen == now);
  }
}

TEST_CASE("frozen values") {
  CHECK(load("f4_constants.json").at("derived_K") == "3*sqrt(2)");
  const nlohmann::json e6 = load("e6_constants.json");
  CHECK(e6.at("K") == "12");
  REQUIRE(e6.at("resolved").size() == 1);
  CHECK(e6.at("resolved")[0] == "(-β_3, λ_7) = 1/12 (times K: 1)");
}
