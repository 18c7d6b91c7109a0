#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "wrinkle/config.hpp"
#include "wrinkle/errors.hpp"

using namespace wrinkle;

namespace {

std::string code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

}  // namespace

TEST(Config, Defaults) {
  const RunConfig c = parse_config("{}");
  EXPECT_EQ(c.params.alpha_s, 1e-4);
  EXPECT_EQ(c.grid.refinement, Refinement::uniform);
  EXPECT_EQ(c.output, "out");
  EXPECT_FALSE(c.seed.has_value());
}

TEST(Config, ReadsFields) {
  const RunConfig c = parse_config(R"({"alpha_s": 2e-4, "h": 5e-3,
      "grid": {"n": 3000, "refinement": "boundary_layer"},
      "sweep": {"h": [4e-3, 2e-3]}, "seed": 7, "jobs": 2})");
  EXPECT_EQ(c.params.alpha_s, 2e-4);
  EXPECT_EQ(c.params.h, 5e-3);
  EXPECT_EQ(c.grid.n, 3000u);
  EXPECT_EQ(c.grid.refinement, Refinement::boundary_layer);
  EXPECT_EQ(sweep_h_list(c), (std::vector<double>{4e-3, 2e-3}));
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.jobs, 2);
  EXPECT_EQ(parse_config(R"({"unit": "mm"})").unit, "mm");
}

TEST(Config, Overrides) {
  const std::vector<std::string> ov{"h=2e-3", "grid.n=100", "output=elsewhere"};
  const RunConfig c = parse_config("{}", ov);
  EXPECT_EQ(c.params.h, 2e-3);
  EXPECT_EQ(c.grid.n, 100u);
  EXPECT_EQ(c.output, "elsewhere");
  const std::vector<std::string> bad{"noequals"};
  EXPECT_EQ(code_of([&] { parse_config("{}", bad); }), "config.override");
}

TEST(Config, Errors) {
  EXPECT_EQ(code_of([] { parse_config(R"({"alpha": 1})"); }), "config.unknown_key");
  EXPECT_EQ(code_of([] { parse_config(R"({"grid": {"m": 1}})"); }), "config.unknown_key");
  EXPECT_EQ(code_of([] { parse_config(R"({"h": "thin"})"); }), "config.type");
  EXPECT_EQ(code_of([] { parse_config("{"); }), "config.parse");
  EXPECT_EQ(code_of([] { parse_config(R"({"jobs": -1})"); }), "config.jobs");
  EXPECT_EQ(code_of([] { parse_config(R"({"sweep": {"h": [1e-3], "stop": 1e-4}})"); }),
            "config.sweep");
  EXPECT_EQ(code_of([] { load_config("/nonexistent/config.json"); }), "config.missing");
}

TEST(Config, RoundTrip) {
  const RunConfig c = parse_config(R"({"sweep": {"start": 1e-2, "stop": 1.25e-3, "points": 7}})");
  const RunConfig back = parse_config(config_json(c));
  EXPECT_EQ(sweep_h_list(back), sweep_h_list(c));
  EXPECT_EQ(sweep_h_list(c).size(), 7u);
}

TEST(Config, ReferenceFileLoads) {
  const std::filesystem::path path = WRINKLE_SOURCE_DIR "/configs/reference.json";
  const RunConfig c = load_config(path);
  EXPECT_EQ(c.params.r0, 0.5);
  EXPECT_EQ(c.lemma1_cases, 50u);
  EXPECT_EQ(sweep_h_list(c).size(), 7u);
}
