#include "roomqd/config.hpp"

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

namespace roomqd {
namespace {

TEST(Config, DefaultsAreValid) {
  const EngineConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.pop_size, 1000);
  EXPECT_EQ(c.cell_capacity, 25);
  EXPECT_EQ(c.publish_gen, 100);
  EXPECT_EQ(c.parents_per_population, 5);
  EXPECT_EQ(c.tournament_size, 3);
  EXPECT_DOUBLE_EQ(c.mutation_rate, 0.3);
  EXPECT_EQ(c.dims, (std::vector<DimensionDescriptor>{{Dimension::Nsp, 5}, {Dimension::Symmetry, 5}}));
}

TEST(Config, ValidationNamesTheField) {
  EngineConfig c;
  c.pop_size = 0;
  try {
    c.validate();
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("pop_size"), std::string::npos);
  }
  c = {};
  c.mutation_rate = 1.5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.init_mutation_rate = -0.1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.leniency = {0.5, 0.5, 0.5};
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(DimensionList, ParsesNamesAndGranularities) {
  EXPECT_EQ(parse_dimension_list("nsp,symmetry", 5),
            (std::vector<DimensionDescriptor>{{Dimension::Nsp, 5}, {Dimension::Symmetry, 5}}));
  EXPECT_EQ(parse_dimension_list(" leniency:3 , inner_similarity ", 4),
            (std::vector<DimensionDescriptor>{{Dimension::Leniency, 3}, {Dimension::InnerSimilarity, 4}}));
  EXPECT_EQ(parse_dimension_list("symmetry,similarity,nmp,nsp,linearity,inner_similarity,leniency", 5).size(), 7u);
}

TEST(DimensionList, RejectsBadLists) {
  try {
    parse_dimension_list("nsp,bogus", 5);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "unknown dimension 'bogus'");
  }
  EXPECT_THROW(parse_dimension_list("nsp", 5), std::invalid_argument);
  EXPECT_THROW(parse_dimension_list("nsp,nsp", 5), std::invalid_argument);
  EXPECT_THROW(parse_dimension_list("nsp:1,symmetry", 5), std::invalid_argument);
  EXPECT_THROW(parse_dimension_list("nsp:x,symmetry", 5), std::invalid_argument);
  EXPECT_THROW(parse_dimension_list("nsp,,symmetry", 5), std::invalid_argument);
}

TEST(ConfigFile, ParsesKeysAndComments) {
  const auto c = parse_config(
      "# search settings\n"
      "pop_size = 200   # smaller\n"
      "mutation_rate=0.5\n"
      "\n"
      "seed = 42\n"
      "granularity = 4\n"
      "dims = nmp, linearity:3\n"
      "leniency_weights = 0.5,0.3,0.2\n");
  EXPECT_EQ(c.pop_size, 200);
  EXPECT_DOUBLE_EQ(c.mutation_rate, 0.5);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.dims, (std::vector<DimensionDescriptor>{{Dimension::Nmp, 4}, {Dimension::Linearity, 3}}));
  EXPECT_DOUBLE_EQ(c.leniency.enemy_sparsity, 0.5);
  EXPECT_EQ(c.cell_capacity, 25);  // untouched keys keep the base value
}

TEST(ConfigFile, GranularityAloneRebinsTheDefaultDims) {
  const auto c = parse_config("granularity = 7\n");
  for (const auto& d : c.dims) EXPECT_EQ(d.granularity, 7);
}

TEST(ConfigFile, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(parse_config("popsize = 3\n"), std::invalid_argument);
  EXPECT_THROW(parse_config("pop_size 3\n"), std::invalid_argument);
  EXPECT_THROW(parse_config("pop_size = three\n"), std::invalid_argument);
  EXPECT_THROW(parse_config("mutation_rate = 0.3x\n"), std::invalid_argument);
  EXPECT_THROW(parse_config("leniency_weights = 0.5,0.5\n"), std::invalid_argument);
  EXPECT_THROW(parse_config("dims = nsp\n"), std::invalid_argument);
}

TEST(ConfigFile, FormatRoundTrips) {
  EngineConfig c;
  c.pop_size = 321;
  c.seed = 99;
  c.init_mutation_rate = 0.125;
  c.dims = {{Dimension::Leniency, 3}, {Dimension::Similarity, 6}, {Dimension::Nmp, 2}};
  const auto back = parse_config(format_config(c));
  EXPECT_EQ(back.pop_size, 321);
  EXPECT_EQ(back.seed, 99u);
  EXPECT_DOUBLE_EQ(back.init_mutation_rate, 0.125);
  EXPECT_EQ(back.dims, c.dims);
}

TEST(ConfigFile, LoadsFromDisk) {
  const auto path = std::filesystem::path(testing::TempDir()) / "roomqd_config_test.cfg";
  {
    std::ofstream out(path);
    out << "cell_capacity = 9\n";
  }
  EXPECT_EQ(load_config(path).cell_capacity, 9);
  std::filesystem::remove(path);
  EXPECT_THROW(load_config(path), std::runtime_error);
}

TEST(ConfigJson, RoundTrip) {
  EngineConfig c;
  c.tournament_size = 4;
  c.dims = {{Dimension::InnerSimilarity, 4}, {Dimension::Symmetry, 5}};
  c.leniency = {0.2, 0.3, 0.5};
  const auto j = config_to_json(c);
  EXPECT_EQ(j["dims"][0]["kind"], "inner_similarity");
  const auto back = config_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.tournament_size, 4);
  EXPECT_EQ(back.dims, c.dims);
  EXPECT_DOUBLE_EQ(back.leniency.door_safety, 0.5);
  EXPECT_EQ(config_to_json(back), j);
}

TEST(ConfigJson, RejectsBadDocuments) {
  EXPECT_THROW(config_from_json({{"pop_size", "many"}}), std::invalid_argument);
  EXPECT_THROW(config_from_json({{"dims", {{{"kind", "bogus"}}}}}), std::invalid_argument);
  EXPECT_THROW(config_from_json({{"leniency_weights", {1.0}}}), std::invalid_argument);
  EXPECT_THROW(config_from_json({{"cell_capacity", 0}}), std::invalid_argument);
}

}  // namespace
}  // namespace roomqd
