#include "profmatch/synth.hpp"

#include <sstream>

#include "gtest/gtest.h"

namespace profmatch::lottery {
namespace {

std::string students_text(const LotteryInstance& inst) {
  std::ostringstream out;
  write_students_csv(out, inst);
  return out.str();
}

TEST(SynthGenerate, DefaultCityMatchesQuotaTotals) {
  const auto inst = synth_generate({}, 1);
  EXPECT_EQ(inst.students().size(), 1414u);
  EXPECT_EQ(inst.schools().size(), 9u);
  EXPECT_EQ(inst.total_seats(Sex::male), 715u);
  EXPECT_EQ(inst.total_seats(Sex::female), 699u);
}

TEST(SynthGenerate, DeterministicAndSeedSensitive) {
  EXPECT_EQ(students_text(synth_generate({}, 5)), students_text(synth_generate({}, 5)));
  EXPECT_NE(students_text(synth_generate({}, 5)), students_text(synth_generate({}, 6)));
}

TEST(SynthGenerate, FilesReloadToTheSameInstance) {
  const auto inst = synth_generate({}, 2);
  std::ostringstream schools;
  write_schools_csv(schools, inst.schools());
  std::istringstream s(students_text(inst)), h(schools.str());
  const auto back = load(s, h);
  EXPECT_EQ(back.fingerprint(), inst.fingerprint());
  EXPECT_EQ(students_text(back), students_text(inst));
}

TEST(SynthGenerate, ZeroStudents) {
  SynthConfig config;
  config.male_students = 0;
  config.female_students = 0;
  const auto inst = synth_generate(config, 1);
  EXPECT_TRUE(inst.students().empty());
  EXPECT_EQ(students_text(inst), "student_id,sex,choice1,choice2,choice3,dist_h1,dist_h2,dist_h3,dist_h4,dist_h5,dist_h6,dist_h7,dist_h8,dist_h9\n");
}

TEST(SynthGenerate, BiasedChoicesPreferNearbySchools) {
  SynthConfig biased;
  biased.biased_probability = 1.0;
  SynthConfig uniform;
  uniform.biased_probability = 0.0;
  auto first_choice_distance = [](const LotteryInstance& inst) {
    Distance total = 0;
    for (std::size_t s = 0; s < inst.students().size(); ++s)
      total += inst.distance(s, inst.students()[s].choices[0]);
    return total;
  };
  EXPECT_LT(first_choice_distance(synth_generate(biased, 4)), first_choice_distance(synth_generate(uniform, 4)));
}

TEST(SynthGenerate, ConfigErrors) {
  auto code = [](const SynthConfig& c) {
    try {
      synth_generate(c, 1);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::invalid_instance;
  };
  SynthConfig c;
  c.side_km = 0;
  EXPECT_EQ(code(c), ErrorCode::config_error);
  c = {};
  c.biased_probability = 1.5;
  EXPECT_EQ(code(c), ErrorCode::config_error);
  c = {};
  c.distance_scale_km = -1;
  EXPECT_EQ(code(c), ErrorCode::config_error);
  c = {};
  c.schools = {{"a", 1, 0}, {"b", 1, 0}};
  EXPECT_EQ(code(c), ErrorCode::config_error);
}

}  // namespace
}  // namespace profmatch::lottery
