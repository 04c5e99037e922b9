#pragma once

// Synthetic lottery data: schools and students scattered over a square city,
// Euclidean commuting distances, and a choice model mixing distance-biased
// and uniform picks of three eligible schools.

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "profmatch/error.hpp"
#include "profmatch/lottery.hpp"

namespace profmatch::lottery {

/// Nine sex-segregated schools: three male-only, three female-only, three
/// mixed; 715 male and 699 female seats.
inline std::vector<School> default_school_quotas() {
  return {
      {"h1", 154, 0}, {"h2", 161, 0}, {"h3", 172, 0}, {"h4", 0, 186}, {"h5", 0, 170},
      {"h6", 0, 172}, {"h7", 80, 73}, {"h8", 77, 46}, {"h9", 71, 52},
  };
}

struct SynthConfig {
  std::vector<School> schools = default_school_quotas();
  std::uint64_t male_students = 715;
  std::uint64_t female_students = 699;
  double side_km = 8.0;
  /// Probability that a student's choices follow distance; otherwise uniform.
  double biased_probability = 0.8;
  /// Length scale of the exp(-d / scale) preference for nearby schools.
  double distance_scale_km = 2.0;
};

namespace detail {

inline double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::string padded_id(char prefix, std::uint64_t n, std::size_t width) {
  std::ostringstream out;
  out << prefix << std::setw(static_cast<int>(width)) << std::setfill('0') << n;
  return out.str();
}

}  // namespace detail

/// Deterministic for a fixed seed; the result passes load validation.
inline LotteryInstance synth_generate(const SynthConfig& config, std::uint64_t seed) {
  if (!(config.side_km > 0.0)) throw Error(ErrorCode::config_error, "side_km must be positive");
  if (!(config.distance_scale_km > 0.0)) throw Error(ErrorCode::config_error, "distance_scale_km must be positive");
  if (!(config.biased_probability >= 0.0 && config.biased_probability <= 1.0))
    throw Error(ErrorCode::config_error, "biased_probability must lie in [0, 1]");
  for (const Sex sex : {Sex::male, Sex::female}) {
    const auto students = sex == Sex::male ? config.male_students : config.female_students;
    std::size_t open = 0;
    for (const auto& h : config.schools) open += h.quota(sex) > 0;
    if (students > 0 && open < choice_count)
      throw Error(ErrorCode::config_error, "fewer than three schools admit " + std::string(to_string(sex)) + " students");
  }

  std::mt19937_64 rng(seed);
  struct Point {
    double x, y;
  };
  std::vector<Point> school_at;
  for (std::size_t h = 0; h < config.schools.size(); ++h)
    school_at.push_back({detail::unit(rng) * config.side_km, detail::unit(rng) * config.side_km});

  const std::uint64_t total = config.male_students + config.female_students;
  const std::size_t width = std::to_string(total).size();
  std::vector<Student> students;
  students.reserve(total);
  for (std::uint64_t k = 0; k < total; ++k) {
    Student st;
    st.id = detail::padded_id('s', k + 1, width);
    st.sex = k < config.male_students ? Sex::male : Sex::female;
    const Point home{detail::unit(rng) * config.side_km, detail::unit(rng) * config.side_km};
    st.distance.assign(config.schools.size(), std::nullopt);
    std::vector<std::size_t> open;
    std::vector<double> km;
    for (std::size_t h = 0; h < config.schools.size(); ++h) {
      if (config.schools[h].quota(st.sex) == 0) continue;
      const double d = std::hypot(home.x - school_at[h].x, home.y - school_at[h].y);
      st.distance[h] = static_cast<Distance>(std::llround(d * 100.0));
      open.push_back(h);
      km.push_back(d);
    }
    const bool biased = detail::unit(rng) < config.biased_probability;
    std::vector<double> pull(open.size());
    for (std::size_t i = 0; i < open.size(); ++i)
      pull[i] = biased ? std::exp(-km[i] / config.distance_scale_km) : 1.0;
    for (std::size_t c = 0; c < choice_count; ++c) {
      double sum = 0.0;
      for (const double p : pull) sum += p;
      double target = detail::unit(rng) * sum;
      std::size_t pick = 0;
      // Last still-available index absorbs rounding at the top of the range.
      for (std::size_t i = 0; i < open.size(); ++i) {
        if (pull[i] <= 0.0) continue;
        pick = i;
        if (target < pull[i]) break;
        target -= pull[i];
      }
      st.choices[c] = open[pick];
      pull[pick] = 0.0;
    }
    students.push_back(std::move(st));
  }
  return LotteryInstance(config.schools, std::move(students));
}

inline void write_schools_csv(std::ostream& out, const std::vector<School>& schools) {
  out << "school_id,male_quota,female_quota\n";
  for (const auto& h : schools) out << h.id << ',' << h.male_quota << ',' << h.female_quota << '\n';
}

inline void write_students_csv(std::ostream& out, const LotteryInstance& inst) {
  out << "student_id,sex,choice1,choice2,choice3";
  for (const auto& h : inst.schools()) out << ",dist_" << h.id;
  out << '\n';
  for (const auto& st : inst.students()) {
    out << st.id << ',' << to_string(st.sex);
    for (const auto c : st.choices) out << ',' << inst.schools()[c].id;
    for (const auto& d : st.distance) {
      out << ',';
      if (d) out << *d;
    }
    out << '\n';
  }
}

}  // namespace profmatch::lottery
