#pragma once

// School-choice lottery: sex-segregated school quotas, three ranked choices per
// student, integer commuting distances in hundredths of a kilometre.
// Assignment algorithms: a two-stage greedy baseline, rank-maximal (RM) and
// minimum-cost rank-maximal (MCRM) matching through the reduction.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "profmatch/core.hpp"
#include "profmatch/error.hpp"
#include "profmatch/reduce.hpp"
#include "profmatch/weights.hpp"

namespace profmatch::lottery {

/// Distance in hundredths of a kilometre.
using Distance = std::uint64_t;

inline constexpr std::size_t choice_count = 3;
/// Ranks 1..3 are the listed choices; every other eligible school is rank 4.
inline constexpr std::uint32_t rank_count = 4;

enum class Sex { male, female };

inline std::string_view to_string(Sex s) { return s == Sex::male ? "M" : "F"; }

struct School {
  std::string id;
  std::uint32_t male_quota = 0;
  std::uint32_t female_quota = 0;

  std::uint32_t quota(Sex s) const { return s == Sex::male ? male_quota : female_quota; }
};

struct Student {
  std::string id;
  Sex sex = Sex::male;
  std::array<std::size_t, choice_count> choices{};  // school indices, best first
  std::vector<std::optional<Distance>> distance;     // per school index
};

class LotteryInstance {
 public:
  LotteryInstance() = default;
  LotteryInstance(std::vector<School> schools, std::vector<Student> students)
      : schools_(std::move(schools)), students_(std::move(students)) {
    validate();
  }

  const std::vector<School>& schools() const noexcept { return schools_; }
  const std::vector<Student>& students() const noexcept { return students_; }

  bool eligible(std::size_t student, std::size_t school) const {
    return schools_[school].quota(students_[student].sex) > 0;
  }

  /// 1..3 for listed choices, 4 for any other eligible school, 0 if ineligible.
  std::uint32_t rank(std::size_t student, std::size_t school) const {
    if (!eligible(student, school)) return 0;
    const auto& c = students_[student].choices;
    for (std::size_t k = 0; k < choice_count; ++k)
      if (c[k] == school) return static_cast<std::uint32_t>(k + 1);
    return rank_count;
  }

  Distance distance(std::size_t student, std::size_t school) const {
    return *students_[student].distance[school];
  }

  /// Largest distance over eligible student/school pairs (D).
  Distance max_distance() const {
    Distance d = 0;
    for (std::size_t s = 0; s < students_.size(); ++s)
      for (std::size_t h = 0; h < schools_.size(); ++h)
        if (eligible(s, h)) d = std::max(d, distance(s, h));
    return d;
  }

  std::uint64_t total_seats(Sex s) const {
    std::uint64_t n = 0;
    for (const auto& h : schools_) n += h.quota(s);
    return n;
  }

  /// FNV-1a digest of ids, quotas and sexes; reports from one instance share it.
  std::uint64_t fingerprint() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::string_view s) {
      for (const unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
      }
      h ^= 0xff;
      h *= 1099511628211ULL;
    };
    for (const auto& s : schools_) {
      mix(s.id);
      mix(std::to_string(s.male_quota));
      mix(std::to_string(s.female_quota));
    }
    for (const auto& s : students_) {
      mix(s.id);
      mix(to_string(s.sex));
    }
    return h;
  }

  std::optional<std::size_t> school_index(std::string_view id) const {
    for (std::size_t h = 0; h < schools_.size(); ++h)
      if (schools_[h].id == id) return h;
    return std::nullopt;
  }

 private:
  void validate() const {
    std::map<std::string, int> seen;
    for (const auto& h : schools_)
      if (seen[h.id]++)
        throw Error(ErrorCode::validation_error, "duplicate school id '" + h.id + "'");
    seen.clear();
    for (std::size_t s = 0; s < students_.size(); ++s) {
      const auto& st = students_[s];
      if (seen[st.id]++) throw Error(ErrorCode::validation_error, "duplicate student id '" + st.id + "'");
      if (st.distance.size() != schools_.size())
        throw Error(ErrorCode::validation_error, "student '" + st.id + "' lacks a distance column per school");
      for (std::size_t k = 0; k < choice_count; ++k) {
        const std::size_t h = st.choices[k];
        if (h >= schools_.size())
          throw Error(ErrorCode::validation_error, "student '" + st.id + "' chooses an unknown school");
        if (!eligible(s, h))
          throw Error(ErrorCode::validation_error, "student '" + st.id + "' chooses school '" +
                                                       schools_[h].id + "' which has no seats for their sex");
        for (std::size_t j = 0; j < k; ++j)
          if (st.choices[j] == h)
            throw Error(ErrorCode::validation_error, "student '" + st.id + "' lists school '" +
                                                         schools_[h].id + "' twice");
      }
      for (std::size_t h = 0; h < schools_.size(); ++h)
        if (eligible(s, h) && !st.distance[h])
          throw Error(ErrorCode::validation_error, "student '" + st.id + "' has no distance to eligible school '" +
                                                       schools_[h].id + "'");
    }
  }

  std::vector<School> schools_;
  std::vector<Student> students_;
};

// ---------------------------------------------------------------------------
// CSV ingestion

namespace detail {

inline std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline std::uint64_t csv_uint(const std::string& tok, std::size_t line, std::string_view what) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw Error(ErrorCode::parse_error,
                "line " + std::to_string(line) + ": " + std::string(what) + " must be a non-negative integer, got '" + tok + "'");
  try {
    return std::stoull(tok);
  } catch (const std::out_of_range&) {
    throw Error(ErrorCode::parse_error, "line " + std::to_string(line) + ": " + std::string(what) + " out of range");
  }
}

// Non-blank lines with their 1-based line numbers.
inline std::vector<std::pair<std::size_t, std::string>> csv_lines(std::istream& in) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::string text;
  for (std::size_t n = 1; std::getline(in, text); ++n) {
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (!trim(text).empty()) out.emplace_back(n, text);
  }
  return out;
}

}  // namespace detail

/// `school_id,male_quota,female_quota` with a header row.
inline std::vector<School> read_schools_csv(std::istream& in) {
  const auto lines = detail::csv_lines(in);
  if (lines.empty()) throw Error(ErrorCode::parse_error, "schools file is empty");
  const auto header = detail::split_csv(lines[0].second);
  if (header != std::vector<std::string>{"school_id", "male_quota", "female_quota"})
    throw Error(ErrorCode::parse_error, "line " + std::to_string(lines[0].first) +
                                            ": expected header 'school_id,male_quota,female_quota'");
  std::vector<School> out;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto [n, text] = lines[k];
    const auto f = detail::split_csv(text);
    if (f.size() != 3 || f[0].empty())
      throw Error(ErrorCode::parse_error, "line " + std::to_string(n) + ": expected 3 fields");
    out.push_back({f[0], static_cast<std::uint32_t>(detail::csv_uint(f[1], n, "male_quota")),
                   static_cast<std::uint32_t>(detail::csv_uint(f[2], n, "female_quota"))});
  }
  return out;
}

/// `student_id,sex,choice1,choice2,choice3,dist_<school>...` with a header row.
/// Distances are integer hundredths of a kilometre; blank means ineligible.
/// An empty file yields no students.
inline std::vector<Student> read_students_csv(std::istream& in, const std::vector<School>& schools) {
  const auto lines = detail::csv_lines(in);
  if (lines.empty()) return {};
  const auto header = detail::split_csv(lines[0].second);
  const std::vector<std::string> fixed{"student_id", "sex", "choice1", "choice2", "choice3"};
  if (header.size() < fixed.size() || !std::equal(fixed.begin(), fixed.end(), header.begin()))
    throw Error(ErrorCode::parse_error, "line " + std::to_string(lines[0].first) +
                                            ": expected header 'student_id,sex,choice1,choice2,choice3,dist_...'");
  // Column -> school index.
  std::vector<std::size_t> dist_school;
  for (std::size_t c = fixed.size(); c < header.size(); ++c) {
    const auto& name = header[c];
    if (name.rfind("dist_", 0) != 0)
      throw Error(ErrorCode::parse_error, "line " + std::to_string(lines[0].first) + ": unexpected column '" + name + "'");
    const auto id = name.substr(5);
    const auto it = std::find_if(schools.begin(), schools.end(), [&](const School& h) { return h.id == id; });
    if (it == schools.end())
      throw Error(ErrorCode::parse_error, "line " + std::to_string(lines[0].first) + ": unknown school in column '" + name + "'");
    dist_school.push_back(static_cast<std::size_t>(it - schools.begin()));
  }
  std::vector<Student> out;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto [n, text] = lines[k];
    const auto f = detail::split_csv(text);
    if (f.size() != header.size())
      throw Error(ErrorCode::parse_error, "line " + std::to_string(n) + ": expected " +
                                              std::to_string(header.size()) + " fields, got " + std::to_string(f.size()));
    Student st;
    st.id = f[0];
    if (st.id.empty()) throw Error(ErrorCode::parse_error, "line " + std::to_string(n) + ": empty student id");
    if (f[1] == "M" || f[1] == "m" || f[1] == "male")
      st.sex = Sex::male;
    else if (f[1] == "F" || f[1] == "f" || f[1] == "female")
      st.sex = Sex::female;
    else
      throw Error(ErrorCode::parse_error, "line " + std::to_string(n) + ": sex must be M or F, got '" + f[1] + "'");
    for (std::size_t c = 0; c < choice_count; ++c) {
      const auto it = std::find_if(schools.begin(), schools.end(), [&](const School& h) { return h.id == f[2 + c]; });
      if (it == schools.end())
        throw Error(ErrorCode::validation_error, "line " + std::to_string(n) + ": unknown school '" + f[2 + c] + "'");
      st.choices[c] = static_cast<std::size_t>(it - schools.begin());
    }
    st.distance.assign(schools.size(), std::nullopt);
    for (std::size_t c = 0; c < dist_school.size(); ++c) {
      const auto& tok = f[fixed.size() + c];
      if (!tok.empty()) st.distance[dist_school[c]] = detail::csv_uint(tok, n, header[fixed.size() + c]);
    }
    out.push_back(std::move(st));
  }
  return out;
}

inline LotteryInstance load(std::istream& students, std::istream& schools) {
  auto school_list = read_schools_csv(schools);
  auto student_list = read_students_csv(students, school_list);
  return LotteryInstance(std::move(school_list), std::move(student_list));
}

inline LotteryInstance load(const std::string& students_path, const std::string& schools_path) {
  std::ifstream students(students_path);
  if (!students) throw Error(ErrorCode::parse_error, "cannot open students file '" + students_path + "'");
  std::ifstream schools(schools_path);
  if (!schools) throw Error(ErrorCode::parse_error, "cannot open schools file '" + schools_path + "'");
  return load(students, schools);
}

// ---------------------------------------------------------------------------
// Seat expansion

/// One B-side vertex per seat; edges join students to every seat open to
/// their sex. The instance carries the four rank-indicator utilities and the
/// rank system carries ranks, distances and D.
struct SeatExpansion {
  Instance instance;
  RankSystem ranks;
  std::vector<std::size_t> seat_school;
};

inline SeatExpansion expand_seats(const LotteryInstance& inst) {
  SeatExpansion out;
  std::vector<Sex> seat_sex;
  for (std::size_t h = 0; h < inst.schools().size(); ++h)
    for (const Sex s : {Sex::male, Sex::female})
      for (std::uint32_t k = 0; k < inst.schools()[h].quota(s); ++k) {
        out.seat_school.push_back(h);
        seat_sex.push_back(s);
      }
  const std::size_t students = inst.students().size();
  out.instance = Instance(students, out.seat_school.size(), std::vector<Utility>(rank_count, 1));
  out.ranks.distance.emplace();
  out.ranks.max_distance = inst.max_distance();
  std::array<Utility, rank_count> u{};
  for (std::size_t s = 0; s < students; ++s)
    for (std::size_t seat = 0; seat < out.seat_school.size(); ++seat) {
      if (seat_sex[seat] != inst.students()[s].sex) continue;
      const std::size_t h = out.seat_school[seat];
      const std::uint32_t rank = inst.rank(s, h);
      u.fill(0);
      u[rank - 1] = 1;
      out.instance.add_edge(s, seat, u);
      out.ranks.rank.push_back(rank);
      out.ranks.distance->push_back(inst.distance(s, h));
    }
  return out;
}

// ---------------------------------------------------------------------------
// Assignment reports

struct AssignmentReport {
  std::string algo;
  std::optional<std::uint64_t> seed;
  /// Students assigned to choice 1, 2, 3 and to any other school.
  std::array<std::uint64_t, 4> choice_counts{};
  std::uint64_t unassigned = 0;
  Distance total_distance = 0;
  std::vector<std::optional<std::size_t>> school_of_student;
  std::uint64_t instance_fingerprint = 0;

  Profile profile() const {
    Profile p(choice_counts.size());
    for (std::size_t k = 0; k < choice_counts.size(); ++k) p[k] = choice_counts[k];
    return p;
  }
};

inline AssignmentReport make_report(const LotteryInstance& inst, std::string algo,
                                    std::vector<std::optional<std::size_t>> school_of_student) {
  AssignmentReport out;
  out.algo = std::move(algo);
  out.instance_fingerprint = inst.fingerprint();
  for (std::size_t s = 0; s < school_of_student.size(); ++s) {
    if (!school_of_student[s]) {
      ++out.unassigned;
      continue;
    }
    const std::size_t h = *school_of_student[s];
    ++out.choice_counts[inst.rank(s, h) - 1];
    out.total_distance += inst.distance(s, h);
  }
  out.school_of_student = std::move(school_of_student);
  return out;
}

/// Empty when the report respects sex eligibility and every per-sex quota;
/// otherwise one message per violation.
inline std::vector<std::string> check_assignment(const LotteryInstance& inst, const AssignmentReport& report) {
  std::vector<std::string> problems;
  std::vector<std::array<std::uint64_t, 2>> fill(inst.schools().size(), {0, 0});
  for (std::size_t s = 0; s < report.school_of_student.size(); ++s) {
    const auto& h = report.school_of_student[s];
    if (!h) continue;
    if (!inst.eligible(s, *h))
      problems.push_back("student '" + inst.students()[s].id + "' placed at ineligible school '" +
                         inst.schools()[*h].id + "'");
    ++fill[*h][inst.students()[s].sex == Sex::male ? 0 : 1];
  }
  for (std::size_t h = 0; h < inst.schools().size(); ++h)
    for (const Sex sex : {Sex::male, Sex::female})
      if (fill[h][sex == Sex::male ? 0 : 1] > inst.schools()[h].quota(sex))
        problems.push_back("school '" + inst.schools()[h].id + "' over its " + std::string(to_string(sex)) + " quota");
  return problems;
}

// ---------------------------------------------------------------------------
// Algorithms

namespace detail {

// Fisher-Yates driven directly by the engine so the permutation is identical
// across standard library implementations.
inline void shuffle(std::vector<std::size_t>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

inline std::vector<std::optional<std::size_t>> seats_to_schools(const SeatExpansion& exp, const Matching& m,
                                                                std::size_t students) {
  std::vector<std::optional<std::size_t>> out(students);
  for (const Edge& pair : m.pairs()) out[pair.a] = exp.seat_school[pair.b];
  return out;
}

}  // namespace detail

/// Stage 1 fills floor(0.8 * quota) seats per school and sex: students in a
/// seed-shuffled order take their best listed choice with stage-1 room left.
/// Stage 2 opens the remaining seats: unplaced students, reshuffled, take the
/// nearest eligible school with room (ties by school order). Students left
/// without a seat are counted in `unassigned`.
inline AssignmentReport baseline_greedy(const LotteryInstance& inst, std::uint64_t seed) {
  const auto& schools = inst.schools();
  const auto& students = inst.students();
  auto sex_slot = [](Sex s) { return s == Sex::male ? 0 : 1; };
  std::vector<std::array<std::uint64_t, 2>> room(schools.size());
  for (std::size_t h = 0; h < schools.size(); ++h)
    for (const Sex s : {Sex::male, Sex::female}) room[h][sex_slot(s)] = schools[h].quota(s) * 4ULL / 5ULL;

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(students.size());
  std::iota(order.begin(), order.end(), 0);
  detail::shuffle(order, rng);

  std::vector<std::optional<std::size_t>> placed(students.size());
  for (const std::size_t s : order) {
    const int slot = sex_slot(students[s].sex);
    for (const std::size_t h : students[s].choices) {
      if (room[h][slot] > 0) {
        --room[h][slot];
        placed[s] = h;
        break;
      }
    }
  }

  std::vector<std::array<std::uint64_t, 2>> filled(schools.size(), {0, 0});
  for (std::size_t s = 0; s < students.size(); ++s)
    if (placed[s]) ++filled[*placed[s]][sex_slot(students[s].sex)];
  for (std::size_t h = 0; h < schools.size(); ++h)
    for (const Sex s : {Sex::male, Sex::female})
      room[h][sex_slot(s)] = schools[h].quota(s) - filled[h][sex_slot(s)];

  std::vector<std::size_t> rest;
  for (const std::size_t s : order)
    if (!placed[s]) rest.push_back(s);
  std::sort(rest.begin(), rest.end());
  detail::shuffle(rest, rng);
  for (const std::size_t s : rest) {
    std::vector<std::size_t> by_distance;
    for (std::size_t h = 0; h < schools.size(); ++h)
      if (inst.eligible(s, h)) by_distance.push_back(h);
    std::stable_sort(by_distance.begin(), by_distance.end(),
                     [&](std::size_t x, std::size_t y) { return inst.distance(s, x) < inst.distance(s, y); });
    const int slot = sex_slot(students[s].sex);
    for (const std::size_t h : by_distance) {
      if (room[h][slot] > 0) {
        --room[h][slot];
        placed[s] = h;
        break;
      }
    }
  }
  auto report = make_report(inst, "baseline", std::move(placed));
  report.seed = seed;
  return report;
}

/// Rank-maximal assignment with the 2^(5 - rank) - 1 ladder (15/7/3/1).
inline AssignmentReport run_rm(const LotteryInstance& inst) {
  const auto exp = expand_seats(inst);
  const auto weights = rm_weights(exp.instance, exp.ranks, rank_count);
  const auto result = optimal_matching_with(exp.instance, weights, ConditionCheck::checked);
  return make_report(inst, "rm", detail::seats_to_schools(exp, result.matching, inst.students().size()));
}

enum class McrmWeights {
  mixed_radix,    // utilities <rank indicators..., D - d(e)>, always valid
  closed_form,    // (D + 1) 2^(4 - rank) - D - d(e), checked before solving
};

/// The five-utility instance behind MCRM: four rank indicators then D - d(e).
inline Instance mcrm_instance(const SeatExpansion& exp) {
  std::vector<Utility> bounds(rank_count, 1);
  bounds.push_back(exp.ranks.max_distance);
  Instance out(exp.instance.a_count(), exp.instance.b_count(), bounds);
  std::vector<Utility> u(rank_count + 1);
  for (EdgeId e = 0; e < exp.instance.edge_count(); ++e) {
    const auto ranks = exp.instance.utilities(e);
    std::copy(ranks.begin(), ranks.end(), u.begin());
    u[rank_count] = exp.ranks.max_distance - (*exp.ranks.distance)[e];
    out.add_edge(exp.instance.edge(e).a, exp.instance.edge(e).b, u);
  }
  return out;
}

/// Rank-maximal assignment with the least total distance among rank-maximal
/// assignments.
inline AssignmentReport run_mcrm(const LotteryInstance& inst, McrmWeights mode = McrmWeights::mixed_radix) {
  const auto exp = expand_seats(inst);
  const auto five = mcrm_instance(exp);
  ReduceResult result;
  if (mode == McrmWeights::mixed_radix) {
    result = optimal_matching(five);
  } else {
    result = optimal_matching_with(five, mcrm_weights(exp.instance, exp.ranks, rank_count), ConditionCheck::checked);
  }
  return make_report(inst, "mcrm", detail::seats_to_schools(exp, result.matching, inst.students().size()));
}

}  // namespace profmatch::lottery
