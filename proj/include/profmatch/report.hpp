#pragma once

// JSON and CSV rendering of lottery assignment reports for external plotting.

#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "profmatch/error.hpp"
#include "profmatch/lottery.hpp"

namespace profmatch::lottery {

/// Hundredths of a kilometre rendered as kilometres with two decimals.
inline std::string format_km(Distance hundredths) {
  const auto frac = hundredths % 100;
  return std::to_string(hundredths / 100) + "." + (frac < 10 ? "0" : "") + std::to_string(frac);
}

/// Mean of `total` over `count` runs in hundredths, rounded half up.
inline Distance mean_hundredths(Distance total, std::uint64_t count) {
  if (count == 0) return 0;
  return (2 * total + count) / (2 * count);
}

inline void check_same_instance(const LotteryInstance& inst, std::span<const AssignmentReport> reports) {
  for (const auto& r : reports)
    if (r.instance_fingerprint != inst.fingerprint())
      throw Error(ErrorCode::mixed_instances, "report '" + r.algo + "' was produced on a different instance");
}

inline nlohmann::json report_json(const LotteryInstance& inst, const AssignmentReport& report) {
  nlohmann::json assignments = nlohmann::json::array();
  for (std::size_t s = 0; s < report.school_of_student.size(); ++s) {
    const auto& h = report.school_of_student[s];
    assignments.push_back({{"student", inst.students()[s].id},
                           {"school", h ? nlohmann::json(inst.schools()[*h].id) : nlohmann::json(nullptr)}});
  }
  nlohmann::json out = {
      {"algo", report.algo},
      {"choice_counts", report.choice_counts},
      {"total_km", static_cast<double>(report.total_distance) / 100.0},
      {"assignments", std::move(assignments)},
  };
  if (report.seed) out["seed"] = *report.seed;
  out["unassigned"] = report.unassigned;
  return out;
}

inline nlohmann::json reports_json(const LotteryInstance& inst, std::span<const AssignmentReport> reports) {
  check_same_instance(inst, reports);
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : reports) out.push_back(report_json(inst, r));
  return out;
}

/// One row per report: algo,seed,choice1,choice2,choice3,others,unassigned,total_km
inline std::string reports_csv(const LotteryInstance& inst, std::span<const AssignmentReport> reports) {
  check_same_instance(inst, reports);
  std::ostringstream out;
  out << "algo,seed,choice1,choice2,choice3,others,unassigned,total_km\n";
  for (const auto& r : reports) {
    out << r.algo << ',' << (r.seed ? std::to_string(*r.seed) : "");
    for (const auto c : r.choice_counts) out << ',' << c;
    out << ',' << r.unassigned << ',' << format_km(r.total_distance) << '\n';
  }
  return out.str();
}

/// Per-algorithm mean total distance across runs, in first-appearance order:
/// algo,runs,total_km
inline std::string distance_table_csv(const LotteryInstance& inst, std::span<const AssignmentReport> reports) {
  check_same_instance(inst, reports);
  std::vector<std::string> order;
  std::map<std::string, std::pair<Distance, std::uint64_t>> totals;
  for (const auto& r : reports) {
    auto [it, inserted] = totals.try_emplace(r.algo, 0, 0);
    if (inserted) order.push_back(r.algo);
    it->second.first += r.total_distance;
    ++it->second.second;
  }
  std::ostringstream out;
  out << "algo,runs,total_km\n";
  for (const auto& algo : order) {
    const auto [sum, runs] = totals[algo];
    out << algo << ',' << runs << ',' << format_km(mean_hundredths(sum, runs)) << '\n';
  }
  return out.str();
}

}  // namespace profmatch::lottery
