// Command-line front end. Exit codes: 0 success, 1 domain error (JSON on
// stderr), 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "profmatch/io.hpp"
#include "profmatch/lottery.hpp"
#include "profmatch/oracle.hpp"
#include "profmatch/profmatch.hpp"
#include "profmatch/report.hpp"
#include "profmatch/synth.hpp"
#include "profmatch/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace profmatch;

namespace {

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse_error, "cannot open instance file '" + path + "'");
  return read_instance(in);
}

std::vector<WeightedEdge> load_weight_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse_error, "cannot open weights file '" + path + "'");
  return read_weight_list(in);
}

json profile_json(const Profile& p) {
  json out = json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= std::numeric_limits<std::uint64_t>::max())
      out.push_back(static_cast<std::uint64_t>(p[i]));
    else
      out.push_back(to_string(p[i]));
  }
  return out;
}

json matching_json(const Matching& m) {
  json out = json::array();
  for (const auto& e : m.pairs()) out.push_back({e.a, e.b});
  return out;
}

// Rank of each edge from rank-indicator utilities over the first `r` positions.
RankSystem indicator_ranks(const Instance& inst, std::size_t r) {
  RankSystem ranks;
  for (EdgeId e = 0; e < inst.edge_count(); ++e) {
    const auto u = inst.utilities(e);
    std::uint32_t rank = 0;
    for (std::size_t i = 0; i < r; ++i) {
      if (u[i] == 0) continue;
      if (u[i] != 1 || rank != 0)
        throw Error(ErrorCode::invalid_instance,
                    "edge (" + std::to_string(inst.edge(e).a) + "," + std::to_string(inst.edge(e).b) +
                        ") is not a rank indicator");
      rank = static_cast<std::uint32_t>(i + 1);
    }
    if (rank == 0)
      throw Error(ErrorCode::invalid_instance, "edge (" + std::to_string(inst.edge(e).a) + "," +
                                                   std::to_string(inst.edge(e).b) + ") has no rank");
    ranks.rank.push_back(rank);
  }
  return ranks;
}

// Leading utilities bounded by 1 are the rank indicators.
std::size_t indicator_count(const Instance& inst) {
  std::size_t r = 0;
  while (r < inst.r() && inst.bounds()[r] == 1) ++r;
  return std::max<std::size_t>(r, 1);
}

// Supplied weights for `solve` and `check-weights`: rm reads the leading
// rank indicators, mcrm reads all but the last utility as rank indicators
// and the last as D - distance.
WeightAssignment named_weights(const Instance& inst, const std::string& spec) {
  if (spec == "rm") {
    const std::size_t r = indicator_count(inst);
    return rm_weights(inst, indicator_ranks(inst, r), r);
  }
  if (spec == "mcrm") {
    if (inst.r() < 2) throw Error(ErrorCode::missing_distance, "mcrm needs rank indicators plus a distance utility");
    const std::size_t r = inst.r() - 1;
    auto ranks = indicator_ranks(inst, r);
    ranks.max_distance = inst.bounds()[r];
    ranks.distance.emplace();
    for (EdgeId e = 0; e < inst.edge_count(); ++e) ranks.distance->push_back(ranks.max_distance - inst.utilities(e)[r]);
    return mcrm_weights(inst, ranks, r);
  }
  if (spec.rfind("file:", 0) == 0) return to_weight_assignment(load_weight_list(spec.substr(5)), inst.a_count(), inst.b_count());
  throw Error(ErrorCode::parse_error, "unknown weights '" + spec + "'; expected mixed-radix, rm, mcrm or file:<path>");
}

RadixBase parse_radix(const std::string& name) {
  return name == "2u+1" ? RadixBase::two_u_plus_one : RadixBase::matching_bound;
}

void print(const json& doc, const std::string& format, const std::string& text) {
  if (format == "json")
    std::cout << doc.dump() << '\n';
  else
    std::cout << text;
}

struct SolveOptions {
  std::string instance;
  std::string weights = "mixed-radix";
  std::string radix = "matching-bound";
  std::string emit = "both";
  std::string format = "text";
  std::string verify;
  bool oracle = false;
  bool unchecked = false;
};

int run_solve(const SolveOptions& o) {
  const auto inst = load_instance(o.instance);
  if (!o.verify.empty()) {
    std::ifstream in(o.verify);
    if (!in) throw Error(ErrorCode::parse_error, "cannot open '" + o.verify + "'");
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::parse_error, std::string("solution JSON: ") + e.what());
    }
    if (!doc.contains("matching"))
      throw Error(ErrorCode::parse_error, "solution JSON has no 'matching' field");
    Matching m(inst.a_count(), inst.b_count());
    for (const auto& pair : doc["matching"]) m.add(pair.at(0).get<std::size_t>(), pair.at(1).get<std::size_t>());
    const auto actual = profile_of(m, inst);
    const bool ok = !doc.contains("profile") || doc["profile"] == profile_json(actual);
    print({{"verified", ok}, {"profile", profile_json(actual)}}, o.format,
          std::string("verified: ") + (ok ? "yes" : "no") + "\nprofile: " + actual.to_string() + "\n");
    if (!ok) throw Error(ErrorCode::validation_error, "recorded profile differs from " + actual.to_string());
    return 0;
  }

  const auto result = o.weights == "mixed-radix"
                          ? optimal_matching(inst, parse_radix(o.radix))
                          : optimal_matching_with(inst, named_weights(inst, o.weights),
                                                  o.unchecked ? ConditionCheck::unchecked : ConditionCheck::checked);
  json doc = {{"max_weight_decimal", result.total_weight.str()},
              {"condition_checked", result.condition_checked},
              {"arithmetic", to_string(result.arithmetic)}};
  std::ostringstream text;
  if (o.emit != "profile") {
    doc["matching"] = matching_json(result.matching);
    text << "matching:";
    for (const auto& e : result.matching.pairs()) text << " (" << e.a << "," << e.b << ")";
    text << '\n';
  }
  if (o.emit != "matching") {
    doc["profile"] = profile_json(result.profile);
    text << "profile: " << result.profile.to_string() << '\n';
  }
  text << "max weight: " << result.total_weight.str() << '\n';
  if (o.oracle) {
    const auto best = brute_force_optimal(inst).first;
    const bool agrees = best == result.profile;
    doc["oracle_profile"] = profile_json(best);
    doc["oracle_agrees"] = agrees;
    text << "oracle: " << best.to_string() << (agrees ? " (agrees)" : " (DIFFERS)") << '\n';
  }
  print(doc, o.format, text.str());
  if (o.oracle && doc["oracle_agrees"] == false)
    throw Error(ErrorCode::validation_error, "reduction profile differs from the oracle");
  return 0;
}

struct CheckOptions {
  std::string instance;
  std::string weights = "mixed-radix";
  std::string radix = "2u+1";
  std::string format = "text";
  std::size_t samples = 0;
  std::uint64_t seed = 1;
};

int run_check(const CheckOptions& o) {
  const auto inst = load_instance(o.instance);
  const auto completed = complete(inst, Balance::square);
  const std::size_t n = completed.a_count();
  WeightAssignment w = o.weights == "mixed-radix" ? mixed_radix(completed, parse_radix(o.radix))
                                                  : named_weights(inst, o.weights);
  if (w.a_count() != n || w.b_count() != n) w = w.padded(n, n);
  const auto witness = o.samples ? satisfies_condition_sampled(completed, w, o.samples, o.seed)
                                 : satisfies_condition(completed, w);
  json doc = {{"holds", !witness}, {"exhaustive", o.samples == 0}};
  std::string text = witness ? "condition: violated " + witness->to_string() + "\n" : "condition: holds\n";
  if (witness)
    doc["counterexample"] = json::array({json::array({witness->ab.a, witness->ab.b}),
                                         json::array({witness->ab_prime.a, witness->ab_prime.b}),
                                         json::array({witness->a_prime_b.a, witness->a_prime_b.b})});
  print(doc, o.format, text);
  return 0;
}

struct RmCheckOptions {
  std::string weights;
  std::string mode = "grouped";
  std::string emit_ranks;
};

int run_rm_check(const RmCheckOptions& o) {
  const auto list = load_weight_list(o.weights);
  std::vector<Weight> values;
  for (const auto& e : list) values.push_back(e.weight);
  const bool ok = o.mode == "literal" ? is_rank_maximal(values) : is_rank_maximal_grouped(values);
  std::cout << "reducible: " << (ok ? "yes" : "no") << '\n';
  if (ok && !o.emit_ranks.empty()) {
    const auto ranks = to_ranks(values);
    std::ofstream out(o.emit_ranks);
    if (!out) throw Error(ErrorCode::parse_error, "cannot write '" + o.emit_ranks + "'");
    for (std::size_t k = 0; k < list.size(); ++k)
      out << list[k].edge.a << ' ' << list[k].edge.b << ' ' << ranks.rank[k] << '\n';
  }
  return 0;
}

struct LotteryOptions {
  std::string students;
  std::string schools;
  std::vector<std::string> algos{"baseline", "rm", "mcrm"};
  std::uint64_t seeds = 10;
  std::uint64_t first_seed = 1;
  std::string out;
  bool paper_formula = false;
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::parse_error, "cannot write '" + path.string() + "'");
  out << text;
}

int run_lottery(const LotteryOptions& o) {
  using namespace profmatch::lottery;
  const auto inst = load(o.students, o.schools);
  std::vector<AssignmentReport> reports;
  for (const auto& algo : o.algos) {
    if (algo == "baseline") {
      for (std::uint64_t k = 0; k < o.seeds; ++k) reports.push_back(baseline_greedy(inst, o.first_seed + k));
    } else if (algo == "rm") {
      reports.push_back(run_rm(inst));
    } else if (algo == "mcrm") {
      reports.push_back(run_mcrm(inst, o.paper_formula ? McrmWeights::closed_form : McrmWeights::mixed_radix));
    } else {
      throw Error(ErrorCode::config_error, "unknown algorithm '" + algo + "'");
    }
  }
  for (const auto& r : reports)
    if (const auto problems = check_assignment(inst, r); !problems.empty())
      throw Error(ErrorCode::validation_error, r.algo + ": " + problems.front());
  const auto table = distance_table_csv(inst, reports);
  if (!o.out.empty()) {
    fs::create_directories(o.out);
    write_file(fs::path(o.out) / "report.json", reports_json(inst, reports).dump(2) + "\n");
    write_file(fs::path(o.out) / "reports.csv", reports_csv(inst, reports));
    write_file(fs::path(o.out) / "distance_table.csv", table);
  }
  std::cout << table;
  return 0;
}

struct GenOptions {
  std::string out;
  std::uint64_t seed = 1;
  lottery::SynthConfig config;
};

int run_gen(const GenOptions& o) {
  const auto inst = lottery::synth_generate(o.config, o.seed);
  fs::create_directories(o.out);
  std::ostringstream schools, students;
  lottery::write_schools_csv(schools, inst.schools());
  lottery::write_students_csv(students, inst);
  write_file(fs::path(o.out) / "schools.csv", schools.str());
  write_file(fs::path(o.out) / "students.csv", students.str());
  std::cout << "wrote " << inst.students().size() << " students and " << inst.schools().size() << " schools to "
            << o.out << '\n';
  return 0;
}

int run_oracle(const std::string& path, const std::string& format) {
  const auto inst = load_instance(path);
  const auto [best, argmax] = brute_force_optimal(inst);
  json all = json::array();
  std::ostringstream text;
  text << "profile: " << best.to_string() << "\noptimal matchings: " << argmax.size() << '\n';
  for (const auto& m : argmax) {
    all.push_back(matching_json(m));
    text << " ";
    for (const auto& e : m.pairs()) text << " (" << e.a << "," << e.b << ")";
    text << '\n';
  }
  print({{"profile", profile_json(best)}, {"matchings", all}}, format, text.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Profile-based bipartite matching through maximum-weight reduction"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("profmatch ") + version + "\narithmetic: " + arithmetic_backend());

  const std::vector<std::string> formats{"text", "json"};
  const std::vector<std::string> radices{"matching-bound", "2u+1"};

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Profile-optimal matching of an instance");
  solve_cmd->add_option("--instance", solve.instance, "Instance file")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--weights", solve.weights, "mixed-radix | rm | mcrm | file:<path>");
  solve_cmd->add_option("--radix", solve.radix, "Digit base for mixed-radix weights")->check(CLI::IsMember(radices));
  solve_cmd->add_option("--emit", solve.emit, "matching | profile | both")
      ->check(CLI::IsMember({"matching", "profile", "both"}));
  solve_cmd->add_option("--format", solve.format)->check(CLI::IsMember(formats));
  solve_cmd->add_option("--verify", solve.verify, "Recompute the profile of a solution JSON instead of solving");
  solve_cmd->add_flag("--oracle", solve.oracle, "Cross-check against brute force");
  solve_cmd->add_flag("--unchecked", solve.unchecked, "Skip the weight-condition check for supplied weights");

  CheckOptions check;
  auto* check_cmd = app.add_subcommand("check-weights", "Check the weight condition for an instance");
  check_cmd->add_option("--instance", check.instance)->required()->check(CLI::ExistingFile);
  check_cmd->add_option("--weights", check.weights, "mixed-radix | rm | mcrm | file:<path>");
  check_cmd->add_option("--radix", check.radix)->check(CLI::IsMember(radices));
  check_cmd->add_option("--sample", check.samples, "Test this many random triples instead of all");
  check_cmd->add_option("--seed", check.seed);
  check_cmd->add_option("--format", check.format)->check(CLI::IsMember(formats));

  RmCheckOptions rm_check;
  auto* rm_cmd = app.add_subcommand("rm-check", "Can a weight list be solved as rank-maximal matching?");
  rm_cmd->add_option("--weights", rm_check.weights)->required()->check(CLI::ExistingFile);
  rm_cmd->add_option("--mode", rm_check.mode)->check(CLI::IsMember({"literal", "grouped"}));
  rm_cmd->add_option("--emit-ranks", rm_check.emit_ranks, "Write 'a b rank' lines when reducible");

  LotteryOptions lot;
  auto* lot_cmd = app.add_subcommand("lottery", "Run the school-choice assignment algorithms");
  lot_cmd->add_option("--students", lot.students)->required()->check(CLI::ExistingFile);
  lot_cmd->add_option("--schools", lot.schools)->required()->check(CLI::ExistingFile);
  lot_cmd->add_option("--algos", lot.algos)->delimiter(',')->check(CLI::IsMember({"baseline", "rm", "mcrm"}));
  lot_cmd->add_option("--seeds", lot.seeds, "Baseline runs, seeded first-seed, first-seed + 1, ...");
  lot_cmd->add_option("--first-seed", lot.first_seed);
  lot_cmd->add_option("--out", lot.out, "Directory for report.json, reports.csv, distance_table.csv");
  lot_cmd->add_flag("--paper-formula", lot.paper_formula, "MCRM with the closed-form weights");

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic lottery city");
  gen_cmd->add_option("--out", gen.out)->required();
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--male", gen.config.male_students);
  gen_cmd->add_option("--female", gen.config.female_students);
  gen_cmd->add_option("--side-km", gen.config.side_km);
  gen_cmd->add_option("--biased", gen.config.biased_probability, "Share of distance-biased students");
  gen_cmd->add_option("--scale-km", gen.config.distance_scale_km);

  std::string oracle_instance, oracle_format = "text";
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force optimal profile of a small instance");
  oracle_cmd->add_option("--instance", oracle_instance)->required()->check(CLI::ExistingFile);
  oracle_cmd->add_option("--format", oracle_format)->check(CLI::IsMember(formats));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve_cmd) return run_solve(solve);
    if (*check_cmd) return run_check(check);
    if (*rm_cmd) return run_rm_check(rm_check);
    if (*lot_cmd) return run_lottery(lot);
    if (*gen_cmd) return run_gen(gen);
    if (*oracle_cmd) return run_oracle(oracle_instance, oracle_format);
  } catch (const ConditionViolated& e) {
    const auto& w = e.witness();
    std::cerr << json{{"error", to_string(e.code())},
                      {"message", e.what()},
                      {"counterexample", json::array({json::array({w.ab.a, w.ab.b}),
                                                      json::array({w.ab_prime.a, w.ab_prime.b}),
                                                      json::array({w.a_prime_b.a, w.a_prime_b.b})})}}
                     .dump()
              << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << json{{"error", to_string(e.code())}, {"message", e.what()}}.dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
  return 2;
}
