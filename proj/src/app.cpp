#include "ddvv/app.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "ddvv/curvature.hpp"
#include "ddvv/inequal.hpp"
#include "ddvv/io.hpp"
#include "ddvv/runlog.hpp"
#include "ddvv/search.hpp"
#include "ddvv/suite.hpp"

namespace ddvv {

namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json gap_json(const GapReport& g, double tol) {
  return json{{"lhs", g.lhs},     {"rhs", g.rhs},     {"gap", g.gap},
              {"ratio", g.ratio}, {"scale", g.scale}, {"holds", g.holds(tol)}};
}

json point_json(const SearchPoint& p) {
  if (const auto* t = std::get_if<MatTuple>(&p)) return tuple_to_json(*t);
  return frame_to_json(std::get<Frame4>(p));
}

void require_symmetric(const MatTuple& t, const std::string& what) {
  if (!t.all_of(MatKind::symmetric)) throw PreconditionError(what + " takes symmetric matrices only");
}

FundForm form_of(const MatrixFile& file) {
  if (file.form) return *file.form;
  require_symmetric(*file.tuple, "curvature checks");
  return FundForm::from_tuple(*file.tuple, file.c);
}

// --- check -----------------------------------------------------------------

CommandOutcome run_check(const json& cfg) {
  const std::string path = cfg.at("input").get<std::string>();
  const std::string name = cfg.at("inequality").get<std::string>();
  const double tol = cfg.at("tol").get<double>();

  const std::string bytes = read_text_file(path);
  const MatrixFile file = parse_matrix_file(bytes);
  const MatTuple& t = *file.tuple;

  CommandOutcome out;
  out.input_hash = git_blob_hash(bytes);
  json& p = out.payload;
  p["inequality"] = name;
  bool holds = true;

  if (name == "psq") {
    if (t.size() != 2 || t.n() != 3) throw PreconditionError("psq takes two 3x3 matrices");
    require_symmetric(t, "psq");
    const Psq3Report r = psq_gap(t.mat(0), t.mat(1));
    holds = r.gap() >= -tol * r.scale;
    p["r_sq"] = r.r_sq;
    p["mu_sq"] = r.mu_sq;
    p["m0"] = r.m0;
    p["condition_holds"] = r.condition_holds;
    p["alt_condition_holds"] = r.alt_condition_holds;
    p["lhs"] = r.lhs;
    p["rhs"] = r.rhs;
    p["alt_rhs"] = r.alt_rhs;
    p["gap"] = r.gap();
    p["alt_gap"] = r.alt_gap();
    p["scale"] = r.scale;
    p["holds"] = holds;
    p["alt_holds"] = r.alt_gap() >= -tol * r.scale;
  } else {
    GapReport g;
    if (name == "ddvv") {
      require_symmetric(t, "ddvv");
      g = ddvv_gap(t);
    } else if (name == "ddvv-mixed") {
      g = ddvv_gap(t);
    } else if (name == "bw") {
      if (t.size() != 2) throw PreconditionError("bw takes exactly two matrices");
      g = bw_gap(t.mat(0), t.mat(1));
    } else if (name == "lili") {
      g = lili_gap(t);
    } else if (name == "eq1a") {
      g = eq1a_gap(form_of(file));
    } else if (name == "geometric") {
      g = geometric_gap(form_of(file));
    } else if (name == "chen") {
      g = chen_gap(form_of(file));
    } else {
      throw PreconditionError("unknown inequality '" + name + "'");
    }
    p.update(gap_json(g, tol));
    holds = g.holds(tol);
  }

  if (!holds) {
    p["counterexample"] = file.form ? form_to_json(*file.form) : tuple_to_json(t);
    out.exit_status = exit_violation;
  }
  return out;
}

// --- search ----------------------------------------------------------------

SearchConfig search_config(const json& cfg) {
  SearchConfig c;
  c.target = parse_target(cfg.at("target").get<std::string>());
  c.n = cfg.at("n").get<std::size_t>();
  c.m_sym = cfg.at("m_sym").get<std::size_t>();
  c.m_skew = cfg.at("m_skew").get<std::size_t>();
  c.comass_m = cfg.at("comass_m").get<std::size_t>();
  c.restarts = cfg.at("restarts").get<std::size_t>();
  c.max_iters = cfg.at("iters").get<std::size_t>();
  c.base_seed = cfg.at("seed").get<std::uint64_t>();
  c.traceless = cfg.at("traceless").get<bool>();
  c.validate();
  return c;
}

GapFunction gap_function(Target target) {
  switch (target) {
    case Target::bw:
      return [](const MatTuple& t) { return bw_gap(t.mat(0), t.mat(1)); };
    case Target::lili:
      return lili_gap;
    default:
      return ddvv_gap;
  }
}

CommandOutcome run_search_cmd(const json& cfg) {
  const SearchConfig config = search_config(cfg);
  const double tol = cfg.at("tol").get<double>();
  const std::size_t jobs = cfg.value("jobs", std::size_t{1});
  const SearchRun run = run_search(config, jobs);

  CommandOutcome out;
  json& p = out.payload;
  p["target"] = std::string(to_string(config.target));
  p["best_value"] = run.best_value;
  p["best_restart"] = run.best_restart;
  json restarts = json::array();
  for (const auto& r : run.records) {
    restarts.push_back({{"seed", r.seed},
                        {"iterations", r.iterations},
                        {"final_value", r.final_value},
                        {"first_order_residual", r.first_order_residual},
                        {"monotone", r.monotone}});
  }
  p["restarts"] = std::move(restarts);

  bool violation = false;
  if (config.target == Target::comass) {
    const auto ref = reference_comass(config.n, config.comass_m);
    p["reference"] = ref ? json(*ref) : json(nullptr);
    // Exceeding a known comass means the ascent itself is wrong.
    violation = ref && run.best_value > *ref + 1e-6;
    p["best_point"] = point_json(run.best_point);
  } else {
    const MatTuple& best = std::get<MatTuple>(run.best_point);
    const GapFunction gap = gap_function(config.target);
    const GapReport g = gap(best);
    p["report"] = gap_json(g, tol);
    violation = !g.holds(tol);
    p["best_point"] = tuple_to_json(violation ? minimize_counterexample(best, gap, tol) : best);
  }
  p["violation"] = violation;
  out.exit_status = violation ? exit_violation : exit_ok;
  return out;
}

// --- suite / stats ---------------------------------------------------------

CommandOutcome run_suite_cmd(const json& cfg) {
  SuiteOptions opt;
  opt.samples = cfg.at("samples").get<std::size_t>();
  opt.seed = cfg.at("seed").get<std::uint64_t>();
  const auto results = run_suite(cfg.at("suite").get<std::string>(), opt);

  CommandOutcome out;
  json checks = json::array();
  for (const auto& r : results) {
    checks.push_back({{"name", r.name},
                      {"passed", r.passed},
                      {"worst", r.worst},
                      {"bound", r.bound},
                      {"samples", r.samples},
                      {"violations", r.violations},
                      {"informational", r.informational}});
  }
  out.payload["checks"] = std::move(checks);
  const bool ok = all_passed(results);
  out.payload["passed"] = ok;
  out.exit_status = ok ? exit_ok : exit_violation;
  return out;
}

CommandOutcome run_stats_cmd(const json& cfg) {
  const auto n = cfg.at("n").get<std::size_t>();
  if (n < 2) throw PreconditionError("stats needs n >= 2");
  Rng rng(cfg.at("seed").get<std::uint64_t>());
  const CommutatorStats s = commutator_statistics(n, cfg.at("samples").get<std::size_t>(), rng);
  CommandOutcome out;
  out.payload = {{"n", n},
                 {"samples", s.samples},
                 {"mean_ratio", s.mean_ratio},
                 {"stddev", s.stddev},
                 {"reference", 2.0 / static_cast<double>(n)}};
  return out;
}

// --- printing --------------------------------------------------------------

void print_search(std::ostream& os, const json& p, const std::string& point_path) {
  os << "best_value " << num(p["best_value"].get<double>()) << "\n";
  if (!p["reference"].is_null() && p.contains("reference")) {
    os << "reference " << num(p["reference"].get<double>()) << "\n";
  }
  os << "best_point " << point_path << "\n";
  if (p["violation"].get<bool>()) os << "VIOLATION: best_point holds the minimized witness\n";
}

void print_suite(std::ostream& os, const json& p) {
  for (const auto& c : p["checks"]) {
    const char* tag = c["informational"].get<bool>() ? "INFO" : (c["passed"].get<bool>() ? "PASS" : "FAIL");
    os << tag << " " << c["name"].get<std::string>() << " worst=" << num(c["worst"].get<double>())
       << " bound=" << num(c["bound"].get<double>()) << " samples=" << c["samples"].get<std::size_t>()
       << " violations=" << c["violations"].get<std::size_t>() << "\n";
  }
  os << (p["passed"].get<bool>() ? "all checks passed" : "some checks FAILED") << "\n";
}

void print_stats(std::ostream& os, const json& p) {
  os << "n " << p["n"].get<std::size_t>() << "\n"
     << "samples " << p["samples"].get<std::size_t>() << "\n"
     << "mean_ratio " << num(p["mean_ratio"].get<double>()) << "\n"
     << "stddev " << num(p["stddev"].get<double>()) << "\n"
     << "reference_2_over_n " << num(p["reference"].get<double>()) << "\n";
}

std::string best_point_path(const std::string& log_path, const json& cfg) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::path(log_path).parent_path();
  const std::string name = "best-" + cfg.at("target").get<std::string>() + "-" +
                           git_blob_hash(cfg.dump()).substr(0, 12) + ".json";
  return (dir / name).string();
}

int replay(const std::string& log_path, long index, std::ostream& out) {
  const auto records = read_log(log_path);
  if (records.empty()) throw InputError("log '" + log_path + "' has no records");
  if (index >= static_cast<long>(records.size())) throw InputError("record index out of range");
  int status = exit_ok;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (index >= 0 && static_cast<long>(i) != index) continue;
    const RunRecord& r = records[i];
    const CommandOutcome again = execute_command(r.command, r.config);
    const bool same = again.payload.dump() == r.payload.dump() && again.exit_status == r.exit_status &&
                      again.input_hash == r.input_hash;
    out << "record " << i << " " << r.command << ": " << (same ? "identical" : "DIFFERS") << "\n";
    if (!same) status = exit_violation;
  }
  return status;
}

}  // namespace

CommandOutcome execute_command(const std::string& command, const json& config) {
  if (command == "check") return run_check(config);
  if (command == "search") return run_search_cmd(config);
  if (command == "suite") return run_suite_cmd(config);
  if (command == "stats") return run_stats_cmd(config);
  throw PreconditionError("unknown command '" + command + "'");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification and extremal search for commutator-norm inequalities"};
  app.require_subcommand(1);

  std::string log_path = "./runs.jsonl";
  double tol = 1e-10;
  std::uint64_t seed = 0;

  auto common = [&](CLI::App* sub, std::uint64_t default_seed) {
    sub->add_option("--log", log_path, "Run log (NDJSON)")->capture_default_str();
    sub->add_option("--seed", seed, "Base RNG seed")->default_val(default_seed);
  };

  std::string input, inequality;
  auto* check = app.add_subcommand("check", "Evaluate one inequality on a matrix file");
  check->add_option("--input", input, "Matrix JSON file")->required();
  check->add_option("--inequality", inequality, "ddvv, ddvv-mixed, bw, lili, eq1a, geometric, chen, psq")
      ->required();
  check->add_option("--tol", tol, "Relative tolerance")->capture_default_str();
  check->add_option("--log", log_path, "Run log (NDJSON)")->capture_default_str();

  std::string target = "ddvv";
  std::size_t n = 2, m_sym = 2, m_skew = 0, comass_m = 0, restarts = 64, iters = 5000, jobs = 1;
  bool traceless = false;
  auto* search = app.add_subcommand("search", "Random-restart ascent of a target ratio");
  search->add_option("--target", target, "ddvv, bw, lili, comass")->capture_default_str();
  search->add_option("-n", n, "Matrix size")->capture_default_str();
  search->add_option("--m-sym", m_sym, "Symmetric entries")->capture_default_str();
  search->add_option("--m-skew", m_skew, "Skew entries")->capture_default_str();
  search->add_option("--comass-m", comass_m, "Ambient dimension for comass frames");
  search->add_option("--restarts", restarts)->capture_default_str();
  search->add_option("--iters", iters, "Iteration cap per restart")->capture_default_str();
  search->add_flag("--traceless", traceless, "Restrict to traceless entries");
  search->add_option("--tol", tol, "Relative violation tolerance")->capture_default_str();
  search->add_option("--jobs", jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  common(search, 0);

  std::string suite_name;
  std::size_t samples = 10000;
  auto* suite = app.add_subcommand("suite", "Seeded randomized check suites");
  suite->add_option("name", suite_name, "identities, proved-inequalities, curvature-bridge, all")
      ->required();
  suite->add_option("--samples", samples)->capture_default_str();
  common(suite, 1);

  auto* stats = app.add_subcommand("stats", "Commutator ratio statistics for Gaussian pairs");
  stats->add_option("-n", n, "Matrix size")->required();
  stats->add_option("--samples", samples)->capture_default_str();
  common(stats, 1);

  long record_index = -1;
  auto* replay_cmd = app.add_subcommand("replay", "Re-execute logged runs and compare payloads");
  replay_cmd->add_option("--record", record_index, "Zero-based record index (default: all)");
  replay_cmd->add_option("--log", log_path, "Run log (NDJSON)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
  }

  try {
    if (replay_cmd->parsed()) return replay(log_path, record_index, out);

    std::string command;
    json cfg;
    if (check->parsed()) {
      command = "check";
      cfg = {{"input", input}, {"inequality", inequality}, {"tol", tol}};
    } else if (search->parsed()) {
      command = "search";
      cfg = {{"target", target}, {"n", n},         {"m_sym", m_sym},         {"m_skew", m_skew},
             {"comass_m", comass_m}, {"restarts", restarts}, {"iters", iters}, {"seed", seed},
             {"traceless", traceless}, {"tol", tol},     {"jobs", jobs}};
    } else if (suite->parsed()) {
      command = "suite";
      cfg = {{"suite", suite_name}, {"samples", samples}, {"seed", seed}};
    } else {
      command = "stats";
      cfg = {{"n", n}, {"samples", samples}, {"seed", seed}};
    }

    const CommandOutcome res = execute_command(command, cfg);

    if (command == "check") {
      out << res.payload.dump() << "\n";
    } else if (command == "search") {
      const std::string path = best_point_path(log_path, cfg);
      std::ofstream f(path);
      if (!f) throw InputError("cannot write '" + path + "'");
      f << res.payload["best_point"].dump(2) << "\n";
      print_search(out, res.payload, path);
    } else if (command == "suite") {
      print_suite(out, res.payload);
    } else {
      print_stats(out, res.payload);
    }

    RunRecord rec;
    rec.timestamp = utc_timestamp();
    rec.command = command;
    rec.config = cfg;
    rec.input_hash = res.input_hash;
    rec.payload = res.payload;
    rec.exit_status = res.exit_status;
    append_record(log_path, rec);
    return res.exit_status;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return exit_usage;
}

}  // namespace ddvv
