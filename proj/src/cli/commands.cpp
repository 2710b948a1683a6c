#include "lrsim/cli/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <omp.h>

#include "lrsim/analytic.hpp"
#include "lrsim/cli/config_io.hpp"
#include "lrsim/errors.hpp"

#ifndef LRSIM_VERSION
#define LRSIM_VERSION "0.0.0"
#endif

namespace lrsim::cli {
namespace {

using nlohmann::json;

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

class ManifestScope {
 public:
  ManifestScope(std::string command, std::string digest, std::uint64_t seed) {
    m_.command = std::move(command);
    m_.config_digest = std::move(digest);
    m_.seed = seed;
    m_.tool_version = LRSIM_VERSION;
    m_.started_utc = utc_now();
  }

  void write(const std::filesystem::path& output) {
    m_.finished_utc = utc_now();
    write_file(output.string() + ".manifest.json", manifest_to_json(m_).dump(2) + "\n");
  }

 private:
  RunManifest m_;
};

const char* side_name(Side s) { return s == Side::A ? "A" : "B"; }
const char* channel_name(Channel c) { return c == Channel::Plus ? "+" : "-"; }

std::array<std::pair<double, double>, 4> setting_pairs(const std::array<double, 4>& angles) {
  const auto [a, ap, b, bp] = angles;
  return {{{a, b}, {a, bp}, {ap, b}, {ap, bp}}};
}

std::string to_lower(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

}  // namespace

std::filesystem::path resolve_output(const std::filesystem::path& requested,
                                     const std::string& default_name) {
  std::filesystem::path p = requested.empty() ? std::filesystem::path(default_name) : requested;
  if (p.is_relative()) {
    if (const char* dir = std::getenv("LRSIM_OUTPUT_DIR"); dir && *dir) p = dir / p;
  }
  return p;
}

std::vector<double> linear_grid(double from, double to, std::size_t points) {
  if (points < 2) throw ConfigError("need at least 2 points, got " + std::to_string(points));
  std::vector<double> x(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    x[i] = from + (to - from) * t;
  }
  x.back() = to;
  return x;
}

std::string scan_csv(std::span<const double> settings, std::span<const CoincidenceCounts> counts) {
  std::ostringstream csv;
  csv << "setting_rad,n_pp,n_pm,n_mp,n_mm,singles_a_plus,singles_a_minus,singles_b_plus,"
         "singles_b_minus,rate_pp,stderr_pp\n";
  for (std::size_t i = 0; i < settings.size(); ++i) {
    const auto& c = counts[i];
    const double n = static_cast<double>(c.n_pairs_emitted);
    const double rate = n > 0.0 ? c.net(Channel::Plus, Channel::Plus) / n : 0.0;
    const double p = n > 0.0 ? static_cast<double>(c.n_pp) / n : 0.0;
    const double se = n > 0.0 ? std::sqrt(p * (1.0 - p) / n) : 0.0;
    csv << format_double(settings[i]) << ',' << c.n_pp << ',' << c.n_pm << ',' << c.n_mp << ','
        << c.n_mm << ',' << c.singles_a_plus << ',' << c.singles_a_minus << ','
        << c.singles_b_plus << ',' << c.singles_b_minus << ',' << format_double(rate) << ','
        << format_double(se) << '\n';
  }
  return csv.str();
}

void cmd_scan(const ExperimentConfig& config, const ScanOptions& options, std::ostream& out) {
  const auto grid = linear_grid(options.from, options.to, options.points);
  config.validate();
  const auto path = resolve_output(options.out, "scan.csv");
  ManifestScope manifest("scan", config_digest(config), config.seed);

  std::vector<Angle> values;
  for (double x : grid) values.emplace_back(x);
  const auto counts = sweep(config, options.side, values);
  write_file(path, scan_csv(grid, counts));
  manifest.write(path);

  out << "points=" << grid.size() << "\n";
  try {
    const auto s = curve_summary(std::span<const Angle>(values), std::span<const CoincidenceCounts>(counts));
    out << "visibility=" << format_double(s.visibility) << "\n"
        << "argmax_rad=" << format_double(s.argmax) << "\n"
        << "argmin_rad=" << format_double(s.argmin) << "\n";
  } catch (const UndefinedStatistic&) {
    out << "visibility=undefined\n";
  }
  out << "csv=" << path.string() << "\n";
}

BellReport evaluate_bell(const ExperimentConfig& config, const BellOptions& options) {
  config.validate();
  for (double x : options.angles)
    if (!std::isfinite(x)) throw ConfigError("angles must be finite");

  BellReport report;
  const auto pairs = setting_pairs(options.angles);
  std::optional<HiddenVariableModel> model;
  if (options.mode == BellMode::Analytic) {
    model = equivalent_model(config.source);
    if (!model)
      throw ConfigError("no analytic model for this source (PDC weights must be 1/2 each or 0/1)");
  }
  for (std::size_t k = 0; k < 4; ++k) {
    const Angle a(pairs[k].first);
    const Angle b(pairs[k].second);
    switch (options.mode) {
      case BellMode::Quantum:
        report.tables[k] = ChannelTable::from_probabilities(qt_channel_probabilities(a, b));
        break;
      case BellMode::Analytic:
        report.tables[k] = ChannelTable::from_probabilities(channel_probabilities(
            *model, a, b, config.response_a, config.response_b, config.simultaneous_policy));
        break;
      case BellMode::MonteCarlo: {
        ExperimentConfig c = config;
        c.setting_a = a;
        c.setting_b = b;
        c.seed = derive_seed(config.seed, k + 1);
        c.retain_events = false;
        report.tables[k] = ChannelTable::from_counts(run(c).counts);
        break;
      }
    }
  }
  // the (a', b) run carries both N_A(a') and N_B(b)
  report.result = options.test == BellTestKind::Chsh
                      ? chsh(report.tables)
                      : ch74(report.tables, report.tables[2], report.tables[2]);
  return report;
}

void cmd_belltest(const ExperimentConfig& config, const BellOptions& options, std::ostream& out) {
  const auto path = resolve_output(options.report, "belltest.json");
  ManifestScope manifest("belltest", config_digest(config), config.seed);
  const auto report = evaluate_bell(config, options);
  const auto& r = report.result;

  const char* test = options.test == BellTestKind::Chsh ? "chsh" : "ch74";
  const char* mode = options.mode == BellMode::MonteCarlo ? "mc"
                     : options.mode == BellMode::Analytic ? "analytic"
                                                          : "qt";
  json doc = {{"test", test},
              {"mode", mode},
              {"angles_rad", options.angles},
              {"statistic", r.statistic},
              {"bound", r.bound},
              {"standard_error", r.standard_error},
              {"violated", r.violated},
              {"config_digest", config_digest(config)}};
  json tables = json::array();
  const auto pairs = setting_pairs(options.angles);
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& t = report.tables[k];
    tables.push_back({{"setting_a_rad", pairs[k].first},
                      {"setting_b_rad", pairs[k].second},
                      {"pp", t.pp},
                      {"pm", t.pm},
                      {"mp", t.mp},
                      {"mm", t.mm},
                      {"singles_a_plus", t.singles_a_plus},
                      {"singles_b_plus", t.singles_b_plus},
                      {"duration_s", t.duration}});
  }
  doc["tables"] = tables;
  write_file(path, doc.dump(2) + "\n");
  manifest.write(path);

  out << "test=" << test << "\n"
      << "mode=" << mode << "\n"
      << "statistic=" << format_double(r.statistic) << "\n"
      << "bound=" << format_double(r.bound) << "\n"
      << "standard_error=" << format_double(r.standard_error) << "\n"
      << "violated=" << (r.violated ? "true" : "false") << "\n"
      << "report=" << path.string() << "\n";
}

std::string compare_csv(const CompareOptions& options) {
  std::vector<std::pair<std::string, std::function<double(double)>>> columns;
  for (const auto& raw : options.models) {
    const auto name = to_lower(raw);
    if (name == "qt") {
      columns.emplace_back(name, [](double d) { return qt_coincidence(Angle(d), Angle(0.0)); });
    } else if (name == "blr") {
      columns.emplace_back(name, [](double d) { return blr_coincidence(Angle(d), Angle(0.0)); });
    } else if (name == "crif") {
      const double l0 = options.lambda0;
      columns.emplace_back(
          name, [l0](double d) { return crif_coincidence(Angle(d), Angle(0.0), Angle(l0)); });
    } else if (name == "brif") {
      columns.emplace_back(name, [](double d) { return brif_coincidence(Angle(d), Angle(0.0)); });
    } else if (name == "gap") {
      columns.emplace_back(name, [](double d) { return qt_realist_gap(Angle(d), Angle(0.0)); });
    } else {
      throw ConfigError("unknown model '" + raw + "' (expected qt, blr, crif, brif, gap)");
    }
  }
  if (columns.empty()) throw ConfigError("no models requested");

  std::ostringstream csv;
  csv << "delta_rad";
  for (const auto& [name, f] : columns) csv << ',' << name;
  csv << '\n';
  for (double d : linear_grid(0.0, kPi, options.points)) {
    csv << format_double(d);
    for (const auto& [name, f] : columns) csv << ',' << format_double(f(d));
    csv << '\n';
  }
  return csv.str();
}

void cmd_compare(const CompareOptions& options, std::ostream& out) {
  const auto path = resolve_output(options.out, "compare.csv");
  ManifestScope manifest("compare", "", 0);
  write_file(path, compare_csv(options));
  manifest.write(path);
  out << "csv=" << path.string() << "\n";
}

std::string events_text(const EventStreams& events) {
  std::string text;
  for (const auto& e : events.merged()) {
    text += side_name(e.side);
    text += ',';
    text += channel_name(e.channel);
    text += ',';
    text += format_double(e.time_s);
    text += '\n';
  }
  return text;
}

void cmd_export_events(const ExperimentConfig& config, const std::filesystem::path& out_path,
                       std::ostream& out) {
  if (!config.retain_events) throw ConfigError("export-events needs retain_events = true");
  const auto path = resolve_output(out_path, "events.csv");
  ManifestScope manifest("export-events", config_digest(config), config.seed);
  const auto result = run(config);
  write_file(path, events_text(result.events));
  manifest.write(path);
  out << "events=" << result.events.total() << "\n"
      << "n_pp=" << result.counts.n_pp << "\n"
      << "file=" << path.string() << "\n";
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local-realist Bell-test simulator", "lrsim"};
  app.require_subcommand(1);
  app.set_version_flag("--version", LRSIM_VERSION);

  std::optional<std::uint64_t> seed;
  int threads = 0;
  app.add_option("--seed", seed, "Override the config seed");
  app.add_option("--threads", threads, "OpenMP threads (results do not depend on it)")
      ->check(CLI::NonNegativeNumber);

  std::string config_path;
  ScanOptions scan;
  std::string side = "a";
  auto* scan_cmd = app.add_subcommand("scan", "Sweep one analyzer setting");
  scan_cmd->add_option("config", config_path, "Experiment config (JSON)")->required();
  scan_cmd->add_option("--side", side, "Swept side")->check(CLI::IsMember({"a", "b", "A", "B"}));
  scan_cmd->add_option("--from", scan.from, "First setting (rad)");
  scan_cmd->add_option("--to", scan.to, "Last setting (rad)");
  scan_cmd->add_option("--points", scan.points, "Number of settings (>= 2)");
  scan_cmd->add_option("--out", scan.out, "CSV output path");

  BellOptions bell;
  std::string test = "chsh";
  std::string mode = "mc";
  std::vector<double> angles;
  auto* bell_cmd = app.add_subcommand("belltest", "CHSH or CH74 at four setting pairs");
  bell_cmd->add_option("config", config_path, "Experiment config (JSON)")->required();
  bell_cmd->add_option("--test", test)->check(CLI::IsMember({"chsh", "ch74"}));
  bell_cmd->add_option("--angles", angles, "a a' b b' (rad)")->required()->expected(4);
  bell_cmd->add_option("--mode", mode)->check(CLI::IsMember({"mc", "analytic", "qt"}));
  bell_cmd->add_option("--out", bell.report, "JSON report path");

  CompareOptions compare;
  std::string models = "qt,blr";
  std::string compare_config;
  auto* compare_cmd = app.add_subcommand("compare", "Analytic coincidence curves");
  compare_cmd->add_option("config", compare_config, "Config supplying lambda0 for crif");
  compare_cmd->add_option("--models", models, "Comma-separated: qt,blr,crif,brif,gap");
  compare_cmd->add_option("--points", compare.points);
  compare_cmd->add_option("--out", compare.out, "CSV output path");

  std::filesystem::path events_out;
  auto* export_cmd = app.add_subcommand("export-events", "Write the time-tagged event stream");
  export_cmd->add_option("config", config_path, "Experiment config (JSON)")->required();
  export_cmd->add_option("--out", events_out, "Event file path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (threads > 0) omp_set_num_threads(threads);
    auto load = [&](const std::string& p) {
      ExperimentConfig c = load_config(p);
      if (seed) c.seed = *seed;
      return c;
    };

    if (*scan_cmd) {
      scan.side = (side == "a" || side == "A") ? Side::A : Side::B;
      cmd_scan(load(config_path), scan, out);
    } else if (*bell_cmd) {
      bell.test = test == "chsh" ? BellTestKind::Chsh : BellTestKind::Ch74;
      bell.mode = mode == "mc" ? BellMode::MonteCarlo
                  : mode == "analytic" ? BellMode::Analytic
                                       : BellMode::Quantum;
      std::copy(angles.begin(), angles.end(), bell.angles.begin());
      cmd_belltest(load(config_path), bell, out);
    } else if (*compare_cmd) {
      compare.models.clear();
      std::stringstream list(models);
      for (std::string m; std::getline(list, m, ',');)
        if (!m.empty()) compare.models.push_back(m);
      if (!compare_config.empty()) compare.lambda0 = load(compare_config).source.hv_model.lambda0;
      cmd_compare(compare, out);
    } else if (*export_cmd) {
      cmd_export_events(load(config_path), events_out, out);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const EventOverflow& e) {
    err << "event overflow: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace lrsim::cli
