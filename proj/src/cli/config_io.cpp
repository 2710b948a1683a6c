#include "lrsim/cli/config_io.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "lrsim/errors.hpp"

namespace lrsim::cli {
namespace {

using nlohmann::json;

template <typename Enum>
struct EnumName {
  Enum value;
  const char* name;
};

constexpr EnumName<SourceKind> kSourceKinds[] = {
    {SourceKind::CascadePolarized, "cascade"}, {SourceKind::DegeneratePDC, "pdc"}};
constexpr EnumName<HvKind> kHvKinds[] = {{HvKind::UniformRI, "uniform"},
                                         {HvKind::DeltaCRIF, "delta"},
                                         {HvKind::BinaryBRIF, "binary"},
                                         {HvKind::SmearedBimodal, "smeared"}};
constexpr EnumName<AnalyzerKind> kAnalyzers[] = {
    {AnalyzerKind::PolarizerAtSetting, "polarizer"},
    {AnalyzerKind::ModulatorPlusPrism45, "modulator_prism45"}};
constexpr EnumName<ResponseKind> kResponses[] = {{ResponseKind::Linear, "linear"},
                                                 {ResponseKind::Threshold, "threshold"},
                                                 {ResponseKind::PowerLaw, "power_law"}};
constexpr EnumName<SimultaneousPolicy> kPolicies[] = {{SimultaneousPolicy::KeepBoth, "keep_both"},
                                                      {SimultaneousPolicy::DropBoth, "drop_both"},
                                                      {SimultaneousPolicy::PickRandom, "pick_random"}};
constexpr EnumName<AccidentalMode> kAccidentals[] = {{AccidentalMode::None, "none"},
                                                     {AccidentalMode::EstimateOnly, "estimate"},
                                                     {AccidentalMode::Subtract, "subtract"}};

template <typename Enum, std::size_t N>
const char* enum_name(const EnumName<Enum> (&table)[N], Enum value) {
  for (const auto& e : table)
    if (e.value == value) return e.name;
  throw ConfigError("unnamed enum value");
}

template <typename Enum, std::size_t N>
Enum enum_value(const EnumName<Enum> (&table)[N], const json& j, const char* key) {
  if (!j.is_string()) throw ConfigError(std::string(key) + " must be a string");
  const auto s = j.get<std::string>();
  for (const auto& e : table)
    if (s == e.name) return e.value;
  std::string names;
  for (const auto& e : table) names += std::string(names.empty() ? "" : ", ") + e.name;
  throw ConfigError("unknown " + std::string(key) + " '" + s + "' (expected one of " + names + ")");
}

// Reads typed fields from one JSON object, rejecting keys nobody asked for.
class Reader {
 public:
  Reader(const json& obj, std::string where) : obj_(obj), where_(std::move(where)) {
    if (!obj_.is_object()) throw ConfigError(where_ + " must be an object");
  }

  const json* find(const char* key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  void number(const char* key, double& out) {
    if (const json* j = find(key)) {
      if (!j->is_number()) throw ConfigError(path(key) + " must be a number");
      out = j->get<double>();
    }
  }

  void count(const char* key, std::uint64_t& out) {
    if (const json* j = find(key)) {
      if (j->is_number_unsigned()) {
        out = j->get<std::uint64_t>();
      } else if (j->is_number_integer() && j->get<std::int64_t>() >= 0) {
        out = static_cast<std::uint64_t>(j->get<std::int64_t>());
      } else {
        throw ConfigError(path(key) + " must be a nonnegative integer");
      }
    }
  }

  void boolean(const char* key, bool& out) {
    if (const json* j = find(key)) {
      if (!j->is_boolean()) throw ConfigError(path(key) + " must be true or false");
      out = j->get<bool>();
    }
  }

  template <typename Enum, std::size_t N>
  void choice(const char* key, const EnumName<Enum> (&table)[N], Enum& out) {
    if (const json* j = find(key)) out = enum_value(table, *j, path(key).c_str());
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it)
      if (!seen_.count(it.key())) throw ConfigError("unknown key " + path(it.key().c_str()));
  }

  std::string path(const char* key) const { return where_ + "." + key; }

 private:
  const json& obj_;
  std::string where_;
  std::set<std::string> seen_;
};

DetectorResponse response_from_json(const json& j, const std::string& where) {
  Reader r(j, where);
  DetectorResponse d;
  r.choice("kind", kResponses, d.kind);
  r.number("threshold", d.threshold);
  r.number("exponent", d.exponent);
  r.number("efficiency", d.efficiency);
  r.finish();
  return d;
}

json response_to_json(const DetectorResponse& d) {
  return {{"kind", enum_name(kResponses, d.kind)},
          {"threshold", d.threshold},
          {"exponent", d.exponent},
          {"efficiency", d.efficiency}};
}

}  // namespace

ExperimentConfig config_from_json(const json& doc) {
  ExperimentConfig c;
  Reader top(doc, "config");

  if (const json* src = top.find("source")) {
    Reader s(*src, "source");
    s.choice("kind", kSourceKinds, c.source.kind);
    if (const json* hv = s.find("hidden_variable")) {
      Reader h(*hv, "source.hidden_variable");
      h.choice("kind", kHvKinds, c.source.hv_model.kind);
      h.number("lambda0_rad", c.source.hv_model.lambda0);
      h.number("period_rad", c.source.hv_model.period);
      h.number("sigma_rad", c.source.hv_model.sigma);
      h.finish();
    }
    if (const json* w = s.find("phase_class_weights")) {
      if (!w->is_array() || w->size() != 2 || !(*w)[0].is_number() || !(*w)[1].is_number())
        throw ConfigError("source.phase_class_weights must be two numbers");
      c.source.phase_class_weights = {(*w)[0].get<double>(), (*w)[1].get<double>()};
    }
    s.number("dispersion_sigma_rad", c.source.dispersion_sigma);
    s.boolean("independent_dispersion", c.source.independent_dispersion);
    s.number("pair_rate_hz", c.source.pair_rate);
    s.number("pulse_duration_s", c.source.pulse_duration);
    s.finish();
  }

  double a = 0.0;
  double b = 0.0;
  top.number("setting_a_rad", a);
  top.number("setting_b_rad", b);
  c.setting_a = Angle(a);
  c.setting_b = Angle(b);
  top.choice("analyzer_a", kAnalyzers, c.analyzer_a);
  top.choice("analyzer_b", kAnalyzers, c.analyzer_b);
  if (const json* d = top.find("detector_a")) c.response_a = response_from_json(*d, "detector_a");
  if (const json* d = top.find("detector_b")) c.response_b = response_from_json(*d, "detector_b");
  top.number("jitter_sigma_s", c.jitter_sigma);
  top.number("window_s", c.window);
  top.count("n_pairs", c.n_pairs);
  top.count("seed", c.seed);
  top.choice("simultaneous_policy", kPolicies, c.simultaneous_policy);
  top.choice("accidental_mode", kAccidentals, c.accidental_mode);
  top.boolean("retain_events", c.retain_events);
  top.count("max_events", c.max_events);
  top.finish();

  c.validate();
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  const auto& hv = c.source.hv_model;
  json source = {
      {"kind", enum_name(kSourceKinds, c.source.kind)},
      {"hidden_variable",
       {{"kind", enum_name(kHvKinds, hv.kind)},
        {"lambda0_rad", hv.lambda0},
        {"period_rad", hv.period},
        {"sigma_rad", hv.sigma}}},
      {"phase_class_weights", {c.source.phase_class_weights[0], c.source.phase_class_weights[1]}},
      {"dispersion_sigma_rad", c.source.dispersion_sigma},
      {"independent_dispersion", c.source.independent_dispersion},
      {"pair_rate_hz", c.source.pair_rate},
      {"pulse_duration_s", c.source.pulse_duration},
  };
  return {
      {"source", source},
      {"setting_a_rad", c.setting_a.rad()},
      {"setting_b_rad", c.setting_b.rad()},
      {"analyzer_a", enum_name(kAnalyzers, c.analyzer_a)},
      {"analyzer_b", enum_name(kAnalyzers, c.analyzer_b)},
      {"detector_a", response_to_json(c.response_a)},
      {"detector_b", response_to_json(c.response_b)},
      {"jitter_sigma_s", c.jitter_sigma},
      {"window_s", c.window},
      {"n_pairs", c.n_pairs},
      {"seed", c.seed},
      {"simultaneous_policy", enum_name(kPolicies, c.simultaneous_policy)},
      {"accidental_mode", enum_name(kAccidentals, c.accidental_mode)},
      {"retain_events", c.retain_events},
      {"max_events", c.max_events},
  };
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return config_from_json(doc);
}

std::string canonical_config(const ExperimentConfig& config) {
  return config_to_json(config).dump();
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i)
    out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return out.str();
}

std::string config_digest(const ExperimentConfig& config) {
  return sha256_hex(canonical_config(config));
}

json manifest_to_json(const RunManifest& m) {
  return {{"config_digest", m.config_digest},
          {"seed", m.seed},
          {"tool_version", m.tool_version},
          {"command", m.command},
          {"started_utc", m.started_utc},
          {"finished_utc", m.finished_utc}};
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, end);
}

}  // namespace lrsim::cli
