#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>
#include <type_traits>
#include <variant>

#include "fibwalk/fibwalk.hpp"

namespace fibwalk::cli {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi;

using Target = std::variant<double*, std::size_t*, int*, std::string*, bool*>;

struct ParamFlags {
  bool angle = false;      // converted by --degrees
  bool persisted = true;   // written to the sidecar
};

struct Param {
  std::string key;
  Target target;
  CLI::Option* option = nullptr;
  ParamFlags flags;
};

std::string dashed(std::string key) {
  for (char& c : key) {
    if (c == '_') c = '-';
  }
  return key;
}

std::string default_text(const Target& target) {
  return std::visit(
      [](auto* p) -> std::string {
        using T = std::remove_pointer_t<decltype(p)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return *p;
        } else if constexpr (std::is_same_v<T, bool>) {
          return *p ? "true" : "false";
        } else {
          return fmt::format("{}", *p);
        }
      },
      target);
}

void assign(const Param& param, const json& value) {
  const auto fail = [&](std::string_view expected) {
    throw ValidationError(
        fmt::format("config key '{}': expected {}, got {}", param.key, expected, value.dump()));
  };
  std::visit(
      [&](auto* p) {
        using T = std::remove_pointer_t<decltype(p)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!value.is_number()) fail("a number");
          *p = value.get<double>();
        } else if constexpr (std::is_same_v<T, std::size_t>) {
          if (value.is_number_unsigned()) {
            *p = value.get<std::size_t>();
          } else {
            fail("a non-negative integer");
          }
        } else if constexpr (std::is_same_v<T, int>) {
          if (!value.is_number_integer()) fail("an integer");
          *p = value.get<int>();
        } else if constexpr (std::is_same_v<T, std::string>) {
          if (!value.is_string()) fail("a string");
          *p = value.get<std::string>();
        } else {
          if (!value.is_boolean()) fail("true or false");
          *p = value.get<bool>();
        }
      },
      param.target);
}

ordered_json to_json(const Target& target) {
  return std::visit([](auto* p) { return ordered_json(*p); }, target);
}

struct Result {
  std::string data;  // primary output in the requested format
  std::string summary;
  ordered_json metadata = ordered_json::object();
};

class Command {
 public:
  Command(CLI::App& app, std::string name, std::string description, bool table)
      : name_(std::move(name)), table_(table) {
    app_ = app.add_subcommand(name_, std::move(description));
    add("output", output_, "Output file; a JSON sidecar is written next to it", {false, false});
    add("format", format_, "Output format: csv or json");
    add("degrees", degrees_, "Read angles in degrees (outputs stay in radians)");
    app_->add_option("--config", config_, "Parameter file (flat JSON, sidecar, or key = value lines)");
  }

  template <class T>
  void add(const std::string& key, T& value, const std::string& help, ParamFlags flags = {}) {
    const std::string flag = "--" + dashed(key);
    CLI::Option* option = nullptr;
    if constexpr (std::is_same_v<T, bool>) {
      option = app_->add_flag(flag, value, help);
    } else {
      option = app_->add_option(flag, value, help)->default_str(default_text(&value));
    }
    params_.push_back(Param{key, &value, option, flags});
  }

  void handler(std::function<Result()> fn) { handler_ = std::move(fn); }
  bool selected() const { return app_->parsed(); }
  const std::string& name() const { return name_; }
  const std::string& format() const { return format_; }

  // Config file values for every flag not given on the command line, then
  // --degrees conversion.
  void resolve() {
    if (!config_.empty()) {
      const RunConfig config = load_config(config_);
      if (!config.command.empty() && config.command != name_) {
        throw ValidationError(fmt::format("config file is for '{}', not '{}'", config.command, name_));
      }
      for (const auto& [key, value] : config.entries) {
        const auto it = std::find_if(params_.begin(), params_.end(),
                                     [&](const Param& p) { return p.key == key; });
        if (it == params_.end()) {
          throw ValidationError(fmt::format("unknown key '{}' for {}", key, name_));
        }
        if (it->option->count() == 0) assign(*it, value);
      }
    }
    if (format_ != "csv" && format_ != "json") {
      throw ValidationError(fmt::format("format must be csv or json, got '{}'", format_));
    }
    if (degrees_) {
      for (const Param& p : params_) {
        if (p.flags.angle) *std::get<double*>(p.target) *= kPi / 180.0;
      }
      degrees_ = false;
    }
  }

  int execute(std::ostream& out, std::ostream& err) {
    resolve();
    const Result result = handler_();
    if (output_.empty()) {
      if (table_) {
        out << result.data;
        err << result.summary << '\n';
      } else {
        out << result.summary << '\n';
      }
      return 0;
    }
    write_file(output_, result.data);
    ordered_json sidecar;
    sidecar["tool"] = "fibwalk";
    sidecar["version"] = FIBWALK_VERSION;
    sidecar["command"] = name_;
    sidecar["parameters"] = parameters();
    sidecar["metadata"] = result.metadata;
    write_file(output_ + ".json", sidecar.dump(2) + "\n");
    out << result.summary << '\n';
    return 0;
  }

 private:
  ordered_json parameters() const {
    ordered_json j = ordered_json::object();
    for (const Param& p : params_) {
      if (p.flags.persisted) j[p.key] = to_json(p.target);
    }
    return j;
  }

  static void write_file(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ValidationError(fmt::format("cannot open '{}' for writing", path));
    file << text;
    if (!file) throw ValidationError(fmt::format("failed writing '{}'", path));
  }

  std::string name_;
  bool table_;
  CLI::App* app_ = nullptr;
  std::vector<Param> params_;
  std::function<Result()> handler_;
  std::string output_;
  std::string format_ = "csv";
  bool degrees_ = false;
  std::string config_;
};

// ---- shared parameter groups ----

struct PointArgs {
  double theta_a = kPi / 2;
  double theta_b = 0.0;
  std::string termination = "standard";

  void add_to(Command& cmd) {
    cmd.add("theta_a", theta_a, "Coin angle on A sites (radians)", {true});
    cmd.add("theta_b", theta_b, "Coin angle on B sites (radians)", {true});
    cmd.add("termination", termination, "standard, a prefix such as ABA, or phason:<value>");
  }
  CoinAngles coins() const { return {theta_a, theta_b}; }
};

struct GridArgs {
  double theta_a_min = -kPi;
  double theta_a_max = kPi;
  double theta_b_min = -kPi;
  double theta_b_max = kPi;
  std::size_t resolution = 21;
  std::size_t workers = 0;

  void add_to(Command& cmd) {
    cmd.add("theta_a_min", theta_a_min, "Lower theta_a edge of the grid", {true});
    cmd.add("theta_a_max", theta_a_max, "Upper theta_a edge of the grid", {true});
    cmd.add("theta_b_min", theta_b_min, "Lower theta_b edge of the grid", {true});
    cmd.add("theta_b_max", theta_b_max, "Upper theta_b edge of the grid", {true});
    cmd.add("resolution", resolution, "Cells per axis");
    cmd.add("workers", workers, "Worker threads (0 = all cores)", {false, false});
  }
  GridSpec grid() const {
    GridSpec g{{theta_a_min, theta_a_max}, {theta_b_min, theta_b_max}, resolution};
    g.validate();
    return g;
  }
};

struct SchurArgs {
  std::size_t n = kDefaultSchurCutoff;
  int steps_per_site = 2;
  std::size_t samples = 2048;
  double min_modulus = 1e-8;
  int max_refine_depth = 20;
  double radius = 1.0;
  double rate_tolerance = 0.03;

  explicit SchurArgs(std::size_t default_samples) : samples(default_samples) {}

  void add_to(Command& cmd) {
    cmd.add("n", n, "Schur cutoff (number of boundary sites)");
    cmd.add("steps_per_site", steps_per_site, "Powers of z per site: 2, or 1 for the literal recursion");
    cmd.add("samples", samples, "Initial contour samples");
    cmd.add("min_modulus", min_modulus, "Smallest |f| accepted on the contour");
    cmd.add("max_refine_depth", max_refine_depth, "Bisection depth limit");
    cmd.add("radius", radius, "Contour radius in (0, 1]");
    cmd.add("rate_tolerance", rate_tolerance, "Phase-rate mismatch that forces bisection (0 = off)");
  }
  SchurSweepOptions options(std::size_t workers = 0) const {
    if (n < 1) throw BoundsError("Schur cutoff must be at least 1");
    return {n, steps_per_site, samples, min_modulus, max_refine_depth, radius, rate_tolerance,
            workers};
  }
  SchurParams params(const FibonacciWord& word, const CoinAngles& coins) const {
    SchurParams p = make_schur_params(word, coins);
    p.steps_per_site = steps_per_site;
    p.samples = samples;
    p.min_modulus = min_modulus;
    p.max_refine_depth = max_refine_depth;
    p.contour_radius = radius;
    p.rate_tolerance = rate_tolerance;
    p.validate();
    return p;
  }
};

CoinPolicy parse_policy(const std::string& text) {
  if (text == "basis") return CoinPolicy::basis_average();
  if (text == "L") return CoinPolicy::pure(1.0, 0.0);
  if (text == "R") return CoinPolicy::pure(0.0, 1.0);
  throw ValidationError(fmt::format("coin policy must be basis, L or R, got '{}'", text));
}

Averaging parse_averaging(const std::string& text) {
  if (text == "arithmetic") return Averaging::Arithmetic;
  if (text == "cesaro") return Averaging::Cesaro;
  throw ValidationError(fmt::format("averaging must be arithmetic or cesaro, got '{}'", text));
}

Timeframe parse_timeframe(const std::string& text) {
  if (text == "plain") return Timeframe::Plain;
  if (text == "symmetrized") return Timeframe::Symmetrized;
  throw ValidationError(fmt::format("timeframe must be plain or symmetrized, got '{}'", text));
}

std::vector<Termination> parse_ensemble(const std::string& text) {
  std::vector<Termination> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(parse_termination(item));
  }
  if (out.empty()) throw ValidationError("ensemble must name at least one termination");
  return out;
}

std::string cell_summary(const PhaseDiagram& d) {
  std::size_t ok = 0, ambiguous = 0, error = 0;
  for (const Cell& c : d.cells) {
    ok += c.status == CellStatus::Ok;
    ambiguous += c.status == CellStatus::Ambiguous;
    error += c.status == CellStatus::Error;
  }
  return fmt::format("cells={} ok={} ambiguous={} error={}", d.cells.size(), ok, ambiguous, error);
}

Result diagram_result(const PhaseDiagram& d, const std::string& format) {
  Result r;
  if (format == "csv") {
    std::ostringstream os;
    write_diagram_csv(os, d);
    r.data = os.str();
  } else {
    ordered_json cells = ordered_json::array();
    for (const Cell& c : d.cells) {
      cells.push_back({{"theta_a", c.theta_a},
                       {"theta_b", c.theta_b},
                       {"value", c.value},
                       {"status", to_string(c.status)}});
    }
    ordered_json j{{"kind", to_string(d.kind)},
                   {"termination", d.termination_column()},
                   {"cells", cells}};
    r.data = j.dump(2) + "\n";
  }
  r.summary = cell_summary(d);
  r.metadata = ordered_json::parse(diagram_metadata_json(d));
  return r;
}

// ---- subcommands ----

struct SpectrumCmd {
  PointArgs point;
  std::size_t n = 233;
  double phase_left = 0.0;
  double phase_right = 0.0;
  std::string timeframe = "plain";
  std::size_t edge_sites = 0;
  double weight_threshold = 0.6;
  double pin_tolerance = 1e-3;
  double theta_a_end = 0.0;
  std::size_t scan_points = 0;
  std::size_t workers = 0;

  void attach(Command& cmd) {
    point.add_to(cmd);
    cmd.add("n", n, "Lattice sites");
    cmd.add("phase_left", phase_left, "Left wall reflection phase angle", {true});
    cmd.add("phase_right", phase_right, "Right wall reflection phase angle", {true});
    cmd.add("timeframe", timeframe, "plain (U = SC) or symmetrized");
    cmd.add("edge_sites", edge_sites, "Sites per boundary region (0 = max(5, N/50))");
    cmd.add("weight_threshold", weight_threshold, "Boundary weight marking an edge mode");
    cmd.add("pin_tolerance", pin_tolerance, "Distance from 0 or pi counted as pinned");
    cmd.add("theta_a_end", theta_a_end, "Last theta_a of a scan", {true});
    cmd.add("scan_points", scan_points, "theta_a values from theta_a to theta_a_end (0 = single point)");
    cmd.add("workers", workers, "Worker threads for scans (0 = all cores)", {false, false});
    cmd.handler([this, &cmd] { return run(cmd.format()); });
  }

  Result run(const std::string& format) const {
    if (scan_points == 1) throw ValidationError("a scan needs at least two points");
    std::vector<double> thetas{point.theta_a};
    if (scan_points >= 2) {
      thetas.clear();
      for (std::size_t k = 0; k < scan_points; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(scan_points - 1);
        thetas.push_back(point.theta_a + t * (theta_a_end - point.theta_a));
      }
    }
    SpectrumScanOptions opts;
    opts.n_sites = n;
    opts.termination = parse_termination(point.termination);
    opts.boundary_phase_left = std::polar(1.0, phase_left);
    opts.boundary_phase_right = std::polar(1.0, phase_right);
    opts.timeframe = parse_timeframe(timeframe);
    opts.edges = EdgeOptions{edge_sites, weight_threshold, pin_tolerance};
    opts.workers = workers;
    const auto rows = scan_spectrum(thetas, point.theta_b, opts);

    std::size_t zero = 0, pi = 0;
    for (const auto& row : rows) {
      zero += row.pinning == "zero";
      pi += row.pinning == "pi";
    }
    Result r;
    if (format == "csv") {
      std::ostringstream os;
      write_spectrum_csv(os, rows);
      r.data = os.str();
    } else {
      ordered_json arr = ordered_json::array();
      for (const auto& row : rows) {
        arr.push_back({{"theta_a", row.theta_a},
                       {"theta_b", row.theta_b},
                       {"energy", row.energy},
                       {"boundary_weight", row.boundary_weight},
                       {"pinning", row.pinning}});
      }
      r.data = arr.dump(2) + "\n";
    }
    r.summary = fmt::format("points={} states={} zero_modes={} pi_modes={}", thetas.size(),
                            rows.size(), zero, pi);
    r.metadata = {{"points", thetas.size()}, {"zero_modes", zero}, {"pi_modes", pi}};
    return r;
  }
};

struct McdCmd {
  PointArgs point;
  std::size_t n = 987;
  std::size_t steps = 400;
  std::string policy = "basis";
  std::string averaging = "arithmetic";

  void attach(Command& cmd) {
    point.add_to(cmd);
    cmd.add("n", n, "Lattice sites");
    cmd.add("steps", steps, "Time window T (must satisfy T < N/2)");
    cmd.add("policy", policy, "Initial coin: basis (average of L and R runs), L or R");
    cmd.add("averaging", averaging, "arithmetic or cesaro");
    cmd.handler([this, &cmd] { return run(cmd.format()); });
  }

  Result run(const std::string& format) const {
    const WalkConfig config = make_walk_config(n, point.coins(), parse_termination(point.termination));
    const CoinPolicy coin = parse_policy(policy);
    const McdAverage avg = mcd_time_average(config, steps, coin, parse_averaging(averaging));
    const McdSeries series = mcd_series(config, steps, coin);
    Result r;
    r.metadata = {{"theta_a", point.theta_a},
                  {"theta_b", point.theta_b},
                  {"N", n},
                  {"T", steps},
                  {"mcd_avg", avg.value}};
    if (format == "csv") {
      std::ostringstream os;
      write_mcd_csv(os, series);
      r.data = os.str();
    } else {
      ordered_json j = r.metadata;
      j["series"] = series.values;
      r.data = j.dump(2) + "\n";
    }
    r.summary = "mcd_avg=" + format_real(avg.value);
    return r;
  }
};

struct McdMapCmd {
  GridArgs grid;
  std::size_t n = 987;
  std::size_t steps = 400;
  std::string policy = "basis";
  std::string averaging = "arithmetic";
  double clamp = -12.0;

  void attach(Command& cmd) {
    grid.add_to(cmd);
    cmd.add("n", n, "Lattice sites");
    cmd.add("steps", steps, "Time window T (must satisfy T < N/2)");
    cmd.add("policy", policy, "Initial coin: basis, L or R");
    cmd.add("averaging", averaging, "arithmetic or cesaro");
    cmd.add("clamp", clamp, "Color-scale saturation recorded in the sidecar");
    cmd.handler([this, &cmd] { return run(cmd.format()); });
  }

  Result run(const std::string& format) const {
    McdSweepOptions opts;
    opts.n_sites = n;
    opts.steps = steps;
    opts.policy = parse_policy(policy);
    opts.averaging = parse_averaging(averaging);
    opts.presentation_clamp = clamp;
    opts.workers = grid.workers;
    return diagram_result(sweep_mcd(grid.grid(), opts), format);
  }
};

struct SchurTraceCmd {
  PointArgs point;
  SchurArgs schur{2048};

  void attach(Command& cmd) {
    point.add_to(cmd);
    schur.add_to(cmd);
    cmd.handler([this, &cmd] { return run(cmd.format()); });
  }

  Result run(const std::string& format) const {
    const auto word = apply_termination(standard_word(schur.n), parse_termination(point.termination));
    const SchurParams params = schur.params(word, point.coins());
    const auto trace = schur_trace(params);
    double lo = INFINITY, hi = 0.0;
    for (const auto& p : trace) {
      lo = std::min(lo, std::abs(p.f));
      hi = std::max(hi, std::abs(p.f));
    }
    Result r;
    if (format == "csv") {
      std::ostringstream os;
      write_trace_csv(os, trace);
      r.data = os.str();
    } else {
      ordered_json arr = ordered_json::array();
      for (const auto& p : trace) {
        arr.push_back({{"phi", p.phi},
                       {"re_f", p.f.real()},
                       {"im_f", p.f.imag()},
                       {"abs_f", std::abs(p.f)}});
      }
      r.data = arr.dump(2) + "\n";
    }
    r.summary = fmt::format("samples={} min_abs_f={} max_abs_f={}", trace.size(), format_real(lo),
                            format_real(hi));
    r.metadata = {{"samples", trace.size()}, {"min_abs_f", lo}, {"max_abs_f", hi}};
    return r;
  }
};

struct WindingCmd {
  PointArgs point;
  SchurArgs schur{2048};

  void attach(Command& cmd) {
    point.add_to(cmd);
    schur.add_to(cmd);
    cmd.handler([this, &cmd] { return run(cmd.format()); });
  }

  Result run(const std::string& format) const {
    const auto word = apply_termination(standard_word(schur.n), parse_termination(point.termination));
    const WindingResult w = winding_number(schur.params(word, point.coins()));
    Result r;
    r.metadata = {{"winding", w.winding},
                  {"raw_phase_sum", w.raw_phase_sum},
                  {"min_abs_f", w.min_abs_f},
                  {"refine_depth_used", w.refine_depth_used},
                  {"ambiguous", w.ambiguous}};
    if (format == "csv") {
      r.data = fmt::format("winding,raw_phase_sum,min_abs_f,refine_depth_used,ambiguous\n{},{},{},{},{}\n",
                           w.winding, format_real(w.raw_phase_sum), format_real(w.min_abs_f),
                           w.refine_depth_used, w.ambiguous);
    } else {
      r.data = r.metadata.dump(2) + "\n";
    }
    r.summary = fmt::format("W={}", w.winding);
    if (w.ambiguous) {
      r.summary += fmt::format(" ambiguous (raw={} min_abs_f={})", format_real(w.raw_phase_sum),
                               format_real(w.min_abs_f));
    }
    return r;
  }
};

struct WindingMapCmd {
  GridArgs grid;
  std::string termination = "standard";
  SchurArgs schur{kSweepContourSamples};

  void attach(Command& cmd) {
    grid.add_to(cmd);
    cmd.add("termination", termination, "standard, a prefix such as ABA, or phason:<value>");
    schur.add_to(cmd);
    cmd.handler([this, &cmd] { return run(cmd.format()); });
  }

  Result run(const std::string& format) const {
    return diagram_result(
        sweep_winding(grid.grid(), parse_termination(termination), schur.options(grid.workers)),
        format);
  }
};

struct WindingAverageCmd {
  GridArgs grid;
  std::string ensemble = "ABA,AAB,BAA,BAB";
  SchurArgs schur{kSweepContourSamples};

  void attach(Command& cmd) {
    grid.add_to(cmd);
    cmd.add("ensemble", ensemble, "Comma-separated terminations to average over");
    schur.add_to(cmd);
    cmd.handler([this, &cmd] { return run(cmd.format()); });
  }

  Result run(const std::string& format) const {
    return diagram_result(
        sweep_winding_average(grid.grid(), parse_ensemble(ensemble), schur.options(grid.workers)),
        format);
  }
};

struct WordCmd {
  int order = 12;
  std::size_t length = 0;
  double phason = 0.0;
  std::string termination = "standard";

  void attach(Command& cmd) {
    cmd.add("order", order, "Substitution order (1 gives A, 2 gives AB)");
    cmd.add("length", length, "Cut-and-project length (overrides --order when > 0)");
    cmd.add("phason", phason, "Cut-and-project window offset");
    cmd.add("termination", termination, "standard, a prefix such as ABA, or phason:<value>");
    cmd.handler([this, &cmd] { return run(cmd.format()); });
  }

  Result run(const std::string& format) const {
    FibonacciWord word = length > 0 ? cut_project_word(length, phason) : generate_word(order);
    word = apply_termination(word, parse_termination(termination));
    const std::string text = word.str();
    Result r;
    if (format == "csv") {
      r.data = "index,letter\n";
      for (std::size_t i = 0; i < text.size(); ++i) r.data += fmt::format("{},{}\n", i, text[i]);
    } else {
      r.data = ordered_json{{"word", text},
                            {"length", text.size()},
                            {"count_a", word.count(Letter::A)},
                            {"count_b", word.count(Letter::B)}}
                   .dump(2) +
               "\n";
    }
    r.summary = text;
    r.metadata = {{"length", text.size()}};
    return r;
  }
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

void add_flat(RunConfig& config, const json& object, std::string_view where) {
  for (const auto& [key, value] : object.items()) {
    if (value.is_object() || value.is_array()) {
      throw ValidationError(fmt::format("{}: key '{}' must hold a single value", where, key));
    }
    config.entries.emplace_back(key, value);
  }
}

}  // namespace

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ValidationError(fmt::format("cannot read config file '{}'", path.string()));
  const std::string text{std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
  const std::string where = path.string();

  RunConfig config;
  const std::string head = trim(text);
  if (!head.empty() && head.front() == '{') {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ValidationError(fmt::format("{}: {}", where, e.what()));
    }
    if (doc.contains("parameters")) {
      for (const auto& [key, value] : doc.items()) {
        if (key == "parameters" || key == "metadata" || key == "tool" || key == "version") continue;
        if (key == "command" && value.is_string()) {
          config.command = value.get<std::string>();
          continue;
        }
        throw ValidationError(fmt::format("{}: unexpected top-level key '{}'", where, key));
      }
      if (!doc["parameters"].is_object()) {
        throw ValidationError(fmt::format("{}: 'parameters' must be an object", where));
      }
      add_flat(config, doc["parameters"], where);
    } else {
      add_flat(config, doc, where);
    }
    return config;
  }

  std::istringstream lines(text);
  std::string line;
  for (int number = 1; std::getline(lines, line); ++number) {
    const std::string content = trim(line.substr(0, line.find('#')));
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(fmt::format("{}:{}: expected key = value", where, number));
    }
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const std::string raw = trim(std::string_view(content).substr(eq + 1));
    if (key.empty()) throw ValidationError(fmt::format("{}:{}: empty key", where, number));
    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded() || value.is_object() || value.is_array()) value = raw;
    config.entries.emplace_back(key, std::move(value));
  }
  return config;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fibonacci-modulated discrete-time quantum walks: spectra, chiral displacement and "
               "boundary Schur windings",
               "fibwalk"};
  app.set_version_flag("--version", std::string("fibwalk ") + FIBWALK_VERSION + " (interface 1)");
  app.require_subcommand(1);

  SpectrumCmd spectrum;
  McdCmd mcd;
  McdMapCmd mcd_map;
  SchurTraceCmd schur_trace_cmd;
  WindingCmd winding;
  WindingMapCmd winding_map;
  WindingAverageCmd winding_average;
  WordCmd word;

  std::vector<std::unique_ptr<Command>> commands;
  auto make = [&](const char* name, const char* description, bool table, auto& target) {
    commands.push_back(std::make_unique<Command>(app, name, description, table));
    target.attach(*commands.back());
  };
  make("spectrum", "Quasienergies, boundary weights and 0/pi edge modes", true, spectrum);
  make("mcd", "Mean chiral displacement C(t) and its time average", true, mcd);
  make("mcd-map", "Time-averaged chiral displacement over a (theta_a, theta_b) grid", true, mcd_map);
  make("schur-trace", "Boundary Schur function sampled on the contour", true, schur_trace_cmd);
  make("winding", "Winding number of the boundary Schur function", false, winding);
  make("winding-map", "Winding numbers over a (theta_a, theta_b) grid", true, winding_map);
  make("winding-average", "Termination-averaged winding over a grid", true, winding_average);
  make("word", "Fibonacci word by substitution or cut-and-project", false, word);

  std::vector<std::string> storage{"fibwalk"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return 1;
  }

  for (auto& cmd : commands) {
    if (!cmd->selected()) continue;
    try {
      return cmd->execute(out, err);
    } catch (const ValidationError& e) {
      err << "error: " << e.what() << '\n';
      return 1;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return 2;
    }
  }
  return 1;
}

}  // namespace fibwalk::cli
