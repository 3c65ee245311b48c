#include "cli.hpp"

#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "entropart/clebsch_gordan.hpp"
#include "entropart/entropy.hpp"
#include "entropart/error.hpp"
#include "entropart/index_map.hpp"
#include "entropart/io.hpp"
#include "entropart/prob.hpp"

namespace entropart::cli {

namespace {

struct RunConfig {
  std::string input;
  std::string shape;
  std::string base = "e";
  std::size_t max_parts = 3;
  std::string format = "json";
  double tolerance = kDefaultTolerance;
  int j1 = 0, j2 = 0, j = 0, m = 0;
  std::string which = "plane";
  Extent cap = kDefaultEnumerationCap;
};

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto logger = std::make_shared<spdlog::logger>("entropart", sink);
  logger->set_pattern("[%l] %v");
  logger->set_level(spdlog::level::warn);
  if (const char* level = std::getenv("ENTROPART_LOG")) {
    logger->set_level(spdlog::level::from_str(level));
  }
  return logger;
}

std::string grouping_label(const std::vector<AxisSet>& grouping) {
  std::string s;
  for (std::size_t g = 0; g < grouping.size(); ++g) {
    if (g) s += '|';
    for (std::size_t i = 0; i < grouping[g].size(); ++i) {
      if (i) s += ';';
      s += std::to_string(grouping[g][i]);
    }
  }
  return s;
}

void write_reports_text(std::ostream& out,
                        const std::vector<InequalityReport>& reports) {
  for (const auto& r : reports) {
    out << to_string(r.kind) << "  shape=" << r.shape
        << "  groups=" << grouping_label(r.grouping);
    for (const auto& [name, value] : r.entropies) {
      out << "  " << name << '=' << io::format_double(value);
    }
    out << "  residual=" << io::format_double(r.residual)
        << "  holds=" << (r.holds ? "yes" : "NO") << '\n';
  }
}

void write_reports_csv(std::ostream& out,
                       const std::vector<InequalityReport>& reports) {
  out << "kind,shape,grouping,base,residual,holds\n";
  for (const auto& r : reports) {
    out << to_string(r.kind) << ',' << r.shape << ','
        << grouping_label(r.grouping) << ',' << r.base.label() << ','
        << io::format_double(r.residual) << ',' << (r.holds ? "true" : "false")
        << '\n';
  }
}

bool all_hold(const std::vector<InequalityReport>& reports) {
  for (const auto& r : reports) {
    if (!r.holds) return false;
  }
  return true;
}

int cmd_normalize(const RunConfig& cfg, std::ostream& out,
                  spdlog::logger& log) {
  const auto values = io::read_values_file(cfg.input);
  log.info("read {} values from {}", values.size(), cfg.input);
  const Distribution dist = normalize(RealSequence(values));
  if (cfg.format == "json") {
    out << io::to_json(dist).dump() << '\n';
  } else {
    if (cfg.format == "csv") out << "y,p\n";
    for (std::size_t y = 0; y < dist.size(); ++y) {
      out << y + 1 << (cfg.format == "csv" ? "," : "  ")
          << io::format_double(dist.probs()[y]) << '\n';
    }
  }
  return kOk;
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out, spdlog::logger& log) {
  const auto values = io::read_values_file(cfg.input);
  const Distribution dist = normalize(RealSequence(values));
  const LogBase base = LogBase::parse(cfg.base);

  std::vector<Shape> shapes;
  std::vector<InequalityReport> reports;
  std::vector<std::string> notes;
  if (!cfg.shape.empty()) {
    const JointView joint(dist, Shape::parse(cfg.shape));
    reports = shape_reports(joint, base, cfg.tolerance);
    shapes.push_back(joint.shape());
    if (joint.rank() < 2) {
      notes.push_back("single-axis shape: no virtual subsystems to compare");
    }
  } else {
    ScanResult result = scan(dist, cfg.max_parts, base, cfg.tolerance);
    shapes = std::move(result.shapes);
    reports = std::move(result.reports);
    notes = std::move(result.notes);
  }
  log.info("{} shapes, {} reports", shapes.size(), reports.size());
  for (const auto& note : notes) log.info("{}", note);
  const bool ok = all_hold(reports);

  if (cfg.format == "json") {
    nlohmann::json doc;
    doc["n"] = dist.size();
    doc["base"] = base.label();
    doc["tolerance"] = cfg.tolerance;
    std::vector<std::string> shape_labels;
    for (const auto& s : shapes) shape_labels.push_back(s.to_string());
    doc["shapes"] = shape_labels;
    doc["notes"] = notes;
    doc["reports"] = nlohmann::json::array();
    for (const auto& r : reports) doc["reports"].push_back(io::to_json(r));
    doc["all_hold"] = ok;
    out << doc.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    write_reports_csv(out, reports);
  } else {
    out << "N=" << dist.size() << "  base=" << base.label()
        << "  tolerance=" << io::format_double(cfg.tolerance) << '\n';
    for (const auto& note : notes) out << "note: " << note << '\n';
    write_reports_text(out, reports);
    out << (ok ? "all inequalities hold\n" : "INEQUALITY VIOLATED\n");
  }
  return ok ? kOk : kInequalityFailed;
}

int cmd_cg(const RunConfig& cfg, std::ostream& out, spdlog::logger& log) {
  const HalfInt j1{cfg.j1}, j2{cfg.j2}, j{cfg.j}, m{cfg.m};
  const LogBase base = LogBase::parse(cfg.base);
  const CGTable table = cg_squared_table(j1, j2, j, m);
  const Distribution f = table.distribution();

  std::vector<InequalityReport> reports;
  reports.push_back(cg_subadditivity(j1, j2, j, m, base, cfg.tolerance));
  std::optional<Shape> triple;
  if (!cfg.shape.empty()) {
    triple = Shape::parse(cfg.shape);
  } else {
    triple = default_triple_shape(table.shape.total());
  }
  if (triple) {
    reports.push_back(cg_ssa(j1, j2, j, m, *triple, base, cfg.tolerance));
  } else {
    log.info("N={} admits no three-factor shape; SSA skipped",
             table.shape.total());
  }
  const bool ok = all_hold(reports);

  if (cfg.format == "json") {
    nlohmann::json doc;
    doc["table"] = io::to_json(table);
    doc["distribution"] = io::to_json(f);
    std::vector<std::string> exact;
    for (const auto& p : table.exact_probabilities()) exact.push_back(p.str());
    doc["exact_distribution"] = exact;
    doc["subadditivity"] = io::to_json(reports.front());
    doc["ssa"] = reports.size() > 1 ? io::to_json(reports.back())
                                    : nlohmann::json(nullptr);
    doc["all_hold"] = ok;
    out << doc.dump(2) << '\n';
  } else {
    out << table.couple.to_string() << "  shape=" << table.shape << '\n';
    out << "y  m1  m2  coefficient  f(y)\n";
    for (std::size_t y = 0; y < table.entries.size(); ++y) {
      const auto& e = table.entries[y];
      out << y + 1 << "  " << e.m1.to_string() << "  " << e.m2.to_string()
          << "  ";
      if (e.value.is_zero()) {
        out << '0';
      } else {
        out << (e.value.sign() < 0 ? "-" : "") << "sqrt("
            << e.value.radicand().str() << ')';
      }
      out << "  " << e.value.squared().str() << '\n';
    }
    write_reports_text(out, reports);
    out << (ok ? "all inequalities hold\n" : "INEQUALITY VIOLATED\n");
  }
  return ok ? kOk : kInequalityFailed;
}

int cmd_plot_data(const RunConfig& cfg, std::ostream& out) {
  const Shape shape = Shape::parse(cfg.shape);
  if (cfg.which == "plane") {
    const auto rows = lattice_points(shape, cfg.cap);
    write_lattice_csv(out, shape, rows);
  } else {
    const auto segments = projected_intersections(shape, cfg.cap);
    out << "y,x1_begin,x2_begin,x1_end,x2_end\n";
    for (const auto& s : segments) {
      out << s.y.value << ',' << io::format_double(s.begin[0]) << ','
          << io::format_double(s.begin[1]) << ','
          << io::format_double(s.end[0]) << ','
          << io::format_double(s.end[1]) << '\n';
    }
  }
  return kOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out,
        std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Entropic inequalities on partitions of a finite index set",
               "entropart"};
  app.require_subcommand(1);

  const auto add_format = [&](CLI::App* sub,
                              std::vector<std::string> allowed) {
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember(std::move(allowed)))
        ->capture_default_str();
  };
  const auto add_entropy_opts = [&](CLI::App* sub) {
    sub->add_option("--base", cfg.base, "Logarithm base")
        ->check(CLI::IsMember({"2", "e", "10"}))
        ->capture_default_str();
    sub->add_option("--tolerance", cfg.tolerance,
                    "Tolerance on residuals")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
  };

  auto* normalize_cmd =
      app.add_subcommand("normalize", "Turn real numbers into p(y)");
  normalize_cmd->add_option("--input", cfg.input, "CSV or JSON file, - for stdin")
      ->required();
  add_format(normalize_cmd, {"json", "text", "csv"});

  auto* analyze_cmd = app.add_subcommand(
      "analyze", "Entropic relations over one shape or every factorization");
  analyze_cmd->add_option("--input", cfg.input, "CSV or JSON file, - for stdin")
      ->required();
  analyze_cmd->add_option("--shape", cfg.shape, "Shape such as 4x2");
  analyze_cmd->add_option("--max-parts", cfg.max_parts,
                          "Largest number of factors to scan")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_entropy_opts(analyze_cmd);
  add_format(analyze_cmd, {"json", "text", "csv"});

  auto* cg_cmd = app.add_subcommand(
      "cg", "Clebsch-Gordan table and its inequalities (twice-valued spins)");
  cg_cmd->add_option("--j1", cfg.j1, "2*j1")->required();
  cg_cmd->add_option("--j2", cfg.j2, "2*j2")->required();
  cg_cmd->add_option("--j", cfg.j, "2*j")->required();
  cg_cmd->add_option("--m", cfg.m, "2*m")->required();
  cg_cmd->add_option("--shape", cfg.shape, "Three-factor shape for SSA");
  add_entropy_opts(cg_cmd);
  add_format(cg_cmd, {"json", "text"});

  auto* plot_cmd =
      app.add_subcommand("plot-data", "Lattice or projection data as CSV");
  plot_cmd->add_option("--shape", cfg.shape, "Shape such as 4x4")->required();
  plot_cmd->add_option("--which", cfg.which, "plane or projections")
      ->check(CLI::IsMember({"plane", "projections"}))
      ->capture_default_str();
  plot_cmd->add_option("--cap", cfg.cap, "Largest N to enumerate")
      ->capture_default_str();
  add_format(plot_cmd, {"csv"});

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  auto log = make_logger(err);
  try {
    if (*normalize_cmd) return cmd_normalize(cfg, out, *log);
    if (*analyze_cmd) return cmd_analyze(cfg, out, *log);
    if (*cg_cmd) return cmd_cg(cfg, out, *log);
    return cmd_plot_data(cfg, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return e.kind() == ErrorKind::degenerate_sequence ? kDegenerate : kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace entropart::cli
