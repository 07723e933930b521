#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <wentropy/bounds.hpp>
#include <wentropy/characterization.hpp>
#include <wentropy/distribution.hpp>
#include <wentropy/entropies.hpp>
#include <wentropy/errors.hpp>
#include <wentropy/format.hpp>
#include <wentropy/report_io.hpp>
#include <wentropy/transforms.hpp>

namespace {

using namespace wentropy;

enum class Command {
  Entropy,
  Curve,
  Classify,
  Bounds,
  Audit,
  Transform,
  Reconstruct,
};

/// Fully parsed job; run() is the only consumer.
struct JobSpec {
  Command command = Command::Entropy;
  std::string dist_spec;
  std::string measure = "weighted";
  std::string format = "json";
  std::string kind;          // classify
  double start = 0.0;
  double end = 0.0;
  int steps = 0;
  bool have_grid = false;
  double t = 0.0;
  bool have_t = false;
  double affine_a = 1.0;
  double affine_b = 0.0;
  std::optional<double> seed;
};

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out += c;
    }
  }
  return out;
}

/// Serializes the failure and maps it to the documented exit code.
int fail(const JobSpec& job, std::ostream& out, int code,
         const std::string& type, const std::string& message) {
  if (job.format == "json") {
    out << "{\"error\": {\"type\": \"" << json_escape(type)
        << "\", \"message\": \"" << json_escape(message) << "\"}}\n";
  } else {
    std::cerr << "error (" << type << "): " << message << "\n";
  }
  return code;
}

std::vector<double> job_grid(const JobSpec& job) {
  if (job.steps < 2) {
    throw ParseError("curves need steps >= 2");
  }
  if (!(job.start < job.end)) {
    throw ParseError("curves need start < end");
  }
  std::vector<double> g(static_cast<std::size_t>(job.steps));
  for (int i = 0; i < job.steps; ++i) {
    g[static_cast<std::size_t>(i)] =
        job.start + (job.end - job.start) * i / (job.steps - 1);
  }
  return g;
}

/// Interior quantile grid used when a command does not pin its own grid:
/// nine evenly spaced probability levels from 0.1 to 0.9.
std::vector<double> quantile_grid(const Distribution& d) {
  std::vector<double> g;
  g.reserve(9);
  for (int i = 0; i < 9; ++i) {
    g.push_back(d.quantile(0.1 + 0.8 * i / 8));
  }
  return g;
}

void require_json(const JobSpec& job) {
  if (job.format != "json") {
    throw ParseError("csv output is only available for the curve command");
  }
}

int run(const JobSpec& job, std::ostream& out) {
  try {
    const Distribution d = Distribution::parse(job.dist_spec);
    switch (job.command) {
      case Command::Entropy: {
        require_json(job);
        const auto kind = measure_from_name(job.measure);
        if (!kind) throw ParseError("unknown measure: " + job.measure);
        if (measure_needs_t(*kind) && !job.have_t) {
          throw ParseError("measure " + job.measure + " needs --t");
        }
        const MeasureValue v = eval_measure(d, *kind, job.t);
        if (!v.converged) {
          throw NumericalError("quadrature did not converge");
        }
        out << format_sig17(v.value) << "\n";
        return 0;
      }
      case Command::Curve: {
        const auto kind = measure_from_name(job.measure);
        if (!kind) throw ParseError("unknown measure: " + job.measure);
        const EntropyCurve curve = entropy_curve(d, *kind, job_grid(job));
        out << (job.format == "csv" ? to_csv(curve) : to_json(curve) + "\n");
        return 0;
      }
      case Command::Classify: {
        require_json(job);
        const auto kind = class_kind_from_name(job.kind);
        if (!kind) throw ParseError("unknown class kind: " + job.kind);
        out << to_json(classify(d, *kind)) << "\n";
        return 0;
      }
      case Command::Bounds: {
        require_json(job);
        const auto grid = job.have_grid ? job_grid(job) : quantile_grid(d);
        std::vector<BoundReport> reports;
        reports.push_back(bound_global(d));
        reports.push_back(bound_residual_lower(d, grid));
        auto past = bound_past_upper(d, grid);
        reports.push_back(std::move(past.first));
        reports.push_back(std::move(past.second));
        out << to_json(reports) << "\n";
        return 0;
      }
      case Command::Audit: {
        require_json(job);
        const auto grid = job.have_grid ? job_grid(job) : quantile_grid(d);
        out << to_json(run_identity_suite(d, grid)) << "\n";
        return 0;
      }
      case Command::Transform: {
        require_json(job);
        bool past;
        if (job.measure == "weighted-residual" || job.measure == "weighted") {
          past = false;
        } else if (job.measure == "weighted-past") {
          past = true;
        } else {
          throw ParseError(
              "transform supports measures weighted-residual and "
              "weighted-past");
        }
        if (!job.have_t) throw ParseError("transform needs --t");
        const MonotoneTransform phi =
            affine_transform(job.affine_a, job.affine_b);
        const double value =
            past ? transformed_weighted_past(d, phi, job.t)
                 : transformed_weighted_residual(d, phi, job.t);
        // The closed composition route exists only for a > 0, b >= 0.
        std::string composition = "null";
        if (job.affine_a > 0.0 && job.affine_b >= 0.0) {
          composition = format_sig17(
              past ? affine_past(d, job.affine_a, job.affine_b, job.t)
                   : affine_residual(d, job.affine_a, job.affine_b, job.t));
        }
        out << "{\"dist\": \"" << json_escape(d.spec())
            << "\", \"a\": " << format_sig17(job.affine_a)
            << ", \"b\": " << format_sig17(job.affine_b) << ", \"measure\": \""
            << (past ? "weighted-past" : "weighted-residual")
            << "\", \"t\": " << format_sig17(job.t)
            << ", \"value\": " << format_sig17(value)
            << ", \"composition\": " << composition << "}\n";
        return 0;
      }
      case Command::Reconstruct: {
        require_json(job);
        out << to_json(reconstruct_survival_curve(d, job_grid(job), job.seed))
            << "\n";
        return 0;
      }
    }
    return 0;
  } catch (const ParseError& e) {
    return fail(job, out, 2, "parse", e.what());
  } catch (const DomainError& e) {
    return fail(job, out, 3, "domain", e.what());
  } catch (const BracketError& e) {
    return fail(job, out, 3, "bracket", e.what());
  } catch (const NumericalError& e) {
    return fail(job, out, 3, "numerical", e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shift-dependent information measures of lifetime laws"};
  app.require_subcommand(1);

  JobSpec job;
  // Shared flags are registered per subcommand so each help page is
  // self-contained.
  auto add_common = [&job](CLI::App* cmd) {
    cmd->add_option("--dist", job.dist_spec,
                    "distribution spec, family:key=value,... ")
        ->required();
    cmd->add_option("--format", job.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  };
  auto add_grid = [&job](CLI::App* cmd, bool required) {
    auto* s = cmd->add_option("--start", job.start, "grid start");
    auto* e = cmd->add_option("--end", job.end, "grid end");
    auto* n = cmd->add_option("--steps", job.steps, "grid point count");
    if (required) {
      s->required();
      e->required();
      n->required();
    }
  };

  auto* entropy = app.add_subcommand("entropy", "one scalar measure value");
  add_common(entropy);
  entropy->add_option("--measure", job.measure, "measure name")
      ->capture_default_str();
  auto* entropy_t =
      entropy->add_option("-t,--t", job.t, "evaluation shift for dynamic measures");

  auto* curve = app.add_subcommand("curve", "measure values over a grid");
  add_common(curve);
  curve->add_option("--measure", job.measure, "measure name")->required();
  add_grid(curve, true);

  auto* classify_cmd =
      app.add_subcommand("classify", "monotonicity class of a weighted curve");
  add_common(classify_cmd);
  classify_cmd->add_option("--kind", job.kind, "wurl or wupl")->required();

  auto* bounds_cmd = app.add_subcommand("bounds", "all bound reports");
  add_common(bounds_cmd);
  add_grid(bounds_cmd, false);

  auto* audit = app.add_subcommand("audit", "identity audit suite");
  add_common(audit);
  add_grid(audit, false);

  auto* transform =
      app.add_subcommand("transform", "measures of an affine transform aX+b");
  add_common(transform);
  std::pair<double, double> affine{1.0, 0.0};
  transform->add_option("--affine", affine, "scale and shift: a b")
      ->delimiter(',')
      ->required();
  transform->add_option("--measure", job.measure, "measure name")
      ->capture_default_str();
  auto* transform_t =
      transform->add_option("-t,--t", job.t, "evaluation shift")->required();

  auto* reconstruct =
      app.add_subcommand("reconstruct", "hazard and survival recovery");
  add_common(reconstruct);
  add_grid(reconstruct, true);
  double seed = 0.0;
  auto* seed_opt = reconstruct->add_option(
      "--seed", seed, "hazard seed for an ambiguous first grid point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (entropy->parsed()) {
    job.command = Command::Entropy;
    job.have_t = entropy_t->count() > 0;
  } else if (curve->parsed()) {
    job.command = Command::Curve;
    job.have_grid = true;
  } else if (classify_cmd->parsed()) {
    job.command = Command::Classify;
  } else if (bounds_cmd->parsed()) {
    job.command = Command::Bounds;
    job.have_grid = bounds_cmd->count("--start") > 0;
  } else if (audit->parsed()) {
    job.command = Command::Audit;
    job.have_grid = audit->count("--start") > 0;
  } else if (transform->parsed()) {
    job.command = Command::Transform;
    job.affine_a = affine.first;
    job.affine_b = affine.second;
    job.have_t = transform_t->count() > 0;
  } else if (reconstruct->parsed()) {
    job.command = Command::Reconstruct;
    job.have_grid = true;
    if (seed_opt->count() > 0) job.seed = seed;
  }

  return run(job, std::cout);
}
