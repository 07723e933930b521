#include "wentropy/report_io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "wentropy/format.hpp"

namespace wentropy {

std::string format_shortest(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string format_sig17(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[48];
  auto res = std::to_chars(buf, buf + sizeof(buf), x,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

/// JSON numeric token: 17 significant digits, null for non-finite values.
std::string num(double x) {
  if (!std::isfinite(x)) return "null";
  return format_sig17(x);
}

const char* boolean(bool b) { return b ? "true" : "false"; }

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

}  // namespace

std::string to_csv(const EntropyCurve& curve) {
  std::string out = "t,value,converged\n";
  for (const CurvePoint& p : curve.grid) {
    out += format_sig17(p.t);
    out += ',';
    out += format_sig17(p.value);
    out += ',';
    out += boolean(p.converged);
    out += '\n';
  }
  return out;
}

std::string to_json(const EntropyCurve& curve) {
  std::ostringstream out;
  out << "{\n  \"kind\": " << quoted(measure_name(curve.kind))
      << ",\n  \"dist\": " << quoted(curve.dist) << ",\n  \"grid\": [";
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    const CurvePoint& p = curve.grid[i];
    out << (i ? ",\n    " : "\n    ") << "{\"t\": " << num(p.t)
        << ", \"value\": " << num(p.value)
        << ", \"converged\": " << boolean(p.converged) << "}";
  }
  out << (curve.grid.empty() ? "]" : "\n  ]") << "\n}";
  return out.str();
}

std::string to_json(const IdentityReport& report) {
  std::ostringstream out;
  out << "{\n  \"identity_id\": " << quoted(identity_name(report.identity_id))
      << ",\n  \"dist\": " << quoted(report.dist)
      << ",\n  \"residuals\": [";
  for (std::size_t i = 0; i < report.residuals.size(); ++i) {
    const ResidualSample& s = report.residuals[i];
    out << (i ? ",\n    " : "\n    ") << "{\"t\": " << num(s.t)
        << ", \"lhs\": " << num(s.lhs) << ", \"rhs\": " << num(s.rhs) << "}";
  }
  out << (report.residuals.empty() ? "]" : "\n  ]")
      << ",\n  \"max_abs_residual\": " << num(report.max_abs_residual)
      << ",\n  \"verdict\": " << quoted(verdict_name(report.verdict))
      << ",\n  \"tolerance\": " << num(report.tolerance)
      << ",\n  \"note\": " << quoted(report.note) << "\n}";
  return out.str();
}

std::string to_json(const std::vector<IdentityReport>& reports) {
  std::string out = "[";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    out += (i ? ",\n" : "\n");
    out += to_json(reports[i]);
  }
  out += reports.empty() ? "]" : "\n]";
  return out;
}

std::string to_json(const BoundReport& report) {
  std::ostringstream out;
  out << "{\n  \"bound_id\": " << quoted(bound_name(report.bound_id))
      << ",\n  \"dist\": " << quoted(report.dist)
      << ",\n  \"precondition_met\": " << boolean(report.precondition_met)
      << ",\n  \"samples\": [";
  for (std::size_t i = 0; i < report.samples.size(); ++i) {
    const BoundSample& s = report.samples[i];
    out << (i ? ",\n    " : "\n    ") << "{\"t\": " << num(s.t)
        << ", \"lhs\": " << num(s.lhs) << ", \"rhs\": " << num(s.rhs)
        << ", \"slack\": " << num(s.slack) << "}";
  }
  out << (report.samples.empty() ? "]" : "\n  ]")
      << ",\n  \"min_slack\": " << num(report.min_slack)
      << ",\n  \"verdict\": " << quoted(bound_verdict_name(report.verdict))
      << ",\n  \"envelope_mu\": " << num(report.envelope_mu)
      << ",\n  \"envelope_value\": " << num(report.envelope_value) << "\n}";
  return out.str();
}

std::string to_json(const std::vector<BoundReport>& reports) {
  std::string out = "[";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    out += (i ? ",\n" : "\n");
    out += to_json(reports[i]);
  }
  out += reports.empty() ? "]" : "\n]";
  return out;
}

std::string to_json(const ClassificationReport& report) {
  std::ostringstream out;
  // verdict leads: it is the headline answer of a classify run.
  out << "{\n  \"verdict\": " << quoted(monotonicity_name(report.verdict))
      << ",\n  \"class_kind\": " << quoted(class_kind_name(report.class_kind))
      << ",\n  \"dist\": " << quoted(report.dist)
      << ",\n  \"decreasing_compatible\": "
      << boolean(report.decreasing_compatible)
      << ",\n  \"increasing_compatible\": "
      << boolean(report.increasing_compatible)
      << ",\n  \"zero_tolerance\": " << num(report.zero_tolerance)
      << ",\n  \"derivative_samples\": [";
  for (std::size_t i = 0; i < report.derivative_samples.size(); ++i) {
    const DerivativeSample& s = report.derivative_samples[i];
    out << (i ? ",\n    " : "\n    ") << "{\"t\": " << num(s.t)
        << ", \"derivative\": " << num(s.derivative) << "}";
  }
  out << (report.derivative_samples.empty() ? "]" : "\n  ]") << "\n}";
  return out.str();
}

std::string to_json(const ReconstructionReport& report) {
  std::ostringstream out;
  out << "{\n  \"dist\": " << quoted(report.dist)
      << ",\n  \"max_survival_error\": " << num(report.max_survival_error)
      << ",\n  \"points\": [";
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    const ReconstructionPoint& p = report.points[i];
    out << (i ? ",\n    " : "\n    ") << "{\"t\": " << num(p.t)
        << ", \"lambda_hat\": " << num(p.lambda_hat) << ", \"candidates\": [";
    for (std::size_t j = 0; j < p.candidates.size(); ++j) {
      out << (j ? ", " : "") << num(p.candidates[j]);
    }
    out << "], \"flag\": " << quoted(point_flag_name(p.flag))
        << ", \"survival_hat\": " << num(p.survival_hat)
        << ", \"survival_true\": " << num(p.survival_true) << "}";
  }
  out << (report.points.empty() ? "]" : "\n  ]") << "\n}";
  return out.str();
}

}  // namespace wentropy
