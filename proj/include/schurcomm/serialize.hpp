#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include "schurcomm/campaign.hpp"

namespace schurcomm {

// Canonical JSON: fixed key order, floats at 17 significant digits (enough
// to round-trip a double bit-exactly), non-finite values as null. Identical
// (config, seed) pairs must serialize byte-identically, timestamps aside.

namespace detail {

inline std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

inline std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += "\"";
  return out;
}

inline std::string json_bool(bool b) { return b ? "true" : "false"; }

}  // namespace detail

inline std::string digest_json(const InstanceDigest& d) {
  std::string out = "{";
  out += "\"seed\":" + std::to_string(d.seed);
  out += ",\"trial\":" + std::to_string(d.trial);
  out += ",\"dim\":" + std::to_string(d.dim);
  out += ",\"spectral_min\":" + detail::json_number(d.spectral_min);
  out += ",\"spectral_max\":" + detail::json_number(d.spectral_max);
  out += "}";
  return out;
}

inline std::string record_json(const InequalityReport& r) {
  std::string out = "{";
  out += "\"theorem\":" + detail::json_string(theorem_name(r.theorem_id));
  out += ",\"params\":{";
  bool first = true;
  for (const auto& [key, value] : r.params) {
    if (!first) out += ",";
    out += detail::json_string(key) + ":" + detail::json_number(value);
    first = false;
  }
  out += "}";
  out += ",\"lhs\":" + detail::json_number(r.lhs);
  out += ",\"rhs\":" + detail::json_number(r.rhs);
  out += ",\"slack_ratio\":" + detail::json_number(r.slack_ratio);
  out += ",\"pass\":" + detail::json_bool(r.pass);
  out += ",\"instance\":" + digest_json(r.instance_digest);
  out += ",\"side_checks\":[";
  first = true;
  for (const auto& sc : r.side_checks) {
    if (!first) out += ",";
    out += "{\"label\":" + detail::json_string(sc.label);
    out += ",\"lhs\":" + detail::json_number(sc.lhs);
    out += ",\"rhs\":" + detail::json_number(sc.rhs);
    out += ",\"pass\":" + detail::json_bool(sc.pass) + "}";
    first = false;
  }
  out += "]}";
  return out;
}

// The record array alone: this is the byte-comparison target for
// reproducibility (no timestamp, no environment).
inline std::string records_json(const std::vector<InequalityReport>& records) {
  std::string out = "[\n";
  for (size_t i = 0; i < records.size(); ++i) {
    out += record_json(records[i]);
    if (i + 1 < records.size()) out += ",";
    out += "\n";
  }
  out += "]";
  return out;
}

inline std::string config_json(const CampaignConfig& c) {
  std::string out = "{";
  out += "\"theorem\":" + detail::json_string(theorem_name(c.theorem));
  out += ",\"trials\":" + std::to_string(c.trials);
  out += ",\"dim_min\":" + std::to_string(c.dim_min);
  out += ",\"dim_max\":" + std::to_string(c.dim_max);
  out += ",\"spectral_radius\":" + detail::json_number(c.spectral_radius);
  out += ",\"positive_only\":" + detail::json_bool(c.positive_only);
  out += ",\"kernel_fraction\":" + detail::json_number(c.kernel_fraction);
  out += ",\"alpha\":" + detail::json_number(c.alpha);
  out += ",\"A\":" + detail::json_number(c.holder_a);
  out += ",\"B\":" + detail::json_number(c.holder_b);
  out += ",\"beta\":" + detail::json_number(c.beta);
  out += ",\"p\":" + detail::json_number(c.p);
  out += ",\"n\":" + std::to_string(c.n);
  out += ",\"seed\":" + std::to_string(c.seed);
  out += ",\"ensemble\":" + detail::json_string(c.ensemble);
  out += ",\"tol_rel\":" + detail::json_number(c.tol_rel);
  out += ",\"tol_abs\":" + detail::json_number(c.tol_abs);
  out += "}";
  return out;
}

inline std::string report_json(const ReportFile& f) {
  std::string out = "{\n";
  out += "\"header\":{";
  out += "\"artifact_version\":" + detail::json_string(f.artifact_version);
  out += ",\"config\":" + config_json(f.config);
  out += ",\"timestamp\":" + detail::json_string(f.timestamp);
  out += "},\n";
  out += "\"records\":" + records_json(f.records) + ",\n";
  out += "\"summary\":{";
  out += "\"trials\":" + std::to_string(f.summary.trials);
  out += ",\"pass_count\":" + std::to_string(f.summary.pass_count);
  out += ",\"fail_count\":" + std::to_string(f.summary.fail_count);
  out += ",\"max_slack_ratio\":" + detail::json_number(f.summary.max_slack_ratio);
  out += ",\"argmax_instance\":" + digest_json(f.summary.argmax_instance);
  out += "}\n}\n";
  return out;
}

// Lossy convenience view: one row per record, params flattened into a
// single key=value;... column, side checks omitted.
inline std::string report_csv(const ReportFile& f) {
  std::string out = "theorem,trial,seed,dim,spectral_min,spectral_max,lhs,rhs,slack_ratio,pass,params\n";
  for (const auto& r : f.records) {
    out += theorem_name(r.theorem_id);
    out += "," + std::to_string(r.instance_digest.trial);
    out += "," + std::to_string(r.instance_digest.seed);
    out += "," + std::to_string(r.instance_digest.dim);
    out += "," + detail::json_number(r.instance_digest.spectral_min);
    out += "," + detail::json_number(r.instance_digest.spectral_max);
    out += "," + detail::json_number(r.lhs);
    out += "," + detail::json_number(r.rhs);
    out += "," + (std::isfinite(r.slack_ratio) ? detail::json_number(r.slack_ratio) : "inf");
    out += r.pass ? ",1" : ",0";
    out += ",";
    bool first = true;
    for (const auto& [key, value] : r.params) {
      if (!first) out += ";";
      out += key + "=" + detail::json_number(value);
      first = false;
    }
    out += "\n";
  }
  return out;
}

}  // namespace schurcomm
