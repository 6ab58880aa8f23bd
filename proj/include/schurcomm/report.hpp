#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "schurcomm/errors.hpp"

namespace schurcomm {

// Every checked inequality is filed under one of these.
enum class TheoremId {
  Bennett,
  HoldThm,
  AbsCont,
  Lp,
  GBeta,
  TildeLogInv,
  TildeLogNonInv,
  LogInterp13,
  AbsFirst,
  AbsHigher,
};

inline const char* theorem_name(TheoremId id) {
  switch (id) {
    case TheoremId::Bennett: return "Bennett";
    case TheoremId::HoldThm: return "HoldThm";
    case TheoremId::AbsCont: return "AbsCont";
    case TheoremId::Lp: return "Lp";
    case TheoremId::GBeta: return "GBeta";
    case TheoremId::TildeLogInv: return "TildeLogInv";
    case TheoremId::TildeLogNonInv: return "TildeLogNonInv";
    case TheoremId::LogInterp13: return "LogInterp13";
    case TheoremId::AbsFirst: return "AbsFirst";
    case TheoremId::AbsHigher: return "AbsHigher";
  }
  throw Error("theorem_name: unknown id");
}

inline TheoremId theorem_from_name(const std::string& name) {
  static const std::map<std::string, TheoremId> table = {
      {"Bennett", TheoremId::Bennett},
      {"HoldThm", TheoremId::HoldThm},
      {"AbsCont", TheoremId::AbsCont},
      {"Lp", TheoremId::Lp},
      {"GBeta", TheoremId::GBeta},
      {"TildeLogInv", TheoremId::TildeLogInv},
      {"TildeLogNonInv", TheoremId::TildeLogNonInv},
      {"LogInterp13", TheoremId::LogInterp13},
      {"AbsFirst", TheoremId::AbsFirst},
      {"AbsHigher", TheoremId::AbsHigher},
  };
  auto it = table.find(name);
  if (it == table.end()) throw ConfigInvalid("unknown theorem id: " + name);
  return it->second;
}

// Where the instance came from, enough to rebuild it: RNG seed and trial
// index (zero for designed instances), dimension, and the spectral range.
struct InstanceDigest {
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  int dim = 0;
  double spectral_min = 0.0;
  double spectral_max = 0.0;
};

// Pass policy for all inequality checks. The inequalities are exact
// mathematics; the tolerance covers floating-point evaluation only.
inline bool inequality_pass(double lhs, double rhs) {
  return lhs <= rhs * (1.0 + 1e-9) + 1e-12;
}

// lhs/rhs. A zero RHS with only float dust on the left reports 0; a genuine
// violation of a zero bound reports +inf (serialized as null in JSON).
inline double slack_ratio(double lhs, double rhs) {
  if (rhs > 0.0) return lhs / rhs;
  if (lhs <= 1e-12) return 0.0;
  return std::numeric_limits<double>::infinity();
}

// An auxiliary inequality verified en route to a headline one (interior
// decomposition steps, projection-commutator bounds, scaling identities).
struct SideCheck {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

inline SideCheck make_side_check(std::string label, double lhs, double rhs) {
  bool ok = inequality_pass(lhs, rhs);
  return SideCheck{std::move(label), lhs, rhs, ok};
}

// One checked inequality: the theorem it instantiates, the parameters the
// RHS was assembled from, exact LHS, RHS, slack, verdict, and the digest
// of the instance it was checked on.
struct InequalityReport {
  TheoremId theorem_id = TheoremId::Bennett;
  std::map<std::string, double> params;  // ordered => deterministic output
  double lhs = 0.0;
  double rhs = 0.0;
  double slack_ratio = 0.0;
  bool pass = false;
  InstanceDigest instance_digest;
  std::vector<SideCheck> side_checks;
};

inline InequalityReport make_report(TheoremId id, std::map<std::string, double> params, double lhs,
                                    double rhs, InstanceDigest digest) {
  InequalityReport r;
  r.theorem_id = id;
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack_ratio = schurcomm::slack_ratio(lhs, rhs);
  r.pass = inequality_pass(lhs, rhs);
  r.instance_digest = digest;
  return r;
}

}  // namespace schurcomm
