#pragma once

#include <atomic>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "schurcomm/fourier_testbed.hpp"
#include "schurcomm/inequalities.hpp"
#include "schurcomm/random_instances.hpp"

namespace schurcomm {

inline constexpr const char* kArtifactVersion = "0.1.0";

// Everything a verification campaign needs: which inequality, how many
// instances, the instance ensemble, the function parameters, the RNG seed,
// and the pass tolerances. Reports are a pure function of this struct.
struct CampaignConfig {
  TheoremId theorem = TheoremId::AbsFirst;
  int trials = 200;
  int dim_min = 2;
  int dim_max = 16;
  double spectral_radius = 10.0;
  bool positive_only = false;
  double kernel_fraction = 0.0;  // probability of an exact-zero eigenvalue
  double alpha = 1.0;            // Hölder exponent for HoldThm
  double holder_a = 0.0;         // Hölder additive constant A
  double holder_b = 1.0;         // Hölder multiplicative constant B
  double beta = 1.0;             // pinned smallest positive eigenvalue
  double p = 1.5;                // exponent for Lp
  int n = 1;                     // commutator order for AbsHigher
  std::uint64_t seed = 42;
  std::string ensemble = "dense";  // dense | band
  double tol_rel = 1e-9;
  double tol_abs = 1e-12;
};

inline bool theorem_needs_positive(TheoremId id) {
  switch (id) {
    case TheoremId::GBeta:
    case TheoremId::TildeLogInv:
    case TheoremId::TildeLogNonInv:
    case TheoremId::LogInterp13:
      return true;
    default:
      return false;
  }
}

// Fill in what the chosen theorem implies: positive spectrum where the
// statement demands it, and the kernel fraction that selects the branch.
inline CampaignConfig normalized(CampaignConfig c) {
  if (theorem_needs_positive(c.theorem)) c.positive_only = true;
  if (c.theorem == TheoremId::TildeLogNonInv && c.kernel_fraction == 0.0) c.kernel_fraction = 1.0;
  if (c.theorem == TheoremId::TildeLogInv || c.theorem == TheoremId::LogInterp13) {
    c.kernel_fraction = 0.0;
  }
  return c;
}

inline void validate(const CampaignConfig& c) {
  if (c.trials < 0) throw ConfigInvalid("trials must be nonnegative");
  if (c.dim_min < 2) throw ConfigInvalid("dimensions must be at least 2");
  if (c.dim_max < c.dim_min) throw ConfigInvalid("dim_max must be >= dim_min");
  if (!(c.spectral_radius > 0.0)) throw ConfigInvalid("spectral radius must be positive");
  if (c.kernel_fraction < 0.0 || c.kernel_fraction > 1.0) {
    throw ConfigInvalid("kernel fraction must lie in [0, 1]");
  }
  if (c.kernel_fraction > 0.0 && !c.positive_only) {
    throw ConfigInvalid("kernel fraction requires a positive-spectrum ensemble");
  }
  if (c.ensemble != "dense" && c.ensemble != "band") {
    throw ConfigInvalid("ensemble must be 'dense' or 'band'");
  }
  if (c.tol_rel < 0.0 || c.tol_abs < 0.0) throw ConfigInvalid("tolerances must be nonnegative");
  if (c.theorem == TheoremId::HoldThm) {
    if (!(c.alpha > 0.0) || c.alpha > 1.0) {
      throw ConfigInvalid("alpha must lie in (0, 1] for the built-in Hölder sample");
    }
    if (c.holder_a < 0.0 || c.holder_b < 0.0) {
      throw ConfigInvalid("Hölder constants A, B must be nonnegative");
    }
  }
  if (c.theorem == TheoremId::Lp && (!(c.p >= 1.0) || c.p >= 2.0)) {
    throw ConfigInvalid("p must lie in [1, 2)");
  }
  if (theorem_needs_positive(c.theorem)) {
    if (!(c.beta > 0.0) || c.beta > c.spectral_radius) {
      throw ConfigInvalid("beta must satisfy 0 < beta <= spectral radius");
    }
  }
  if (c.theorem == TheoremId::AbsHigher && c.n < 1) {
    throw ConfigInvalid("commutator order n must be >= 1");
  }
}

namespace detail {

inline HermitianOperator draw_hermitian(const CampaignConfig& c, int dim, std::mt19937_64& rng) {
  std::vector<double> lambda(static_cast<size_t>(dim));
  const double lo = c.positive_only ? 0.0 : -c.spectral_radius;
  for (auto& l : lambda) l = uniform_range(rng, lo, c.spectral_radius);
  const bool inject_zero =
      c.positive_only && c.kernel_fraction > 0.0 && uniform_unit(rng) < c.kernel_fraction;
  std::sort(lambda.begin(), lambda.end());
  if (inject_zero) lambda[0] = 0.0;
  RealVector ev = Eigen::Map<RealVector>(lambda.data(), dim);
  return hermitian_from_eigensystem(haar_unitary(dim, rng), ev);
}

inline BoundedOperator draw_y(const CampaignConfig& c, int dim, std::mt19937_64& rng) {
  return c.ensemble == "band" ? random_band_y(dim, 1, rng) : random_dense_y(dim, rng);
}

}  // namespace detail

// One campaign trial, reproducible from (config, trial index) alone.
inline InequalityReport run_single_trial(const CampaignConfig& c, std::uint64_t trial) {
  std::mt19937_64 rng = trial_rng(c.seed, trial);
  const int dim = uniform_int(rng, c.dim_min, c.dim_max);
  InequalityReport report;

  if (theorem_needs_positive(c.theorem)) {
    const bool with_kernel = c.kernel_fraction > 0.0 && uniform_unit(rng) < c.kernel_fraction;
    PositiveInstance inst =
        random_positive_instance(dim, c.spectral_radius, c.beta, with_kernel, rng);
    BoundedOperator y = detail::draw_y(c, dim, rng);
    switch (c.theorem) {
      case TheoremId::GBeta:
        report = check_gbeta(inst, y);
        break;
      case TheoremId::TildeLogInv:
      case TheoremId::TildeLogNonInv:
        report = check_tilde_log(inst, y);
        break;
      default:
        report = check_log_interp(inst, y);
        break;
    }
  } else if (c.theorem == TheoremId::Bennett) {
    HermitianOperator d = detail::draw_hermitian(c, dim, rng);
    BinningPtr binning = build_binning(d);
    BoundedOperator y = detail::draw_y(c, dim, rng);
    ScalarMultiplier s = random_window_multiplier(binning->occupied, rng);
    report = bennett_bound_check(s, to_blocks(binning, y));
  } else {
    HermitianOperator d = detail::draw_hermitian(c, dim, rng);
    BoundedOperator y = detail::draw_y(c, dim, rng);
    switch (c.theorem) {
      case TheoremId::HoldThm:
        report = check_holder(d, y, holder_power_spec(c.alpha, c.holder_a, c.holder_b));
        break;
      case TheoremId::AbsCont:
        report = check_abs_cont(d, y, arctan_spec());
        break;
      case TheoremId::Lp:
        report = check_lp(d, y, arctan_spec(), c.p);
        break;
      case TheoremId::AbsFirst:
        report = check_abs_first(d, y);
        break;
      default:
        report = check_abs_higher(d, y, c.n);
        break;
    }
  }

  report.instance_digest.seed = c.seed;
  report.instance_digest.trial = trial;
  // verdict under the (possibly overridden) campaign tolerances
  report.pass = report.lhs <= report.rhs * (1.0 + c.tol_rel) + c.tol_abs;
  return report;
}

// Worker count: SCHURCOMM_WORKERS if set, else hardware concurrency capped
// at 8. Scheduling never affects results — streams are per-trial.
inline int default_worker_count() {
  if (const char* env = std::getenv("SCHURCOMM_WORKERS")) {
    const int v = std::atoi(env);
    if (v >= 1) return std::min(v, 64);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(std::min(hc, 8u));
}

inline std::vector<InequalityReport> run_trials(const CampaignConfig& c, int workers = 0) {
  if (workers <= 0) workers = default_worker_count();
  workers = std::min(workers, std::max(1, c.trials));
  std::vector<InequalityReport> records(static_cast<size_t>(c.trials));
  if (workers <= 1) {
    for (int t = 0; t < c.trials; ++t) {
      records[static_cast<size_t>(t)] = run_single_trial(c, static_cast<std::uint64_t>(t));
    }
    return records;
  }
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto work = [&]() {
    while (true) {
      const int t = next.fetch_add(1);
      if (t >= c.trials) return;
      try {
        records[static_cast<size_t>(t)] = run_single_trial(c, static_cast<std::uint64_t>(t));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return records;
}

struct CampaignSummary {
  int trials = 0;
  int pass_count = 0;
  int fail_count = 0;
  double max_slack_ratio = 0.0;
  InstanceDigest argmax_instance;
};

inline CampaignSummary summarize(const std::vector<InequalityReport>& records) {
  CampaignSummary s;
  s.trials = static_cast<int>(records.size());
  bool first = true;
  for (const auto& r : records) {
    if (r.pass) {
      ++s.pass_count;
    } else {
      ++s.fail_count;
    }
    if (first || r.slack_ratio > s.max_slack_ratio) {
      s.max_slack_ratio = r.slack_ratio;
      s.argmax_instance = r.instance_digest;
      first = false;
    }
  }
  return s;
}

struct ReportFile {
  std::string artifact_version;
  std::string timestamp;
  CampaignConfig config;
  std::vector<InequalityReport> records;
  CampaignSummary summary;

  bool all_pass() const { return summary.fail_count == 0; }
};

inline std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

inline ReportFile run_campaign(const CampaignConfig& raw, int workers = 0) {
  const CampaignConfig c = normalized(raw);
  validate(c);
  ReportFile f;
  f.artifact_version = kArtifactVersion;
  f.timestamp = utc_timestamp();
  f.config = c;
  f.records = run_trials(c, workers);
  f.summary = summarize(f.records);
  return f;
}

}  // namespace schurcomm
