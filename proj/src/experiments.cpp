#include "neighborly/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "neighborly/bounds.hpp"
#include "neighborly/combinatorics.hpp"
#include "neighborly/errors.hpp"

namespace neighborly {
namespace {

struct TrialOutcome {
  double value = 0;
  std::uint64_t discarded = 0;
};

struct Totals {
  double sum = 0;
  double sum_sq = 0;
  std::uint64_t discarded = 0;
};

/// Trials are split into contiguous blocks, one per worker. Each trial owns
/// stream (seed, trial_index), and the values summed are small integers, so
/// the totals are exact and independent of the split.
template <typename Trial>
Totals run_trials(std::uint64_t trials, unsigned workers, const Trial& trial) {
  workers = std::max(1u, workers);
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(trials, 1)));
  std::vector<Totals> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto body = [&](unsigned w) {
    const std::uint64_t begin = trials * w / workers;
    const std::uint64_t end = trials * (w + 1) / workers;
    try {
      for (std::uint64_t t = begin; t < end; ++t) {
        const TrialOutcome o = trial(t);
        partial[w].sum += o.value;
        partial[w].sum_sq += o.value * o.value;
        partial[w].discarded += o.discarded;
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body, w);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Totals total;
  for (const auto& p : partial) {
    total.sum += p.sum;
    total.sum_sq += p.sum_sq;
    total.discarded += p.discarded;
  }
  return total;
}

/// Draws clouds from the trial's stream until `evaluate` gives a verdict.
/// `evaluate` settles float tolerance-band cases exactly and returns nullopt
/// only for a truly degenerate draw.
template <typename Evaluate>
TrialOutcome with_redraws(const ExperimentConfig& c, std::uint64_t trial_index, const Evaluate& evaluate) {
  Philox4x32 engine(c.seed, trial_index);
  TrialOutcome out;
  for (int attempt = 0; attempt <= kMaxRedraws; ++attempt) {
    FloatCloud cloud = sample_cloud(c.spec, c.n, engine);
    if (auto v = evaluate(cloud, engine)) {
      out.value = *v;
      return out;
    }
    ++out.discarded;
  }
  throw std::runtime_error("experiment: trial " + std::to_string(trial_index) + " stayed degenerate after " +
                           std::to_string(kMaxRedraws) + " redraws");
}

Estimate finish(const ExperimentConfig& c, const Totals& totals) {
  Estimate e = wilson_interval(static_cast<std::uint64_t>(std::llround(totals.sum)), c.trials);
  e.discarded_degenerate = totals.discarded;
  e.seed = c.seed;
  if (static_cast<double>(totals.discarded) >= 0.001 * static_cast<double>(c.trials)) {
    e.warning = "degenerate draws discarded: " + std::to_string(totals.discarded) + " of " +
                std::to_string(c.trials) + " trials";
  }
  return e;
}

void require_target(const ExperimentConfig& c, TargetKind t) {
  if (c.target != t) {
    throw std::invalid_argument(std::string("experiment: expected target ") + to_string(t) + ", got " +
                                to_string(c.target));
  }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_escape(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch == '\n' ? ' ' : ch;
  }
  return out + "\"";
}

/// The exact bound matching a config, when one is defined.
std::pair<std::optional<double>, std::string> matching_bound(const ExperimentConfig& c) {
  try {
    switch (c.target) {
      case TargetKind::containment:
        if (c.query_point && !c.query_point->isZero()) return {std::nullopt, ""};
        return {to_double(wendel_bound(c.n, c.d)), "wendel_bound"};
      case TargetKind::face_density:
        if (c.param + 1 >= c.n) return {std::nullopt, ""};
        return {to_double(face_nonface_bound(c.n, c.d, c.param + 1)), "face_nonface_bound"};
      case TargetKind::neighborliness:
        if (c.param >= c.n) return {std::nullopt, ""};
        return {to_double(neighborly_failure_bound(c.n, c.d, c.param)), "neighborly_failure_bound"};
      case TargetKind::nonface_count:
        return {std::nullopt, ""};
    }
  } catch (const std::exception&) {
  }
  return {std::nullopt, ""};
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

const char* to_string(TargetKind t) {
  switch (t) {
    case TargetKind::containment:
      return "containment";
    case TargetKind::face_density:
      return "face_density";
    case TargetKind::neighborliness:
      return "neighborliness";
    case TargetKind::nonface_count:
      return "nonface_count";
  }
  return "?";
}

TargetKind parse_target(std::string_view name) {
  for (auto t : {TargetKind::containment, TargetKind::face_density, TargetKind::neighborliness,
                 TargetKind::nonface_count}) {
    if (name == to_string(t)) return t;
  }
  throw std::invalid_argument("unknown target '" + std::string(name) +
                              "' (expected containment, face_density, neighborliness or nonface_count)");
}

void ExperimentConfig::validate() const {
  if (d < 1) throw std::invalid_argument("experiment: d must be >= 1");
  if (n < 1) throw std::invalid_argument("experiment: n must be >= 1");
  if (spec.d != d) throw std::invalid_argument("experiment: distribution dimension differs from d");
  if (trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
  if (!(tol > 0)) throw std::invalid_argument("experiment: tol must be positive");
  switch (target) {
    case TargetKind::containment:
      if (query_point && query_point->size() != d) {
        throw std::invalid_argument("experiment: query point has the wrong dimension");
      }
      break;
    case TargetKind::face_density:
      if (param < 0 || param > d - 1) throw std::invalid_argument("experiment: face dimension l must be in [0, d-1]");
      if (param + 1 > n) throw std::invalid_argument("experiment: need n >= l+1");
      break;
    case TargetKind::neighborliness:
    case TargetKind::nonface_count: {
      if (param < 1 || param > n) throw std::invalid_argument("experiment: k must be in [1, n]");
      const std::uint64_t required = target == TargetKind::neighborliness
                                         ? neighborliness_subset_count(n, param)
                                         : binomial_u64(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(param));
      if (required > subset_cap) throw SubsetBudgetExceeded(required, subset_cap);
      break;
    }
  }
}

Estimate wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw std::invalid_argument("wilson_interval: no trials");
  if (successes > trials) throw std::invalid_argument("wilson_interval: successes > trials");
  const double nt = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nt;
  const double z2 = z * z;
  const double denom = 1 + z2 / nt;
  const double centre = (p + z2 / (2 * nt)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / nt + z2 / (4 * nt * nt)) / denom;
  Estimate e;
  e.mean = p;
  e.trials = trials;
  e.successes = successes;
  e.ci_low = std::clamp(centre - half, 0.0, 1.0);
  e.ci_high = std::clamp(centre + half, 0.0, 1.0);
  // Guard against rounding at p = 0 or 1.
  e.ci_low = std::min(e.ci_low, p);
  e.ci_high = std::max(e.ci_high, p);
  return e;
}

Estimate estimate_containment(const ExperimentConfig& config, unsigned workers) {
  require_target(config, TargetKind::containment);
  config.validate();
  const Vector<double> p = config.query_point.value_or(Vector<double>::Zero(config.d));
  RationalVector exact_point(p.size());
  for (Index i = 0; i < p.size(); ++i) exact_point(i) = Rational(p(i));
  const auto totals = run_trials(config.trials, workers, [&](std::uint64_t t) {
    return with_redraws(config, t, [&](const FloatCloud& cloud, Philox4x32&) -> std::optional<double> {
      Containment v = contains_point(cloud, p, config.tol);
      if (v == Containment::boundary_or_degenerate) v = contains_point(to_exact(cloud), exact_point);
      switch (v) {
        case Containment::inside:
          return 1.0;
        case Containment::outside:
          return 0.0;
        case Containment::boundary_or_degenerate:
          return std::nullopt;
      }
      return std::nullopt;
    });
  });
  return finish(config, totals);
}

Estimate estimate_face_density(const ExperimentConfig& config, unsigned workers) {
  require_target(config, TargetKind::face_density);
  config.validate();
  const Index size = config.param + 1;
  const auto totals = run_trials(config.trials, workers, [&](std::uint64_t t) {
    return with_redraws(config, t, [&](const FloatCloud& cloud, Philox4x32& engine) -> std::optional<double> {
      std::vector<Index> subset(static_cast<std::size_t>(config.n));
      for (Index i = 0; i < config.n; ++i) subset[static_cast<std::size_t>(i)] = i;
      if (config.random_subset) {
        // Partial Fisher-Yates: the first `size` entries become a uniform subset.
        for (Index i = 0; i < size; ++i) {
          std::uniform_int_distribution<Index> pick(i, config.n - 1);
          std::swap(subset[static_cast<std::size_t>(i)], subset[static_cast<std::size_t>(pick(engine))]);
        }
      }
      subset.resize(static_cast<std::size_t>(size));
      std::sort(subset.begin(), subset.end());
      const auto r = is_face(cloud, std::span<const Index>(subset), config.tol);
      if (r.degenerate) return is_face(to_exact(cloud), std::span<const Index>(subset)).is_face ? 1.0 : 0.0;
      return r.is_face ? 1.0 : 0.0;
    });
  });
  return finish(config, totals);
}

Estimate estimate_neighborliness(const ExperimentConfig& config, unsigned workers) {
  require_target(config, TargetKind::neighborliness);
  config.validate();
  const auto totals = run_trials(config.trials, workers, [&](std::uint64_t t) {
    return with_redraws(config, t, [&](const FloatCloud& cloud, Philox4x32&) -> std::optional<double> {
      auto r = is_k_neighborly(cloud, config.param, config.subset_cap, NeighborlyStrategy::vertices_then_k,
                               config.tol);
      if (r.degenerate) {
        r = is_k_neighborly(to_exact(cloud), config.param, config.subset_cap, NeighborlyStrategy::vertices_then_k);
      }
      if (r.degenerate) return std::nullopt;
      return r.neighborly ? 1.0 : 0.0;
    });
  });
  return finish(config, totals);
}

CountEstimate estimate_nonface_count(const ExperimentConfig& config, unsigned workers) {
  require_target(config, TargetKind::nonface_count);
  config.validate();
  const Index k = config.param;
  const auto totals = run_trials(config.trials, workers, [&](std::uint64_t t) {
    return with_redraws(config, t, [&](const FloatCloud& cloud, Philox4x32&) -> std::optional<double> {
      double nonfaces = 0;
      std::optional<ExactCloud> exact;
      for_each_combination(config.n, k, [&](const std::vector<Index>& subset) {
        const auto r = is_face(cloud, std::span<const Index>(subset), config.tol);
        bool face = r.is_face;
        if (r.degenerate) {
          if (!exact) exact = to_exact(cloud);
          face = is_face(*exact, std::span<const Index>(subset)).is_face;
        }
        if (!face) nonfaces += 1;
        return true;
      });
      return nonfaces;
    });
  });
  CountEstimate e;
  const double nt = static_cast<double>(config.trials);
  e.mean = totals.sum / nt;
  const double var = config.trials > 1 ? std::max(0.0, (totals.sum_sq - nt * e.mean * e.mean) / (nt - 1)) : 0.0;
  const double half = kZ99 * std::sqrt(var / nt);
  e.ci_low = std::max(0.0, e.mean - half);
  e.ci_high = e.mean + half;
  e.trials = config.trials;
  e.discarded_degenerate = totals.discarded;
  e.seed = config.seed;
  e.subsets_per_cloud = binomial_u64(static_cast<std::uint64_t>(config.n), static_cast<std::uint64_t>(k));
  return e;
}

Estimate run_experiment(const ExperimentConfig& config, unsigned workers) {
  switch (config.target) {
    case TargetKind::containment:
      return estimate_containment(config, workers);
    case TargetKind::face_density:
      return estimate_face_density(config, workers);
    case TargetKind::neighborliness:
      return estimate_neighborliness(config, workers);
    case TargetKind::nonface_count: {
      const CountEstimate c = estimate_nonface_count(config, workers);
      Estimate e;
      e.mean = c.mean;
      e.ci_low = c.ci_low;
      e.ci_high = c.ci_high;
      e.trials = c.trials;
      e.discarded_degenerate = c.discarded_degenerate;
      e.seed = c.seed;
      return e;
    }
  }
  throw std::logic_error("run_experiment: unknown target");
}

std::size_t run_experiment_suite(const std::vector<ExperimentConfig>& configs, unsigned workers, std::ostream& out) {
  out << kSuiteHeader << '\n';
  std::size_t failed = 0;
  for (const auto& c : configs) {
    out << csv_escape(c.spec.name()) << ',' << c.d << ',' << c.n << ',' << to_string(c.target) << ',' << c.param
        << ',' << c.trials << ',' << c.seed << ',';
    try {
      const Estimate e = run_experiment(c, workers);
      const auto [bound, kind] = matching_bound(c);
      out << fmt(e.mean) << ',' << fmt(e.ci_low) << ',' << fmt(e.ci_high) << ',' << e.discarded_degenerate << ','
          << (bound ? fmt(*bound) : "") << ',' << kind << ',' << csv_escape(e.warning) << '\n';
    } catch (const std::exception& ex) {
      out << ",,,,,," << csv_escape(ex.what()) << '\n';
      ++failed;
    }
  }
  return failed;
}

std::vector<ExperimentConfig> read_experiment_configs_csv(std::istream& in) {
  std::vector<ExperimentConfig> configs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    auto f = split_csv_line(line);
    if (line_no == 1 && !f.empty() && f[0] == "spec") continue;
    if (f.size() != 7) {
      throw std::invalid_argument("experiment csv line " + std::to_string(line_no) +
                                  ": expected spec,d,n,target,param,trials,seed");
    }
    try {
      ExperimentConfig c;
      c.d = std::stol(f[1]);
      c.n = std::stol(f[2]);
      c.spec = DistributionSpec::parse(f[0], c.d);
      c.target = parse_target(f[3]);
      c.param = f[4].empty() ? 0 : std::stol(f[4]);
      c.trials = std::stoull(f[5]);
      c.seed = std::stoull(f[6]);
      configs.push_back(std::move(c));
    } catch (const std::invalid_argument& ex) {
      throw std::invalid_argument("experiment csv line " + std::to_string(line_no) + ": " + ex.what());
    }
  }
  return configs;
}

}  // namespace neighborly
