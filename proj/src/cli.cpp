#include "neighborly/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "neighborly/bounds.hpp"
#include "neighborly/combinatorics.hpp"
#include "neighborly/convex_oracle.hpp"
#include "neighborly/errors.hpp"
#include "neighborly/experiments.hpp"
#include "neighborly/point_cloud.hpp"
#include "neighborly/sampling.hpp"
#include "neighborly/thresholds.hpp"
#include "neighborly/verification.hpp"

namespace neighborly {
namespace {

/// Not a usage problem in the CLI11 sense, but the flags were inconsistent.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

std::vector<Index> parse_index_list(const std::string& text) {
  std::vector<Index> out;
  for (const auto& s : split(text, ',')) {
    if (s.empty()) continue;
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw UsageError("bad index '" + s + "'");
    out.push_back(v);
  }
  return out;
}

/// Writes to --out when given, else to the dispatcher's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void print_config(std::ostream& err, const CLI::App& sub) {
  std::istringstream lines(sub.config_to_str(true, false));
  std::string line;
  err << "# command=" << sub.get_name() << '\n';
  while (std::getline(lines, line)) {
    if (!line.empty() && line[0] != '[') err << "# " << line << '\n';
  }
}

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random polytope neighborliness toolkit: exact bounds, threshold curves, hull oracles, Monte Carlo"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  // Shared parameter storage; each subcommand binds the subset it uses.
  long n = 0, d = 0;
  std::optional<long> k, l, N;
  std::string a_text, formula, method = "closed_form", batch, out_path, plot_path;
  double alpha_min = 1.05, alpha_max = 1.95, tol = kDefaultTolerance, threshold_tol = 1e-12;
  std::optional<double> alpha, beta;
  std::size_t steps = 90;
  bool delta = false;
  std::string cloud_path, query, subset, spec = "gaussian", target = "containment", point;
  std::uint64_t trials = 1000, seed = 1, subset_cap = kDefaultSubsetCap;
  unsigned workers = 1;
  bool random_subset = false, check = false, quick = false;

  auto* bounds = app.add_subcommand("bounds", "Evaluate a closed-form bound exactly");
  bounds->add_option("--formula", formula, "wendel|flat|face_nonface|neighborly_failure|depth_lower|cyclic|limit_ratio|entropy");
  bounds->add_option("--n", n, "Sample size");
  bounds->add_option("--d", d, "Dimension");
  bounds->add_option("--k", k, "Subset size");
  bounds->add_option("--l", l, "Flat dimension");
  bounds->add_option("--a", a_text, "Depth (rational, p/q or decimal)");
  bounds->add_option("--N", N, "Total points (cyclic, limit_ratio)");
  bounds->add_option("--method", method, "Depth bound route: closed_form|quadrature|exact_integral")->capture_default_str();
  bounds->add_option("--batch", batch, "CSV of queries: formula_id,n,d,k,l,a_num,a_den,N");
  bounds->add_option("--out", out_path, "Output file");

  auto* thresholds = app.add_subcommand("thresholds", "Threshold curves rho_N'(alpha) and rho_D'(alpha)");
  thresholds->add_option("--alpha", alpha, "Single alpha (prints one row)");
  thresholds->add_option("--beta", beta, "With --alpha: print the exponent c(alpha, beta)");
  thresholds->add_option("--alpha-min", alpha_min, "Grid start")->capture_default_str();
  thresholds->add_option("--alpha-max", alpha_max, "Grid end")->capture_default_str();
  thresholds->add_option("--steps", steps, "Grid points")->capture_default_str();
  thresholds->add_option("--tol", threshold_tol, "Residual tolerance")->capture_default_str();
  thresholds->add_flag("--delta", delta, "Add delta = 1/alpha columns (and plot against delta)");
  thresholds->add_option("--plot", plot_path, "Write an SVG plot");
  thresholds->add_option("--out", out_path, "Output file");

  auto* oracle = app.add_subcommand("oracle", "Containment, face and neighborliness queries on a point cloud");
  oracle->add_option("--cloud", cloud_path, "Cloud CSV (header d=,n=,exact=)")->required();
  oracle->add_option("--query", query, "Containment query point, comma separated");
  oracle->add_option("--subset", subset, "Face query: comma-separated point indices");
  oracle->add_option("--k", k, "Neighborliness query");
  oracle->add_option("--tol", tol, "Float tolerance")->capture_default_str();
  oracle->add_option("--out", out_path, "Output file");

  auto* gale = app.add_subcommand("gale", "Gale transform of an exact cloud");
  gale->add_option("--cloud", cloud_path, "Exact cloud CSV; a random cloud is drawn when absent");
  gale->add_option("--d", d, "Random cloud dimension");
  gale->add_option("--N", N, "Random cloud size");
  gale->add_option("--seed", seed, "Random cloud seed")->capture_default_str();
  gale->add_flag("--check", check, "Centre the cloud and check the subset/face correspondence");
  gale->add_option("--out", out_path, "Output file");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates with 99% Wilson intervals");
  simulate->add_option("--spec", spec, "gaussian|ball:<r>|mixture|cube")->capture_default_str();
  simulate->add_option("--d", d, "Dimension");
  simulate->add_option("--n", n, "Points per cloud");
  simulate->add_option("--target", target, "containment|face_density|neighborliness|nonface_count")
      ->capture_default_str();
  simulate->add_option("--l", l, "Face dimension (face_density)");
  simulate->add_option("--k", k, "Subset size (neighborliness, nonface_count)");
  simulate->add_option("--trials", trials, "Trials")->capture_default_str();
  simulate->add_option("--seed", seed, "Seed")->capture_default_str();
  simulate->add_option("--workers", workers, "Worker threads")->capture_default_str();
  simulate->add_option("--tol", tol, "Float oracle tolerance")->capture_default_str();
  simulate->add_option("--point", point, "Containment query point (default origin)");
  simulate->add_flag("--random-subset", random_subset, "Face density: test a random (l+1)-subset");
  simulate->add_option("--subset-cap", subset_cap, "Neighborliness subset budget")->capture_default_str();
  simulate->add_option("--batch", batch, "CSV of configs: spec,d,n,target,param,trials,seed");
  simulate->add_option("--out", out_path, "Output file");

  auto* verify = app.add_subcommand("verify", "Run every invariant group and report pass/fail");
  verify->add_flag("--quick", quick, "Smaller sample sizes");
  verify->add_option("--seed", seed, "Seed")->capture_default_str();
  verify->add_option("--workers", workers, "Worker threads for Monte Carlo groups")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (bounds->parsed()) {
      print_config(err, *bounds);
      const DepthMethod m = parse_depth_method(method);
      Sink sink(out_path, out);
      if (!batch.empty()) {
        std::ifstream in(batch);
        if (!in) throw UsageError("cannot open batch file '" + batch + "'");
        std::vector<FormulaId> formulas;
        const auto queries = read_bound_queries_csv(in, formulas);
        *sink << "formula_id,n,d,k,l,a,N,exact,decimal,unverified_parity,error\n";
        int status = kExitOk;
        for (std::size_t i = 0; i < queries.size(); ++i) {
          const auto& q = queries[i];
          auto opt = [](const std::optional<long>& v) { return v ? std::to_string(*v) : std::string(); };
          *sink << formula_name(formulas[i]) << ',' << q.n << ',' << q.d << ',' << opt(q.k) << ',' << opt(q.l) << ','
                << (q.a ? to_string(*q.a) : "") << ',' << opt(q.N) << ',';
          try {
            const BoundValue v = evaluate(formulas[i], q, m);
            *sink << (v.exact ? to_string(*v.exact) : "") << ',' << format_decimal(v.value) << ','
                  << (v.unverified_parity ? 1 : 0) << ",\n";
          } catch (const std::exception& ex) {
            *sink << ",,," << ex.what() << '\n';
            status = kExitComputation;
          }
        }
        return status;
      }
      if (formula.empty()) throw UsageError("bounds needs --formula or --batch");
      BoundQuery q;
      q.n = n;
      q.d = d;
      q.k = k;
      q.l = l;
      q.N = N;
      if (!a_text.empty()) q.a = parse_rational(a_text);
      const BoundValue v = evaluate(parse_formula_id(formula), q, m);
      *sink << format_bound(v) << '\n';
      return kExitOk;
    }

    if (thresholds->parsed()) {
      print_config(err, *thresholds);
      Sink sink(out_path, out);
      if (alpha) {
        if (beta) {
          *sink << "alpha,beta,c\n" << fmt12(*alpha) << ',' << fmt12(*beta) << ','
                << fmt12(neighborliness_exponent(*alpha, *beta)) << '\n';
          return kExitOk;
        }
        CurveRow row{rho_N_prime(*alpha, threshold_tol), rho_D_prime(*alpha)};
        write_curve_csv(*sink, {row}, delta);
        return kExitOk;
      }
      const auto rows = threshold_curve(alpha_min, alpha_max, steps);
      for (const auto& r : rows) {
        if (std::abs(r.neighborly.residual) > threshold_tol) {
          throw std::runtime_error("residual above --tol at alpha=" + fmt12(r.neighborly.alpha));
        }
      }
      write_curve_csv(*sink, rows, delta);
      if (!plot_path.empty()) {
        std::ofstream svg(plot_path);
        if (!svg) throw std::runtime_error("cannot open plot file '" + plot_path + "'");
        svg << curve_svg(rows, delta);
      }
      return kExitOk;
    }

    if (oracle->parsed()) {
      print_config(err, *oracle);
      if (query.empty() && subset.empty() && !k) throw UsageError("oracle needs --query, --subset or --k");
      const AnyCloud any = read_cloud_csv_file(cloud_path);
      Sink sink(out_path, out);
      std::visit(
          [&](const auto& cloud) {
            using Cloud = std::decay_t<decltype(cloud)>;
            using Scalar = std::decay_t<decltype(cloud.points(0, 0))>;
            *sink << "# cloud n=" << cloud.size() << " d=" << cloud.dimension()
                  << " path=" << (Cloud::exact ? "exact" : "float") << '\n';
            if (!query.empty()) {
              const auto parts = split(query, ',');
              if (static_cast<Index>(parts.size()) != cloud.dimension()) {
                throw UsageError("--query has " + std::to_string(parts.size()) + " coordinates, cloud has d=" +
                                 std::to_string(cloud.dimension()));
              }
              Vector<Scalar> p(cloud.dimension());
              for (Index i = 0; i < p.size(); ++i) {
                if constexpr (Cloud::exact) {
                  p(i) = parse_rational(parts[static_cast<std::size_t>(i)]);
                } else {
                  p(i) = to_double(parse_rational(parts[static_cast<std::size_t>(i)]));
                }
              }
              *sink << "containment: " << to_string(contains_point(cloud, p, tol)) << '\n';
            }
            if (!subset.empty()) {
              const auto idx = parse_index_list(subset);
              const auto r = is_face(cloud, std::span<const Index>(idx), tol);
              *sink << "face: " << (r.degenerate ? "degenerate" : (r.is_face ? "yes" : "no")) << '\n';
              if constexpr (Cloud::exact) {
                if (r.witness) {
                  *sink << "witness point:";
                  for (Index i = 0; i < r.witness->point.size(); ++i) *sink << ' ' << to_string(r.witness->point(i));
                  *sink << "\nwitness convex weights:";
                  for (Index i = 0; i < r.witness->convex_weights.size(); ++i) {
                    *sink << ' ' << to_string(r.witness->convex_weights(i));
                  }
                  *sink << "\nwitness verified: " << (verify_witness(cloud, *r.witness) ? "yes" : "no") << '\n';
                }
              }
            }
            if (k) {
              const auto r = is_k_neighborly(cloud, *k, kDefaultSubsetCap, NeighborlyStrategy::vertices_then_k, tol);
              *sink << "neighborly(k=" << *k << "): "
                    << (r.degenerate ? "degenerate" : (r.neighborly ? "yes" : "no")) << " after "
                    << r.subsets_tested << " subsets";
              if (!r.failing_subset.empty()) {
                *sink << "; failing subset";
                for (auto i : r.failing_subset) *sink << ' ' << i;
              }
              *sink << '\n';
            }
          },
          any);
      return kExitOk;
    }

    if (gale->parsed()) {
      print_config(err, *gale);
      ExactCloud cloud;
      if (!cloud_path.empty()) {
        const AnyCloud any = read_cloud_csv_file(cloud_path);
        if (!std::holds_alternative<ExactCloud>(any)) throw UsageError("gale needs an exact cloud (exact=1)");
        cloud = std::get<ExactCloud>(any);
      } else {
        if (d < 1 || !N) throw UsageError("gale needs --cloud, or --d and --N for a random cloud");
        Philox4x32 engine(seed, 0);
        cloud = random_rational_cloud(engine, *N, d);
      }
      if (check) cloud = centered(cloud);
      const ExactCloud dual = gale_transform(cloud);
      Sink sink(out_path, out);
      write_cloud_csv(*sink, dual);
      if (check) {
        const Index total = cloud.size();
        const auto dual_facets = facets_bruteforce(dual);
        std::size_t checked = 0, violations = 0;
        for (Index size = 1; size < total; ++size) {
          for_each_combination(total, size, [&](const std::vector<Index>& s) {
            ExactCloud sub;
            sub.points.resize(static_cast<Index>(s.size()), cloud.dimension());
            for (std::size_t i = 0; i < s.size(); ++i) sub.points.row(static_cast<Index>(i)) = cloud.points.row(s[i]);
            const bool inside = contains_point(sub, RationalVector(RationalVector::Zero(cloud.dimension()))) ==
                                Containment::inside;
            const auto rest = complement_of(s, total);
            const bool face = is_face_bruteforce(dual_facets, total, std::span<const Index>(rest));
            ++checked;
            violations += inside != face;
            return true;
          });
        }
        err << "# correspondence: " << checked << " subsets, " << violations << " violations\n";
        if (violations) return kExitComputation;
      }
      return kExitOk;
    }

    if (simulate->parsed()) {
      print_config(err, *simulate);
      std::vector<ExperimentConfig> configs;
      if (!batch.empty()) {
        std::ifstream in(batch);
        if (!in) throw UsageError("cannot open batch file '" + batch + "'");
        configs = read_experiment_configs_csv(in);
      } else {
        ExperimentConfig c;
        c.d = d;
        c.n = n;
        c.spec = DistributionSpec::parse(spec, d);
        c.target = parse_target(target);
        if (c.target == TargetKind::face_density) {
          if (!l) throw UsageError("face_density needs --l");
          c.param = *l;
        } else if (c.target != TargetKind::containment) {
          if (!k) throw UsageError(std::string(to_string(c.target)) + " needs --k");
          c.param = *k;
        }
        c.trials = trials;
        c.seed = seed;
        c.tol = tol;
        c.random_subset = random_subset;
        c.subset_cap = subset_cap;
        if (!point.empty()) {
          const auto parts = split(point, ',');
          Vector<double> p(static_cast<Index>(parts.size()));
          for (std::size_t i = 0; i < parts.size(); ++i) p(static_cast<Index>(i)) = to_double(parse_rational(parts[i]));
          c.query_point = p;
        }
        c.validate();
        configs.push_back(std::move(c));
      }
      Sink sink(out_path, out);
      const std::size_t failed = run_experiment_suite(configs, workers, *sink);
      // A lone config that failed is a computation error; batch suites report per row.
      return batch.empty() && failed > 0 ? kExitComputation : kExitOk;
    }

    if (verify->parsed()) {
      print_config(err, *verify);
      VerifyOptions o;
      o.quick = quick;
      o.seed = seed;
      o.workers = workers;
      std::size_t failed = 0, total = 0;
      run_verify(o, [&](const CheckResult& r) {
        ++total;
        failed += !r.passed;
        out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << std::endl;
      });
      out << (failed == 0 ? "verify: all " + std::to_string(total) + " groups passed"
                          : "verify: " + std::to_string(failed) + " of " + std::to_string(total) + " groups failed")
          << '\n';
      return failed == 0 ? kExitOk : kExitComputation;
    }
  } catch (const SubsetBudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitComputation;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitComputation;
  }
  return kExitUsage;
}

}  // namespace neighborly
