#include "errw/cli/modes.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "errw/cli/output.hpp"
#include "errw/path_recursion.hpp"
#include "errw/segment_exact.hpp"
#include "errw/segment_sim.hpp"
#include "errw/sequence_classifier.hpp"
#include "errw/stats.hpp"
#include "errw/z_simulator.hpp"

namespace errw::cli {

using nlohmann::json;
using errw::to_string;

namespace {

struct SampleSummary {
  double mean = 0;
  double variance = 0;
  std::optional<BetaParameters> fit;
};

SampleSummary summarize(double m, double v) {
  SampleSummary s{m, v, std::nullopt};
  try {
    s.fit = beta_fit_mom(m, v);
  } catch (const std::invalid_argument&) {
  }
  return s;
}

SampleSummary summarize(const std::vector<double>& sample) {
  return summarize(mean(sample), population_variance(sample));
}

SampleSummary summarize(const WeightedAtoms& atoms) {
  double total = 0, m = 0, m2 = 0;
  for (const auto& [x, w] : atoms) {
    total += w;
    m += w * x;
    m2 += w * x * x;
  }
  m /= total;
  return summarize(m, std::max(0.0, m2 / total - m * m));
}

std::string fit_field(const std::optional<BetaParameters>& fit, bool alpha) {
  if (!fit) return "n/a";
  return format_double(alpha ? fit->alpha : fit->beta);
}

// Mass of Beta(p) in each of the 49 histogram bins, scaled to a density.
std::vector<double> beta_bin_density(const BetaParameters& p) {
  std::vector<double> out(49);
  for (int k = 0; k < 49; ++k) out[k] = (beta_cdf(p, (k + 1) / 49.0) - beta_cdf(p, k / 49.0)) * 49.0;
  return out;
}

std::uint64_t quantile(std::vector<std::uint64_t> xs, double q) {
  if (xs.empty()) return 0;
  std::sort(xs.begin(), xs.end());
  return xs[static_cast<std::size_t>(q * static_cast<double>(xs.size() - 1))];
}

struct SegmentReplica {
  double fraction = 0;
  double left = 0;
  double right = 0;
};

std::vector<SegmentReplica> run_segment_replicas(Scheduler scheduler, std::size_t walkers, std::uint64_t steps,
                                                 std::uint64_t replicas, std::uint64_t base_seed,
                                                 std::uint64_t index_offset, unsigned threads,
                                                 const Reinforcement& reinforcement) {
  return run_replicas(replicas, threads, [&](std::uint64_t r) {
    WalkerSystem sys(segment_config(scheduler, walkers, replica_seed(base_seed, r + index_offset), reinforcement));
    for (std::uint64_t t = 0; t < steps; ++t) sys.step();
    const auto& w = sys.weights();
    return SegmentReplica{left_edge_fraction_double(w), w.weight(EdgeIndex{-1}), w.weight(EdgeIndex{0})};
  });
}

std::vector<double> fractions_of(const std::vector<SegmentReplica>& rows) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.fraction);
  return out;
}

void write_histogram(std::ostream& out, const std::vector<HistogramBin>& bins) {
  out << "bin_center,density\n";
  for (const auto& b : bins) out << format_double(b.center) << ',' << format_double(b.density) << '\n';
}

void write_summary_rows(std::ostream& out, const SampleSummary& s) {
  out << "mean," << format_double(s.mean) << '\n';
  out << "variance," << format_double(s.variance) << '\n';
  out << "beta_alpha," << fit_field(s.fit, true) << '\n';
  out << "beta_beta," << fit_field(s.fit, false) << '\n';
}

int run_simulate_segment(const ExperimentConfig& c, OutputSet& files, std::ostream& log) {
  const auto rows = run_segment_replicas(c.scheduler, c.walkers, c.steps, c.replicas, c.seed, 0, c.threads,
                                         c.reinforcement);
  auto& f = files.open("fractions.csv");
  f << "replica,seed,left_fraction,left_weight,right_weight\n";
  for (std::uint64_t r = 0; r < rows.size(); ++r) {
    f << r << ',' << replica_seed(c.seed, r) << ',' << format_double(rows[r].fraction) << ','
      << format_double(rows[r].left) << ',' << format_double(rows[r].right) << '\n';
  }
  const auto sample = fractions_of(rows);
  write_histogram(files.open("histogram.csv"), histogram_49(sample));
  const auto s = summarize(sample);
  auto& sum = files.open("summary.csv");
  sum << "statistic,value\n";
  sum << "replicas," << c.replicas << "\nsteps," << c.steps << '\n';
  write_summary_rows(sum, s);
  sum << "ks_arcsine," << format_double(ks_distance(sample, arcsine_cdf)) << '\n';
  sum << "ks_beta_fit,"
      << (s.fit ? format_double(ks_distance(sample, [&](double x) { return beta_cdf(*s.fit, x); })) : "n/a") << '\n';
  log << "simulate-segment: " << c.replicas << " replicas, mean " << format_double(s.mean) << '\n';
  return kExitOk;
}

int run_exact_segment(const ExperimentConfig& c, OutputSet& files, std::ostream& log) {
  const bool alt = c.process == "alternating";
  WeightedAtoms atoms;
  auto& dist_out = files.open("distribution.csv", {{"process", c.process}, {"cycles", std::to_string(c.cycles)}});
  std::string mean_text;
  if (c.precision == "exact") {
    const auto dist = alt ? exact_alt_distribution(c.cycles) : exact_single_distribution(c.cycles);
    dist.write_csv(dist_out);
    for (const auto& a : dist.atoms()) atoms.emplace_back(a.value.get_d(), a.mass.get_d());
    mean_text = to_string(dist.mean());
  } else {
    const auto masses = alt ? alt_distribution_double(c.cycles) : single_distribution_double(c.cycles);
    const double den = alt ? 4.0 * static_cast<double>(c.cycles) + 2 : 2.0 * static_cast<double>(c.cycles) + 2;
    dist_out << "value,mass\n";
    for (std::size_t j = 0; j < masses.size(); ++j) {
      const double v = (1.0 + 2.0 * static_cast<double>(j)) / den;
      dist_out << format_double(v) << ',' << format_double(masses[j]) << '\n';
      atoms.emplace_back(v, masses[j]);
    }
  }
  write_histogram(files.open("histogram.csv"), histogram_49(atoms));
  const auto s = summarize(atoms);
  auto& sum = files.open("summary.csv");
  sum << "statistic,value\n";
  sum << "atoms," << atoms.size() << '\n';
  if (!mean_text.empty()) sum << "exact_mean," << mean_text << '\n';
  write_summary_rows(sum, s);
  sum << "ks_arcsine," << format_double(ks_distance(atoms, arcsine_cdf)) << '\n';
  log << "exact-segment: " << atoms.size() << " atoms\n";
  return kExitOk;
}

std::optional<SequenceSpec> sequence_of(const Reinforcement& r) {
  if (r.kind() == ReinforcementKind::Linear) return SequenceSpec::constant(Rational(1));
  if (r.kind() == ReinforcementKind::Sequence) return r.sequence_spec();
  return std::nullopt;
}

struct SeriesReport {
  std::string verdict = "n/a";
  std::string trapping = "n/a";
};

SeriesReport series_report(const Reinforcement& r, std::size_t walkers, std::uint64_t k_max) {
  SeriesReport out;
  const auto spec = sequence_of(r);
  if (!spec) return out;
  const auto hint = growth_hint_for(*spec);
  const auto cls = classify(*spec, k_max, hint);
  out.verdict = to_string(cls.verdict);
  if (cls.verdict == SeriesClass::Converges) out.trapping = format_double(trapping_bound(walkers, *spec, k_max, hint).bound);
  return out;
}

json replica_json(std::uint64_t r, std::uint64_t seed, const ZResult& z, const ReplicaVerdict& v) {
  const auto& s = z.summary;
  json ranges = json::array(), returns = json::array(), second = json::array();
  for (const auto& w : s.walkers) {
    ranges.push_back({w.min, w.max});
    returns.push_back(w.returns_to_zero);
    second.push_back(w.returns_second_half);
  }
  json j = {{"replica", r},
            {"seed", seed},
            {"verdict", to_string(v.verdict)},
            {"all_trapped", v.all_trapped},
            {"anomaly", v.anomaly},
            {"stalled_without_zero", v.stalled_without_zero},
            {"final_positions", s.final_positions},
            {"ranges", ranges},
            {"returns_to_zero", returns},
            {"returns_second_half", second},
            {"fresh_visits", s.total_fresh()},
            {"last_fresh_time", s.last_fresh_time},
            {"single_edge_since", s.single_edge_since},
            {"meetings_at_zero", s.meeting_times.size()}};
  if (z.diagnostic) {
    const auto& d = *z.diagnostic;
    j["diagnostic"] = {{"walker", d.walker}, {"F", d.F_value},         {"M", d.M_value},
                       {"H", d.H_value},     {"tau_hit", d.tau_hit},   {"b_events", d.b_events},
                       {"ordered", z.diagnostic_ordered}};
  }
  return j;
}

int run_simulate_z(const ExperimentConfig& c, OutputSet& files, std::ostream& log) {
  ZConfig base;
  base.walkers = c.walkers;
  base.initial_positions = c.initial_positions;
  base.reinforcement = c.reinforcement;
  base.default_weight = c.default_weight;
  base.weight_overrides = c.weight_overrides;
  base.steps = c.steps;
  base.diagnose_walker = c.diagnose_walker;
  RecurrenceThresholds thresholds{c.stall_window, c.r_min};
  const auto series = series_report(c.reinforcement, c.walkers, c.k_max);

  struct Row {
    ZResult z;
    ReplicaVerdict v;
  };
  auto rows = run_replicas(c.replicas, c.threads, [&](std::uint64_t r) {
    ZConfig zc = base;
    zc.seed = replica_seed(c.seed, r);
    Row row{run_z(zc), {}};
    row.v = classify_replica(row.z.summary, thresholds);
    row.z.summary.final_counts.clear();
    return row;
  });

  auto& jl = files.open("replicas.jsonl", {{"trapping_bound", series.trapping}});
  std::uint64_t counts[3] = {0, 0, 0};
  std::uint64_t trapped = 0, anomalies = 0, unordered = 0;
  std::vector<std::uint64_t> spans, second;
  for (std::uint64_t r = 0; r < rows.size(); ++r) {
    const auto& [z, v] = rows[r];
    jl << replica_json(r, replica_seed(c.seed, r), z, v).dump() << '\n';
    ++counts[static_cast<int>(v.verdict)];
    trapped += v.all_trapped;
    anomalies += v.anomaly;
    unordered += z.diagnostic && !z.diagnostic_ordered;
    for (const auto& w : z.summary.walkers) {
      spans.push_back(static_cast<std::uint64_t>(w.span()));
      second.push_back(w.returns_second_half);
    }
  }
  const double n = static_cast<double>(c.replicas);
  const double p_trap = static_cast<double>(trapped) / n;
  auto& agg = files.open("verdicts.csv", {{"trapping_bound", series.trapping}, {"series", series.verdict}});
  agg << "metric,value\n";
  agg << "replicas," << c.replicas << '\n';
  agg << "steps," << c.steps << '\n';
  agg << "recurrent_evidence," << counts[static_cast<int>(Verdict::RecurrentEvidence)] << '\n';
  agg << "finite_range_evidence," << counts[static_cast<int>(Verdict::FiniteRangeEvidence)] << '\n';
  agg << "undecided," << counts[static_cast<int>(Verdict::Undecided)] << '\n';
  agg << "all_trapped," << trapped << '\n';
  agg << "all_trapped_fraction," << format_double(p_trap) << '\n';
  agg << "all_trapped_se," << format_double(std::sqrt(p_trap * (1 - p_trap) / n)) << '\n';
  agg << "anomalies," << anomalies << '\n';
  agg << "span_q10," << quantile(spans, 0.1) << "\nspan_q50," << quantile(spans, 0.5) << "\nspan_q90,"
      << quantile(spans, 0.9) << '\n';
  agg << "returns_second_half_min," << quantile(second, 0.0) << "\nreturns_second_half_q50," << quantile(second, 0.5)
      << '\n';
  if (c.diagnose_walker) agg << "diagnostic_unordered," << unordered << '\n';
  log << "simulate-z: " << counts[0] << " recurrent, " << counts[1] << " finite range, " << counts[2]
      << " undecided; trapping bound " << series.trapping << '\n';
  return kExitOk;
}

int run_classify(const ExperimentConfig& c, OutputSet& files, std::ostream& log) {
  const auto spec = *sequence_of(c.reinforcement);
  write_phi_csv(files.open("phi.csv", {{"sequence", spec.label()}}), phi_partial_sums(spec, c.k_max));
  const auto hint = growth_hint_for(spec);
  const auto cls = classify(spec, c.k_max, hint);
  auto& out = files.open("classification.csv");
  out << "field,value\n";
  out << "sequence," << spec.label() << '\n';
  out << "k_max," << c.k_max << '\n';
  out << "verdict," << to_string(cls.verdict) << '\n';
  out << "partial," << format_double(cls.partial) << '\n';
  out << "tail_bound," << format_double(cls.tail_bound) << '\n';
  out << "reason," << cls.reason << '\n';
  if (cls.verdict == SeriesClass::Converges) {
    const auto tb = trapping_bound(c.walkers, spec, c.k_max, hint);
    out << "walkers," << c.walkers << '\n';
    out << "alpha_K," << format_double(tb.alpha_K) << '\n';
    out << "S_upper," << format_double(tb.S_upper) << '\n';
    out << "trapping_bound," << format_double(tb.bound) << '\n';
  }
  log << "classify: " << spec.label() << " -> " << to_string(cls.verdict) << '\n';
  return kExitOk;
}

int run_reproduce_figures(const ExperimentConfig& c, OutputSet& files, std::ostream& log) {
  struct Experiment {
    const char* name;
    Scheduler scheduler;
    std::size_t walkers;
  };
  const Experiment experiments[3] = {{"single", Scheduler::UniformRandom, 1},
                                     {"alternating", Scheduler::Alternating, 2},
                                     {"random", Scheduler::UniformRandom, 2}};
  std::vector<double> samples[3];
  for (std::uint64_t e = 0; e < 3; ++e) {
    samples[e] = fractions_of(run_segment_replicas(experiments[e].scheduler, experiments[e].walkers, c.steps,
                                                   c.replicas, c.seed, e * c.replicas, c.threads,
                                                   Reinforcement::linear()));
  }
  const auto masses = alt_distribution_double(c.precise_cycles);
  WeightedAtoms precise;
  const double den = 4.0 * static_cast<double>(c.precise_cycles) + 2;
  for (std::size_t j = 0; j < masses.size(); ++j) precise.emplace_back((1.0 + 2.0 * j) / den, masses[j]);

  SampleSummary fits[3];
  for (int e = 0; e < 3; ++e) fits[e] = summarize(samples[e]);
  const auto precise_fit = summarize(precise);
  const BetaParameters arcsine{0.5, 0.5};

  auto column = [](const std::optional<BetaParameters>& p) {
    return p ? beta_bin_density(*p) : std::vector<double>(49, std::nan(""));
  };
  const auto h_single = histogram_49(samples[0]);
  const auto ref_single = beta_bin_density(arcsine);
  auto& f1 = files.open("figure_single.csv", {{"steps", std::to_string(c.steps)}});
  f1 << "bin_center,density,reference_density\n";
  for (int k = 0; k < 49; ++k) {
    f1 << format_double(h_single[k].center) << ',' << format_double(h_single[k].density) << ','
       << format_double(ref_single[k]) << '\n';
  }
  const auto h_alt = histogram_49(samples[1]);
  const auto h_precise = histogram_49(precise);
  const auto fit_alt = column(precise_fit.fit);
  auto& f2 = files.open("figure_alternating.csv", {{"steps", std::to_string(c.steps)},
                                                   {"precise_steps", std::to_string(4 * c.precise_cycles)}});
  f2 << "bin_center,density,precise_density,fit_density\n";
  for (int k = 0; k < 49; ++k) {
    f2 << format_double(h_alt[k].center) << ',' << format_double(h_alt[k].density) << ','
       << format_double(h_precise[k].density) << ',' << format_double(fit_alt[k]) << '\n';
  }
  const auto h_rand = histogram_49(samples[2]);
  const auto fit_rand = column(fits[2].fit);
  auto& f3 = files.open("figure_random.csv", {{"steps", std::to_string(c.steps)}});
  f3 << "bin_center,density,fit_density\n";
  for (int k = 0; k < 49; ++k) {
    f3 << format_double(h_rand[k].center) << ',' << format_double(h_rand[k].density) << ','
       << format_double(fit_rand[k]) << '\n';
  }

  auto& ff = files.open("fits.csv");
  ff << "experiment,replicas,steps,mean,variance,alpha,beta,ks_to_fit\n";
  auto fit_row = [&](const char* name, std::uint64_t reps, std::uint64_t steps, const SampleSummary& s, double ks) {
    ff << name << ',' << reps << ',' << steps << ',' << format_double(s.mean) << ',' << format_double(s.variance)
       << ',' << fit_field(s.fit, true) << ',' << fit_field(s.fit, false) << ',' << format_double(ks) << '\n';
  };
  for (int e = 0; e < 3; ++e) {
    const auto& p = e == 0 ? std::optional<BetaParameters>(arcsine) : fits[e].fit;
    const double ks =
        p ? ks_distance(samples[e], [&](double x) { return beta_cdf(*p, x); }) : std::nan("");
    fit_row(experiments[e].name, c.replicas, c.steps, fits[e], ks);
  }
  fit_row("alternating_precise", 1, 4 * c.precise_cycles, precise_fit,
          precise_fit.fit ? ks_distance(precise, [&](double x) { return beta_cdf(*precise_fit.fit, x); })
                          : std::nan(""));

  // Empirical CDFs on the range where the two-walker laws sit below their fits.
  auto& cd = files.open("cdf_detail.csv");
  cd << "x,single,alternating,random,alternating_precise,arcsine,fit_alternating,fit_random\n";
  std::vector<double> sorted[3];
  for (int e = 0; e < 3; ++e) {
    sorted[e] = samples[e];
    std::sort(sorted[e].begin(), sorted[e].end());
  }
  auto ecdf = [](const std::vector<double>& s, double x) {
    return static_cast<double>(std::upper_bound(s.begin(), s.end(), x) - s.begin()) / static_cast<double>(s.size());
  };
  for (int i = 0; i <= 40; ++i) {
    const double x = 0.05 + 0.005 * i;
    double precise_cdf = 0;
    for (const auto& [v, w] : precise) precise_cdf += v <= x ? w : 0.0;
    cd << format_double(x) << ',' << format_double(ecdf(sorted[0], x)) << ',' << format_double(ecdf(sorted[1], x))
       << ',' << format_double(ecdf(sorted[2], x)) << ',' << format_double(precise_cdf) << ','
       << format_double(arcsine_cdf(x)) << ','
       << (precise_fit.fit ? format_double(beta_cdf(*precise_fit.fit, x)) : "n/a") << ','
       << (fits[2].fit ? format_double(beta_cdf(*fits[2].fit, x)) : "n/a") << '\n';
  }
  log << "reproduce-figures: " << c.replicas << " replicas per experiment\n";
  return kExitOk;
}

template <class Fn>
IdentityCheck check(const std::string& name, Fn fn) {
  IdentityCheck out;
  out.name = name;
  try {
    fn(out);
  } catch (const std::exception& e) {
    out.passed = false;
    out.detail = e.what();
  }
  return out;
}

void fail(IdentityCheck& c, const std::string& detail) {
  if (c.passed) c.detail = detail;
  c.passed = false;
}

}  // namespace

std::vector<IdentityCheck> run_identity_checks(const ExperimentConfig& c) {
  std::vector<IdentityCheck> out;
  out.push_back(check("kernel_martingale", [&](IdentityCheck& r) {
    for (std::uint64_t a = 1; a <= c.kernel_limit; ++a) {
      for (std::uint64_t b = 1; b <= c.kernel_limit; ++b) {
        Rational mass(0);
        for (const auto& br : four_step_kernel(a, b)) mass += br.probability;
        Rational target(static_cast<unsigned long>(a), static_cast<unsigned long>(a + b));
        target.canonicalize();
        if (mass != 1 || conditional_mean_after_cycle(a, b) != target) {
          fail(r, "a=" + std::to_string(a) + " b=" + std::to_string(b));
        }
        ++r.cases;
      }
    }
  }));
  out.push_back(check("second_moment_delta", [&](IdentityCheck& r) {
    Rational prev(0);
    bool have_prev = false;
    for (std::uint64_t s = 2; s + 2 <= c.delta_limit; ++s) {
      if ((s + 2) % 4 != 0) continue;
      for (std::uint64_t a = 1; a < s; ++a) {
        const auto d = second_moment_delta(a, s - a);
        if (d.n_sq_delta != second_moment_delta_closed_form(a, s - a)) {
          fail(r, "a=" + std::to_string(a) + " b=" + std::to_string(s - a));
        }
        ++r.cases;
      }
      if (s % 2 == 0) {
        const Rational diag = abs(second_moment_delta(s / 2, s / 2).n_sq_delta);
        if (have_prev && !(diag < prev)) fail(r, "|n^2 Delta| not decreasing at a=b=" + std::to_string(s / 2));
        prev = diag;
        have_prev = true;
      }
    }
  }));
  out.push_back(check("alternating_law", [&](IdentityCheck& r) {
    const auto laws = exact_alt_distributions_upto(c.alt_law_limit);
    for (std::uint64_t n = 0; n < laws.size(); ++n) {
      Rational half(1, 2);
      if (laws[n].mean() != half) fail(r, "mean at n=" + std::to_string(n));
      for (const auto& atom : laws[n].atoms()) {
        Rational scaled = atom.value * static_cast<unsigned long>(4 * n + 2);
        scaled.canonicalize();
        if (scaled.get_den() != 1 || scaled.get_num() % 2 != 1) fail(r, "support at n=" + std::to_string(n));
      }
      ++r.cases;
    }
  }));
  out.push_back(check("path_recursion_closed_form", [&](IdentityCheck& r) {
    for (std::uint64_t a : {1u, 2u, 3u, 5u}) {
      for (std::uint64_t b : {1u, 2u, 3u, 5u}) {
        const auto report = verify_closed_form(a, b, c.max_half_length, static_cast<unsigned>(c.enumerate_upto));
        r.cases += report.rows.size();
      }
    }
  }));
  out.push_back(check("martingale_partial_sum", [&](IdentityCheck& r) {
    for (std::uint64_t a : {1u, 2u, 3u, 5u}) {
      for (std::uint64_t b : {1u, 2u, 3u, 5u}) {
        Rational target(static_cast<unsigned long>(a), static_cast<unsigned long>(a + b));
        target.canonicalize();
        const Rational gap = target - martingale_partial_sum(a, b, c.max_half_length);
        if (sgn(gap) < 0 || gap > inverse_power_of_two(static_cast<unsigned>(c.max_half_length))) {
          fail(r, "a=" + std::to_string(a) + " b=" + std::to_string(b));
        }
        ++r.cases;
      }
    }
  }));
  out.push_back(check("meeting_time_pmf", [&](IdentityCheck& r) {
    for (std::uint64_t l = 1; l <= c.meeting_limit; ++l) {
      if (meeting_time_pmf(l) != inverse_power_of_two(static_cast<unsigned>(l))) fail(r, "l=" + std::to_string(l));
      ++r.cases;
    }
  }));
  return out;
}

int identity_exit_code(const std::vector<IdentityCheck>& checks) {
  for (const auto& c : checks) {
    if (!c.passed) return kExitIdentity;
  }
  return kExitOk;
}

namespace {

int run_verify_identities(const ExperimentConfig& c, OutputSet& files, std::ostream& log) {
  const auto checks = run_identity_checks(c);
  auto& out = files.open("identities.csv");
  out << "check,cases,status,detail\n";
  for (const auto& k : checks) {
    out << k.name << ',' << k.cases << ',' << (k.passed ? "pass" : "fail") << ',' << k.detail << '\n';
    log << (k.passed ? "pass " : "FAIL ") << k.name << " (" << k.cases << " cases)"
        << (k.detail.empty() ? "" : ": " + k.detail) << '\n';
  }
  return identity_exit_code(checks);
}

}  // namespace

int run(const ExperimentConfig& config, std::ostream& log) {
  OutputSet files(config);
  int status = kExitOk;
  switch (config.mode) {
    case Mode::SimulateSegment: status = run_simulate_segment(config, files, log); break;
    case Mode::ExactSegment: status = run_exact_segment(config, files, log); break;
    case Mode::SimulateZ: status = run_simulate_z(config, files, log); break;
    case Mode::Classify: status = run_classify(config, files, log); break;
    case Mode::ReproduceFigures: status = run_reproduce_figures(config, files, log); break;
    case Mode::VerifyIdentities: status = run_verify_identities(config, files, log); break;
  }
  auto& cfg = files.open("config.json");
  cfg << config.effective.dump(2) << '\n';
  files.commit();
  return status;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Edge-reinforced random walk experiments"};
  std::string mode_name;
  std::string config_path;
  FlagOverrides flags;
  std::uint64_t seed = 0, replicas = 0, steps = 0;
  unsigned threads = 0;
  std::string out_dir;
  app.add_option("mode", mode_name,
                 "simulate-segment | exact-segment | simulate-z | classify | reproduce-figures | verify-identities")
      ->required();
  app.add_option("--config", config_path, "JSON experiment config")->required();
  auto* seed_opt = app.add_option("--seed", seed, "base seed");
  auto* replicas_opt = app.add_option("--replicas", replicas, "number of replicas");
  auto* steps_opt = app.add_option("--steps", steps, "steps per replica");
  auto* threads_opt = app.add_option("--threads", threads, "worker threads");
  auto* out_opt = app.add_option("--out", out_dir, "output directory");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  if (*seed_opt) flags.seed = seed;
  if (*replicas_opt) flags.replicas = replicas;
  if (*steps_opt) flags.steps = steps;
  if (*threads_opt) flags.threads = threads;
  if (*out_opt) flags.out = out_dir;

  const auto mode = parse_mode(mode_name);
  if (!mode) {
    std::cerr << "config error: mode: unknown mode \"" << mode_name << "\"\n";
    return kExitConfig;
  }
  ExperimentConfig config;
  try {
    config = load_config(*mode, read_config_file(config_path), flags);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  try {
    return run(config, std::cout);
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace errw::cli
