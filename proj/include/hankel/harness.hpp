#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "hankel/hankelproc.hpp"
#include "hankel/stats.hpp"

namespace hankel::harness {

using stats::ks_test;
using stats::ks_two_sample;
using stats::KsResult;

enum class ExperimentKind {
  clt,
  lln,
  decomposition,
  bartlett,
  oracle,
  modgauss,
  product_formula,
  cumulant_bounds,
  ldp_closed_form,
  polygamma,
};

std::string kind_name(ExperimentKind kind);
std::optional<ExperimentKind> parse_kind(const std::string& name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::clt;
  std::uint64_t seed = 20250809;
  // Zero means the per-kind default.
  int replications = 0;
  int workers = 0;
  double alpha_single = 0.01;
  double alpha_batched = 0.001;
  int n = 0;
  int p_n = 0;
  std::vector<hankelproc::GridPoint> grid;
  std::vector<std::pair<int, int>> ladder;  // (n, p_n) rungs
  int jbe_p = 3;
  double jbe_gamma = 4.0;
  double jbe_delta = 4.0;
  // When set, run_experiment also writes the JSONL report here.
  std::string out_path;
};

struct StatRecord {
  std::string name;
  double empirical = 0.0;
  double reference = 0.0;
  double se = 0.0;
  double stat = 0.0;
  double p_value = 0.0;
  bool pass = false;
  std::string note;
};

struct ExperimentReport {
  std::string kind;
  std::map<std::string, std::string> config;  // echo, sorted keys
  std::vector<StatRecord> stats;
  std::map<std::string, std::uint64_t> diagnostics;
  double wall_ms = 0.0;

  bool passed() const;
  // One JSON object per line: config record, one record per statistic, the
  // diagnostics record, and (optionally) the timing record.
  std::string to_jsonl(bool include_timing = true) const;
  void write_human(std::ostream& os) const;
};

ExperimentReport run_experiment(const ExperimentConfig& config);

ExperimentReport run_clt(ExperimentConfig config);
ExperimentReport run_lln(ExperimentConfig config);
ExperimentReport run_decomposition(ExperimentConfig config);
ExperimentReport run_bartlett(ExperimentConfig config);
ExperimentReport run_oracle(ExperimentConfig config);
ExperimentReport run_modgauss(ExperimentConfig config);
ExperimentReport run_product_formula(ExperimentConfig config);
ExperimentReport run_cumulant_bounds(ExperimentConfig config);
ExperimentReport run_ldp_closed_form(ExperimentConfig config);
ExperimentReport run_polygamma(ExperimentConfig config);

// Index-striped worker pool; the work function sees every index exactly
// once and results must be written to index-addressed slots, which keeps
// aggregates independent of the worker count.
void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& fn);

int default_workers();

// Per-replication path values as CSV (columns: replication, s, t, value),
// floats with 17 significant digits.
void write_path_csv(std::ostream& os,
                    const std::vector<hankelproc::GridPoint>& grid,
                    const std::vector<std::vector<double>>& values_per_rep);

}  // namespace hankel::harness
