// Command-line front end: analytic evaluations and reproducible Monte Carlo
// experiments for the random block Hankel determinant process.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hankel/asympt.hpp"
#include "hankel/harness.hpp"

namespace {

namespace hp = hankel::hankelproc;
namespace as = hankel::asympt;
namespace hn = hankel::harness;

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Grid strings look like "0.5,1;1,1".
std::vector<hp::GridPoint> parse_grid(const std::string& text) {
  std::vector<hp::GridPoint> grid;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = text.find(';', pos);
    const std::string part =
        text.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    const std::size_t comma = part.find(',');
    if (comma == std::string::npos)
      throw CLI::ValidationError("--grid", "expected s,t pairs separated by ';'");
    grid.push_back(
        {std::stod(part.substr(0, comma)), std::stod(part.substr(comma + 1))});
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  if (grid.empty())
    throw CLI::ValidationError("--grid", "no grid points given");
  return grid;
}

void emit(const nlohmann::json& object, bool json_mode,
          const std::string& human) {
  if (json_mode)
    std::cout << object.dump() << "\n";
  else
    std::cout << human;
}

int cmd_kernel(double t1, double t2, std::optional<double> s1,
               std::optional<double> s2, bool json_mode) {
  const double closed = as::kernel_c(t1, t2);
  const double quadrature = as::kernel_c_quadrature(t1, t2);
  nlohmann::json out{{"t1", t1}, {"t2", t2}, {"c_closed_form", closed},
                     {"c_quadrature", quadrature}};
  std::string human = "c(t1, t2)          closed form = " + g17(closed) +
                      "\nc(t1, t2)          quadrature  = " + g17(quadrature) + "\n";
  if (s1 && s2) {
    const double cov = as::limit_covariance(*s1, t1, *s2, t2);
    out["limit_covariance"] = cov;
    human += "limit covariance   (s1^s2)^2 c / 2 = " + g17(cov) + "\n";
  }
  emit(out, json_mode, human);
  return 0;
}

int cmd_cumulants(int n, int p, double s, double t, int max_order,
                  bool json_mode) {
  const hp::ProcessParams params{n, p, {}};
  if (!json_mode)
    std::printf("%-3s %-24s %s\n", "m", "kappa_m", "bound-check");
  bool all_pass = true;
  for (int m = 1; m <= max_order; ++m) {
    const double kappa = hp::exact_cumulant(m, params, s, t);
    const auto bounds = hp::cumulant_bound_check(m, params, s, t);
    all_pass = all_pass && bounds.all_pass();
    if (json_mode) {
      std::cout << nlohmann::json{{"m", m},
                                  {"kappa", kappa},
                                  {"bounds_pass", bounds.all_pass()}}
                       .dump()
                << "\n";
    } else {
      std::printf("%-3d %-24.17g %s\n", m, kappa,
                  bounds.all_pass() ? "pass" : "FAIL");
    }
  }
  const auto strip = hp::cgf_strip(params, s, t);
  if (json_mode) {
    std::cout << nlohmann::json{{"mean", hp::exact_mean(params, s, t)},
                                {"center_log_det", hp::center_log_det(params, s, t)},
                                {"cgf_strip_z_min", strip.z_min},
                                {"cgf_binding_term", strip.binding_term}}
                     .dump()
              << "\n";
  } else {
    std::printf("mean %.17g, barycenter log-det %.17g\n",
                hp::exact_mean(params, s, t), hp::center_log_det(params, s, t));
    std::printf("CGF finite for z > %.17g (binding: %s)\n", strip.z_min,
                strip.binding_term.c_str());
  }
  return all_pass ? 0 : 1;
}

int cmd_sample(int n, int p, const std::string& grid_text, int reps,
               std::uint64_t seed, const std::string& out_path, int workers) {
  const auto grid = parse_grid(grid_text);
  const hp::ProcessParams params{n, p, grid};
  hp::validate(params);
  std::vector<std::vector<double>> values(reps);
  hn::parallel_for(static_cast<std::size_t>(reps), workers, [&](std::size_t rep) {
    hankel::RandomStream rng = hankel::RandomStream::child(seed, rep);
    values[rep] = hp::sample_path(rng, params).values;
  });
  if (out_path.empty() || out_path == "-") {
    hn::write_path_csv(std::cout, grid, values);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw CLI::ValidationError("--out", "cannot open " + out_path);
    hn::write_path_csv(out, grid, values);
  }
  return 0;
}

int cmd_verify(const std::string& which, std::uint64_t seed, int reps,
               int workers, const std::string& out_path, bool json_mode) {
  const auto kind = hn::parse_kind(which);
  if (!kind)
    throw CLI::ValidationError("--which", "unknown experiment '" + which + "'");
  hn::ExperimentConfig config;
  config.kind = *kind;
  config.seed = seed;
  config.replications = reps;
  config.workers = workers;
  config.out_path = out_path;
  const auto report = hn::run_experiment(config);
  if (json_mode)
    std::cout << report.to_jsonl();
  else
    report.write_human(std::cout);
  return report.passed() ? 0 : 1;
}

int cmd_rate(const std::string& kind, double s, double t, double x,
             bool json_mode) {
  if (kind == "moderate") {
    const double value = as::moderate_rate(x, s, t);
    emit(nlohmann::json{{"kind", kind}, {"x", x}, {"rate", value}}, json_mode,
         "moderate rate I(x) = " + g17(value) + "\n");
    return 0;
  }
  const auto rate = as::ldp_rate(x, s, t);
  nlohmann::json out{{"kind", kind}, {"x", x}, {"rate", rate.value}};
  std::string human = "rate Lambda*(x) = " + g17(rate.value) + "\n";
  if (rate.argmax_lambda) {
    out["argmax_lambda"] = *rate.argmax_lambda;
    human += "maximizer lambda* = " + g17(*rate.argmax_lambda) + "\n";
  }
  emit(out, json_mode, human);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random block Hankel determinant simulator and verifier"};
  app.require_subcommand(1);
  app.set_config("--config");
  bool json_mode = false;
  app.add_flag("--json", json_mode, "machine-readable output, one JSON object per line");

  // kernel
  double t1 = 1.0, t2 = 1.0;
  std::optional<double> s1, s2;
  auto* kernel = app.add_subcommand("kernel", "limit covariance kernel values");
  kernel->add_option("--t1", t1, "first time argument")->required();
  kernel->add_option("--t2", t2, "second time argument")->required();
  kernel->add_option("--s1", s1, "first size fraction");
  kernel->add_option("--s2", s2, "second size fraction");
  kernel->fallthrough();

  // cumulants
  int cn = 1, cp = 1, max_order = 4;
  double cs = 1.0, ct = 1.0;
  auto* cumulants =
      app.add_subcommand("cumulants", "exact cumulants with analytic bound checks");
  cumulants->add_option("--n", cn, "process half-order")->required();
  cumulants->add_option("--p", cp, "matrix size")->required();
  cumulants->add_option("--s", cs, "size fraction");
  cumulants->add_option("--t", ct, "time fraction");
  cumulants->add_option("--max-order", max_order, "highest cumulant order");
  cumulants->fallthrough();

  // sample
  int sn = 1, sp = 1, reps = 1000, workers = 0;
  std::uint64_t seed = 20250809;
  std::string grid_text = "1,1";
  std::string out_path;
  auto* sample = app.add_subcommand("sample", "per-replication path values as CSV");
  sample->add_option("--n", sn, "process half-order")->required();
  sample->add_option("--p", sp, "matrix size")->required();
  sample->add_option("--grid", grid_text, "grid points 's,t;s,t;...'");
  sample->add_option("--reps", reps, "replications");
  sample->add_option("--seed", seed, "random seed");
  sample->add_option("--out", out_path, "output CSV path ('-' for stdout)");
  sample->add_option("--workers", workers, "worker threads (0 = auto)");
  sample->fallthrough();

  // verify
  std::string which;
  int vreps = 0, vworkers = 0;
  std::uint64_t vseed = 20250809;
  std::string vout;
  auto* verify =
      app.add_subcommand("verify", "run a named acceptance experiment");
  verify
      ->add_option("--which", which,
                   "one of: product-formula decomposition bartlett oracle "
                   "cumulant-bounds clt lln modgauss ldp-closed-form polygamma")
      ->required();
  verify->add_option("--seed", vseed, "random seed");
  verify->add_option("--reps", vreps, "replications (0 = experiment default)");
  verify->add_option("--workers", vworkers, "worker threads (0 = auto)");
  verify->add_option("--out", vout, "also write the JSONL report here");
  verify->fallthrough();

  // rate
  std::string rate_kind = "ldp";
  double rs = 1.0, rt = 1.0, rx = -1.0;
  auto* rate = app.add_subcommand("rate", "deviation rate functions");
  rate->add_option("--kind", rate_kind, "moderate or ldp")
      ->check(CLI::IsMember({"moderate", "ldp"}));
  rate->add_option("--s", rs, "size fraction");
  rate->add_option("--t", rt, "time fraction");
  rate->add_option("--x", rx, "evaluation point")->required();
  rate->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (kernel->parsed()) return cmd_kernel(t1, t2, s1, s2, json_mode);
    if (cumulants->parsed())
      return cmd_cumulants(cn, cp, cs, ct, max_order, json_mode);
    if (sample->parsed())
      return cmd_sample(sn, sp, grid_text, reps, seed, out_path, workers);
    if (verify->parsed())
      return cmd_verify(which, vseed, vreps, vworkers, vout, json_mode);
    if (rate->parsed()) return cmd_rate(rate_kind, rs, rt, rx, json_mode);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
