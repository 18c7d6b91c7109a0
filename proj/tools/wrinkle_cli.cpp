// Command-line front end: one subcommand per pipeline stage plus the sweep.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wrinkle/ansatz.hpp"
#include "wrinkle/config.hpp"
#include "wrinkle/effective.hpp"
#include "wrinkle/energy.hpp"
#include "wrinkle/errors.hpp"
#include "wrinkle/fh_solver.hpp"
#include "wrinkle/lemma1.hpp"
#include "wrinkle/report.hpp"
#include "wrinkle/scaling.hpp"

namespace fs = std::filesystem;
using namespace wrinkle;

namespace {

struct Common {
  std::string config_path;
  std::string output;
  int jobs = 0;
  std::vector<std::string> overrides;

  RunConfig load() const {
    RunConfig c = config_path.empty() ? parse_config("{}", overrides)
                                      : load_config(config_path, overrides);
    if (!output.empty()) c.output = output;
    if (jobs > 0) c.jobs = jobs;
    if (c.jobs == 0) c.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return c;
  }
};

// Leftover "--key=value" arguments become config overrides.
std::vector<std::string> collect_overrides(const CLI::App& sub) {
  std::vector<std::string> out;
  for (const std::string& arg : sub.remaining()) {
    if (arg.rfind("--", 0) != 0 || arg.find('=') == std::string::npos)
      throw ValidationError("cli.argument", "unexpected argument '" + arg + "'");
    out.push_back(arg.substr(2));
  }
  return out;
}

GridPtr grid_for(const RunConfig& c, std::size_t floor_n = 2000) {
  const std::size_t n = c.grid.n ? c.grid.n : default_node_count(c.params, floor_n);
  return make_grid(c.params, n, c.grid.refinement);
}

std::vector<double> nodes_of(const RadialGrid& g) { return {g.nodes().begin(), g.nodes().end()}; }
std::vector<double> values_of(const RadialProfile& f) { return {f.values().begin(), f.values().end()}; }

void write_columns(const fs::path& path, std::vector<std::string> header,
                   std::vector<std::vector<double>> columns) {
  write_text(path, columns_csv(header, columns));
}

int cmd_validate(const RunConfig& c) {
  const RegimeReport r = validate_params(c.params);
  std::printf("r_w=%.6f\nregime=%s\nalpha_threshold=%.6e\n", r.r_w,
              std::string(to_string(r.regime)).c_str(), r.alpha_threshold);
  return 0;
}

int cmd_effective(const RunConfig& c) {
  const GridPtr g = grid_for(c);
  const EffectiveSolution sol = f0_minimize_numeric(c.params, g);
  const RadialProfile v0 = sample_minimizer(g, c.params);
  std::printf("F0_numeric=%s\nF0_reference=%s\nl2_gap_to_explicit=%.3e\nel_residual=%.3e\n"
              "iterations=%d\n",
              format_double(sol.energy).c_str(),
              format_double(f0_reference_minimum(c.params)).c_str(), l2_distance(sol.v, v0),
              euler_lagrange_residual(sol.v, c.params), sol.iterations);
  // closed-form stress where it exists, the solver's otherwise
  std::vector<double> sigma0 = values_of(sol.sigma);
  if (wrinkling_regime(c.params))
    for (std::size_t j = 0; j < g->size(); ++j) sigma0[j] = sigma0_explicit((*g)[j], c.params);
  write_columns(fs::path(c.output) / "fields" / "effective.csv", {"r", "v0", "v_numeric", "sigma0"},
                {nodes_of(*g), values_of(v0), values_of(sol.v), sigma0});
  return 0;
}

int cmd_fh(const RunConfig& c) {
  const GridPtr g = grid_for(c);
  const FhSolution sol = fh_minimize(c.params, g);
  std::printf("F_h=%s\nmin_stress=%.3e\nonset=%.6f\niterations=%d\nw_sq=%.6e\nw_prime_sq=%.6e\n"
              "v_gap_sq=%.6e\n",
              format_double(sol.energy).c_str(), sol.min_stress, sol.onset, sol.iterations,
              sol.diagnostics.w_sq, sol.diagnostics.w_prime_sq, sol.diagnostics.v_gap_sq);
  write_columns(fs::path(c.output) / "fields" / "fh.csv", {"r", "v_h", "w_h", "sigma_h"},
                {nodes_of(*g), values_of(sol.v), values_of(sol.w), values_of(sol.sigma)});
  const nlohmann::json diag = {
      {"h", c.params.h},
      {"nodes", g->size()},
      {"energy", sol.energy},
      {"terms",
       {{"membrane", sol.terms.membrane},
        {"relaxed", sol.terms.relaxed},
        {"substrate", sol.terms.substrate},
        {"bending", sol.terms.bending}}},
      {"min_F0", f0_reference_minimum(c.params)},
      {"min_stress", sol.min_stress},
      {"onset", sol.onset},
      {"iterations", sol.iterations},
      {"grad_norm", sol.grad_norm},
      {"w_sq", sol.diagnostics.w_sq},
      {"w_prime_sq", sol.diagnostics.w_prime_sq},
      {"v_gap_sq", sol.diagnostics.v_gap_sq}};
  write_text(fs::path(c.output) / "fields" / "fh.json", diag.dump(2) + "\n");
  return 0;
}

AnsatzField ansatz_for(const RunConfig& c, FhSolution* keep = nullptr) {
  const GridPtr g = grid_for(c);
  FhSolution sol = fh_minimize(c.params, g);
  AnsatzField an = build_ansatz(sol, c.params, choose_parameters(c.params.h));
  if (keep) *keep = std::move(sol);
  return an;
}

int cmd_ansatz(const RunConfig& c) {
  const AnsatzField an = ansatz_for(c);
  const AnsatzParams& ap = an.params;
  std::printf("delta=%.6f\nN=%d\nN_exact=%.6f\nnear_integer=%s\ntau=%.6f\nk_max=%d\n", ap.delta,
              ap.N, ap.N_exact, ap.near_integer ? "true" : "false", ap.tau,
              std::max(an.w.k_max(), an.u_theta.k_max()));
  std::vector<double> active(an.A.size());
  for (std::size_t j = 0; j < active.size(); ++j)
    active[j] = static_cast<double>(an.w.modes(j).size()) - (an.w.modes(j).empty() ? 0.0 : 1.0);
  write_columns(fs::path(c.output) / "fields" / "ansatz.csv",
                {"r", "A", "sigma", "sigma_tilde", "active_modes"},
                {nodes_of(an.A.grid()), values_of(an.A), values_of(an.sigma),
                 values_of(an.sigma_tilde), active});

  // sparse mode table of w_osc: one row per (r, k) with a nonzero amplitude
  std::string table = "r,k,a_k\n";
  for (std::size_t j = 0; j < an.w.size(); ++j)
    for (const Mode& m : an.w.modes(j))
      if (m.k > 0)
        table += format_double(an.w.grid()[j]) + "," + std::to_string(m.k) + "," +
                 format_double(m.c) + "\n";
  write_text(fs::path(c.output) / "fields" / "ansatz_modes.csv", table);
  const nlohmann::json header = {{"h", ap.h},
                                 {"delta", ap.delta},
                                 {"N", ap.N},
                                 {"N_exact", ap.N_exact},
                                 {"rounding_error", ap.rounding_error},
                                 {"tau", ap.tau},
                                 {"mask_id", ap.mask_id},
                                 {"mask_square_integral", kMaskSquareIntegral}};
  write_text(fs::path(c.output) / "fields" / "ansatz.json", header.dump(2) + "\n");
  return 0;
}

int cmd_energy(const RunConfig& c, const std::string& reference, const std::string& backend) {
  FhSolution sol;
  const AnsatzField an = ansatz_for(c, &sol);
  const Deformation d{an.u_r, an.u_theta, an.w};
  EnergyOptions opt;
  if (backend == "serial") opt.backend = Backend::serial_reference;
  const Decomposition dec = decomposed_energy(d, c.params, opt);
  const bool fh = reference == "fh";
  const double ref = fh ? sol.energy : f0_reference_minimum(c.params);
  const std::string text = energy_json(dec, fh ? Reference::min_fh : Reference::min_f0, ref);
  write_text(fs::path(c.output) / "energy.json", text);
  std::cout << text;
  return 0;
}

int cmd_lemma1(const RunConfig& c) {
  const AnsatzField an = ansatz_for(c);
  const Decomposition dec = decomposed_energy({an.u_r, an.u_theta, an.w}, c.params);
  const auto cases = lemma1_sample(dec, c.params, c.lemma1_cases, c.seed.value_or(1));
  std::size_t holds = 0;
  for (const auto& k : cases) holds += k.holds ? 1 : 0;
  write_text(fs::path(c.output) / "lemma1.csv", lemma1_csv(cases));
  std::printf("cases=%zu\nholds=%zu\n", cases.size(), holds);
  if (holds != cases.size())
    throw NumericalError("lemma1.violated", "two-circle lower bound fails on a sampled pair");
  return 0;
}

int cmd_sweep(const RunConfig& c, bool dry_run, bool svg) {
  const std::vector<double> hs = sweep_h_list(c);
  if (hs.empty()) throw ValidationError("sweep.empty", "sweep lists no thickness");
  if (dry_run) {
    for (double h : hs) {
      SheetParams q = c.params;
      q.h = h;
      std::printf("h=%s nodes=%zu samples=%zu\n", format_double(h).c_str(),
                  c.grid.n ? c.grid.n : default_node_count(q), planned_samples(q, h));
    }
    return 0;
  }
  SweepOptions opt;
  opt.n_nodes = c.grid.n;
  opt.refinement = c.grid.refinement;
  opt.jobs = c.jobs;
  const auto records = run_sweep(c.params, hs, opt);
  const fs::path out(c.output);
  write_text(out / "sweep.csv", sweep_csv(records));
  write_text(out / "summary.json", summary_json(c.params, records));
  if (svg) write_text(out / "epsilon.svg", epsilon_svg(records));
  bool negative = false;
  for (const auto& r : records) {
    std::printf("h=%s status=%s epsilon=%s\n", format_double(r.h).c_str(), r.status.c_str(),
                format_double(r.epsilon).c_str());
    negative = negative || r.status == "sweep.negative_excess";
  }
  if (negative)
    throw NumericalError("sweep.negative_excess", "ansatz energy below min F_h beyond tolerance");
  return 0;
}

int cmd_report(const RunConfig& c) {
  const fs::path out(c.output);
  const auto records = parse_sweep_csv(read_text(out / "sweep.csv"));
  write_text(out / "summary.json", summary_json(c.params, records));
  write_text(out / "epsilon.svg", epsilon_svg(records));
  std::printf("records=%zu\n", records.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wrinkling of a thin sheet on a curved substrate: effective functionals, "
               "upper-bound ansatz and thickness sweeps"};
  app.require_subcommand(1);
  Common common;

  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("-c,--config", common.config_path, "JSON config file");
    sub->add_option("-o,--output", common.output, "Output directory (overrides config)");
    sub->add_option("-j,--jobs", common.jobs, "Concurrent jobs (default: available cores)");
    sub->allow_extras();
    sub->footer("Any config key can be overridden as --key=value, e.g. --grid.n=4000.");
    return sub;
  };
  CLI::App* validate = add("validate", "Check parameters and print r_w and the regime");
  CLI::App* effective = add("minimize-effective", "Minimize F0 numerically; write fields/effective.csv");
  CLI::App* fh = add("minimize-fh", "Minimize F_h; write fields/fh.csv");
  CLI::App* ansatz = add("build-ansatz", "Build the wrinkled ansatz; write fields/ansatz.csv");
  CLI::App* energy = add("evaluate-energy", "Energy breakdown of the ansatz as JSON");
  std::string reference = "f0", backend = "parallel";
  energy->add_option("--reference", reference, "Excess reference: f0 or fh")
      ->check(CLI::IsMember({"f0", "fh"}));
  energy->add_option("--backend", backend, "Energy kernel: parallel or serial")
      ->check(CLI::IsMember({"parallel", "serial"}));
  CLI::App* lemma1 = add("lemma1-check", "Check the two-circle lower bound on sampled radius pairs; write lemma1.csv");
  CLI::App* sweep = add("sweep", "Thickness sweep; write sweep.csv and summary.json");
  bool dry_run = false, svg = false;
  sweep->add_flag("--dry-run", dry_run, "List planned thicknesses without computing");
  sweep->add_flag("--svg", svg, "Also write epsilon.svg");
  CLI::App* report = add("report", "Rebuild summary.json and epsilon.svg from sweep.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: code=cli.usage message=" << e.what() << "\n";
    return 1;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    common.overrides = collect_overrides(*sub);
    const RunConfig c = common.load();
    if (sub == validate) return cmd_validate(c);
    if (sub == effective) return cmd_effective(c);
    if (sub == fh) return cmd_fh(c);
    if (sub == ansatz) return cmd_ansatz(c);
    if (sub == energy) return cmd_energy(c, reference, backend);
    if (sub == lemma1) return cmd_lemma1(c);
    if (sub == sweep) return cmd_sweep(c, dry_run, svg);
    if (sub == report) return cmd_report(c);
  } catch (const ValidationError& e) {
    std::cerr << "error: code=" << e.code() << " message=" << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "error: code=" << e.code() << " message=" << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: code=internal message=" << e.what() << "\n";
    return 2;
  }
  return 1;
}
