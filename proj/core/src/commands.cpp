// Copyright 2026 The viscodelay Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "viscodelay/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "config_json.hpp"
#include "viscodelay/analysis.hpp"
#include "viscodelay/error.hpp"
#include "viscodelay/output.hpp"
#include "viscodelay/solver.hpp"

namespace viscodelay {

using nlohmann::ordered_json;

namespace {

std::filesystem::path output_dir(const RunConfig& config, const CommandContext& ctx) {
  auto dir = ctx.out_dir.empty() ? config.output : ctx.out_dir;
  std::filesystem::create_directories(dir);
  return dir;
}

std::ofstream open_file(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

void write_json(const std::filesystem::path& path, const ordered_json& j) {
  auto out = open_file(path);
  out << j.dump(2) << '\n';
}

// Non-finite doubles have no JSON spelling.
ordered_json num(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json constants_json(const ConstantsReport& r) {
  return {{"c0", num(r.c0)},
          {"c1", num(r.c1)},
          {"c2", num(r.c2)},
          {"c_star", num(r.c_star)},
          {"c_big", num(r.c_big)},
          {"sigma_tilde", num(r.sigma_tilde)},
          {"sigma", num(r.sigma)},
          {"k_bar", num(r.k_bar)},
          {"k_hat", num(r.k_hat)},
          {"k0", num(r.k0)},
          {"k0_explicit_lb", num(r.k0_explicit_lb)},
          {"gamma1", num(r.gamma1)},
          {"gamma2", num(r.gamma2)},
          {"epsilon_star", num(r.epsilon_star)},
          {"delta_star", num(r.delta_star)}};
}

ordered_json fit_json(const DecayFit& f) {
  return {{"sigma_emp", num(f.sigma_emp)},
          {"r_squared", num(f.r_squared)},
          {"window", {f.window.start, f.window.end}},
          {"samples", f.samples}};
}

void log_line(const CommandContext& ctx, const std::string& line) {
  if (ctx.log) *ctx.log << line << '\n';
}

}  // namespace

CertificateOutcome evaluate_certificate(const KernelReport& kernel, double tau, double theta,
                                        double c_poincare, double k) {
  CertificateOutcome out;
  if (!kernel.memory_enabled()) {
    out.note = "memory kernel is empty; the thresholds need mu~ > 0";
    return out;
  }
  if (tau == 0.0)
    out.nodelay_threshold = nodelay_threshold(kernel.mu0, kernel.mu_tilde, kernel.alpha, c_poincare);
  if (theta > 1.0) {
    out.constants = compute_constants(certificate_inputs(kernel, tau, theta, c_poincare, k));
    out.certified = out.constants->certified();
  } else if (tau == 0.0 && theta == 1.0) {
    out.certified = std::abs(k) < *out.nodelay_threshold;
    out.note = "theta = 1 without delay: only the no-delay threshold applies";
  } else {
    throw ThetaOutOfRange("theta must exceed 1 (theta = 1 is admissible only for tau = 0)");
  }
  return out;
}

int cmd_certify(const RunConfig& config, const CommandContext& ctx) {
  const auto disc = discretize(config.model, config.grid);
  const double cp = config.poincare();
  const auto cert =
      evaluate_certificate(disc.kernel, disc.tau, config.model.theta, cp, config.model.k);
  if (!disc.kernel.memory_enabled()) throw InvalidInputs(cert.note);

  ordered_json j;
  ordered_json fields = {{"mu0", disc.kernel.mu0},
                         {"mu_tilde", disc.kernel.mu_tilde},
                         {"alpha", num(disc.kernel.alpha)},
                         {"tau", disc.tau},
                         {"theta", config.model.theta},
                         {"c_poincare", cp},
                         {"k", config.model.k}};
  for (const auto& key : {"c0", "c1", "c2", "c_star", "c_big", "sigma_tilde", "sigma", "k_bar",
                          "k_hat", "k0", "k0_explicit_lb", "gamma1", "gamma2", "epsilon_star",
                          "delta_star"})
    fields[key] = nullptr;
  if (cert.constants) {
    const auto constants = constants_json(*cert.constants);
    for (const auto& [key, value] : constants.items()) fields[key] = value;
  }
  fields["nodelay_threshold"] = cert.nodelay_threshold ? num(*cert.nodelay_threshold) : ordered_json();
  fields["below_k_bar"] = cert.constants ? ordered_json(cert.constants->below_k_bar()) : ordered_json();
  fields["certified"] = cert.certified;
  j = fields;
  j["config"] = detail::to_json(config, &disc);

  const auto dir = output_dir(config, ctx);
  write_json(dir / "certificate.json", j);

  std::ostringstream txt;
  txt << "# viscodelay certificate\n";
  for (const auto& [key, value] : fields.items()) {
    txt << key << " = ";
    if (value.is_null()) txt << "n/a";
    else if (value.is_boolean()) txt << (value.get<bool>() ? "true" : "false");
    else txt << format_number(value.get<double>());
    txt << '\n';
  }
  if (!cert.note.empty()) txt << "# " << cert.note << '\n';
  txt << "# config: " << config_json(config, &disc) << '\n';
  open_file(dir / "certificate.txt") << txt.str();

  log_line(ctx, txt.str());
  return cert.certified ? kExitOk : kExitNotCertified;
}

int cmd_simulate(const RunConfig& config, const CommandContext& ctx) {
  const auto disc = discretize(config.model, config.grid);
  const auto cert = evaluate_certificate(disc.kernel, disc.tau, config.model.theta,
                                         config.poincare(), config.model.k);
  const auto dir = output_dir(config, ctx);
  const auto echo = config_json(config, &disc);

  auto csv = open_file(dir / "energy.csv");
  write_energy_header(csv, echo);

  ordered_json report;
  report["config"] = detail::to_json(config, &disc);

  Solver solver(config.model, disc);
  auto state = solver.build(config.init);
  RunOptions options;
  options.horizon = config.horizon;
  options.sample_every = config.sample_every;
  options.snapshots = config.snapshots;
  options.on_sample = [&](double t, const EnergyBreakdown& e) {
    write_energy_row(csv, t, e);
    return true;
  };
  Trace trace;
  try {
    trace = run(solver, state, options);
  } catch (const NonFinite& e) {
    csv.flush();
    report["error"] = e.what();
    report["failed_step"] = e.step();
    write_json(dir / "report.json", report);
    throw;
  }
  csv.flush();

  const bool auxiliary = config.model.mode == ProblemMode::auxiliary;
  report["samples"] = trace.size();
  report["final_time"] = trace.times.back();

  std::string label = "inconclusive";
  try {
    const auto fit = fit_decay_rate(trace);
    label = std::string(to_string(classify(fit)));
    report["fit"] = fit_json(fit);
  } catch (const InsufficientData& e) {
    report["fit"] = nullptr;
    report["fit_note"] = e.what();
  }
  report["classification"] = label;

  report["certificate"] = nullptr;
  if (cert.constants) {
    auto c = constants_json(*cert.constants);
    c["certified"] = cert.certified;
    c["below_k_bar"] = cert.constants->below_k_bar();
    report["certificate"] = c;
  } else if (cert.nodelay_threshold) {
    report["certificate"] = {{"nodelay_threshold", *cert.nodelay_threshold},
                             {"certified", cert.certified}};
  }
  if (!cert.note.empty()) report["certificate_note"] = cert.note;

  // Envelope: the original problem decays at sigma once |k| < k0; the
  // auxiliary problem at sigma~ once |k| < k_bar.
  std::optional<double> envelope;
  if (cert.constants) {
    if (!auxiliary && cert.certified) envelope = cert.constants->sigma;
    if (auxiliary && cert.constants->below_k_bar()) envelope = cert.constants->sigma_tilde;
  }
  report["theorem_bound"] = nullptr;
  if (envelope) {
    const auto check = check_theorem_bound(trace, *envelope);
    report["theorem_bound"] = {{"sigma", *envelope},
                               {"ok", check.ok},
                               {"worst_ratio", num(check.worst_ratio)},
                               {"first_violation", check.first_violation
                                                       ? ordered_json(*check.first_violation)
                                                       : ordered_json()}};
  }

  if (auxiliary) {
    const auto d = check_dissipation(trace, config.model);
    report["dissipation"] = {{"pass", d.pass},
                             {"precondition_met", cert.constants && cert.constants->below_k_bar()},
                             {"max_increase", d.max_increase},
                             {"increase_tolerance", d.increase_tolerance},
                             {"max_violation", d.max_violation},
                             {"violation_tolerance", d.violation_tolerance},
                             {"identity_residual", d.identity_residual}};
    if (cert.constants && cert.constants->below_k_bar()) {
      try {
        const auto ic = check_integral_inequality(trace, cert.constants->c_big);
        report["integral_inequality"] = {{"ok", ic.ok},
                                         {"c_big", cert.constants->c_big},
                                         {"worst_ratio", ic.worst_ratio},
                                         {"worst_time", ic.worst_time}};
      } catch (const HorizonTooShort& e) {
        report["integral_inequality"] = {{"error", e.what()}};
      }
    }
  }
  if (config.snapshots && trace.size() > 1) {
    const auto id = check_memory_identity(trace, trace.times.front(), trace.times.back());
    report["memory_identity"] = {{"residual", id.residual}, {"lhs", id.lhs}, {"rhs", id.rhs}};
  }

  write_json(dir / "report.json", report);
  open_file(dir / "energy.svg") << energy_svg(trace.times, trace.totals(), envelope, echo);

  std::ostringstream msg;
  msg << "samples " << trace.size() << ", F(0) = " << format_number(trace.energy.front().total)
      << ", F(T) = " << format_number(trace.energy.back().total) << ", " << label;
  log_line(ctx, msg.str());
  return kExitOk;
}

int cmd_sweep(const RunConfig& config, const CommandContext& ctx) {
  if (config.k_values.empty()) throw ConfigError("k_values", "must not be empty");
  const auto disc = discretize(config.model, config.grid);
  const double cp = config.poincare();
  std::vector<double> thetas = config.theta_values;
  if (thetas.empty()) thetas.push_back(config.model.theta);
  // Validate theta against the certificate before any simulation starts.
  for (double theta : thetas) evaluate_certificate(disc.kernel, disc.tau, theta, cp, 0.0);

  std::vector<double> ks = config.k_values;
  std::sort(ks.begin(), ks.end());
  std::vector<SweepRow> rows(ks.size());

  auto work = [&](std::size_t index) {
    SweepRow& row = rows[index];
    row.k = ks[index];
    try {
      // Best certified rate over the theta candidates.
      std::optional<CertificateOutcome> best;
      double best_theta = thetas.front();
      for (double theta : thetas) {
        auto c = evaluate_certificate(disc.kernel, disc.tau, theta, cp, row.k);
        const double s = c.constants ? c.constants->sigma : -std::numeric_limits<double>::infinity();
        const double b = best && best->constants ? best->constants->sigma
                                                 : -std::numeric_limits<double>::infinity();
        if (!best || s > b) {
          best = std::move(c);
          best_theta = theta;
        }
      }
      row.theta = best_theta;
      row.certified = best->certified;
      ModelParams params = config.model;
      params.k = row.k;
      params.theta = best_theta;

      RunOptions options;
      options.horizon = config.horizon;
      options.sample_every = config.sample_every;
      const auto trace = run(params, config.init, disc, options);
      const auto fit = fit_decay_rate(trace);
      row.sigma_emp = fit.sigma_emp;
      row.r_squared = fit.r_squared;
      row.classification = std::string(to_string(classify(fit)));
      if (best->constants && best->certified && params.mode == ProblemMode::original) {
        row.sigma = best->constants->sigma;
        row.theorem_bound_ok = check_theorem_bound(trace, row.sigma).ok;
      }
    } catch (const std::exception& e) {
      row.classification = "failed";
      row.error = e.what();
    }
  };

  const std::size_t workers =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(ctx.jobs, 1)), 1, rows.size());
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) work(i);
      });
  }

  const auto dir = output_dir(config, ctx);
  const auto echo = config_json(config, &disc);
  {
    auto csv = open_file(dir / "sweep.csv");
    write_sweep_csv(csv, rows, echo);
  }
  ordered_json j;
  j["config"] = detail::to_json(config, &disc);
  ordered_json list = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json item = {{"k", r.k},
                         {"sigma_emp", num(r.sigma_emp)},
                         {"r_squared", num(r.r_squared)},
                         {"classification", r.classification},
                         {"certified", r.certified},
                         {"theorem_bound_ok", r.theorem_bound_ok ? ordered_json(*r.theorem_bound_ok)
                                                                 : ordered_json()},
                         {"theta", r.theta},
                         {"sigma", r.certified ? num(r.sigma) : ordered_json()}};
    if (!r.error.empty()) item["error"] = r.error;
    list.push_back(item);
  }
  j["rows"] = list;
  write_json(dir / "sweep.json", j);

  for (const auto& r : rows) {
    std::ostringstream msg;
    msg << "k = " << format_number(r.k) << ": " << r.classification
        << (r.certified ? " (certified)" : "");
    if (!r.error.empty()) msg << " [" << r.error << "]";
    log_line(ctx, msg.str());
  }
  return kExitOk;
}

bool SelfcheckReport::pass() const {
  return std::all_of(items.begin(), items.end(), [](const SelfcheckItem& i) { return i.pass; });
}

namespace {

bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

std::string pair_detail(double got, double want) {
  return "got " + format_number(got) + ", expected " + format_number(want);
}

double pure_wave_error(int nx) {
  ModelParams params;
  GridSpec grid;
  grid.nx = nx;
  const auto disc = discretize(params, grid);
  Solver solver(params, disc);
  auto state = solver.build(InitialData{});
  RunOptions options;
  options.horizon = 0.5;
  run(solver, state, options);
  double err = 0.0;
  for (std::size_t i = 0; i < disc.points(); ++i) {
    const double exact = std::sin(std::numbers::pi * disc.x(i)) * std::cos(std::numbers::pi * state.t);
    err = std::max(err, std::abs(state.u()[i] - exact));
  }
  return err;
}

}  // namespace

SelfcheckReport run_selfcheck(std::uint64_t seed, const SelfcheckFormulas& f) {
  SelfcheckReport report;
  const double cp = 1.0 / (std::numbers::pi * std::numbers::pi);
  const CertificateInputs worked{1.0, 0.5, 2.0, 1.0, 2.0, cp, 0.0};

  const double g1 = f.gamma1(worked.mu_tilde);
  report.items.push_back({"gamma1 = 495/8", close(g1, 495.0 / 8.0, 1e-12), pair_detail(g1, 495.0 / 8.0)});
  const double g2 = f.gamma2(worked);
  report.items.push_back({"gamma2 = 45 + 73 C_P", close(g2, 45.0 + 73.0 * cp, 1e-12),
                          pair_detail(g2, 45.0 + 73.0 * cp)});

  // The gammas are the k_bar-saturated constant C written out; rebuilding
  // C from C0, C1, C2 must land on 1 + gamma1/alpha + gamma2 exactly.
  bool identity = true;
  std::string worst;
  for (double mt : {0.1, 0.5, 0.8})
    for (double theta : {1.5, 2.0, 4.0})
      for (double c : {cp, 0.3}) {
        const CertificateInputs in{1.3, mt, 1.7, 0.5, theta, c, 0.0};
        const double c0 = f.c0_saturated(in);
        const double c2 = f.c2_saturated(in);
        const double rebuilt = c0 * c2 + f.c1(in) + c2 + 1.0 + 1.0 / in.alpha;
        const double closed = 1.0 + f.gamma1(mt) / in.alpha + f.gamma2(in);
        if (!close(rebuilt, closed, 1e-12)) {
          identity = false;
          worst = pair_detail(rebuilt, closed);
        }
      }
  report.items.push_back({"saturated C = 1 + gamma1/alpha + gamma2", identity,
                          identity ? "9 x 2 input combinations" : worst});

  const auto constants = compute_constants(worked);
  const double explicit_lb = 8.0 * std::exp(-2.0) / (1231.0 + 1168.0 * cp);
  report.items.push_back({"explicit bound 8 e^-(tau+1) / (1231 + 1168 C_P)",
                          close(constants.k0_explicit_lb, explicit_lb, 1e-12),
                          pair_detail(constants.k0_explicit_lb, explicit_lb)});
  const bool pinned = constants.c0 == 2.0 && close(constants.c1, 8.0 + 8.0 * cp, 1e-12) &&
                      close(constants.c2, 20.0 + 20.0 * cp, 1e-12) &&
                      close(constants.c_star, 68.0 + 68.0 * cp, 1e-12) &&
                      close(constants.c_big, 69.5 + 68.0 * cp, 1e-12);
  report.items.push_back({"worked constants C0, C1, C2, C*, C", pinned,
                          "C = " + format_number(constants.c_big)});
  const double k_hat = constants.k_hat;
  const double g = formulas::admissible_gain(worked, k_hat);
  report.items.push_back({"k_hat = g(k_hat)", close(k_hat, g, 1e-10), pair_detail(k_hat, g)});

  const double e1 = pure_wave_error(40);
  const double e2 = pure_wave_error(80);
  const double order = std::log2(e1 / e2);
  report.items.push_back({"pure-wave convergence order >= 1.8", order >= 1.8,
                          "order " + format_number(std::round(order * 1000) / 1000)});

  ModelParams params;
  params.kernel = MemoryKernel::exponential(1.0, 2.0);
  params.tau = 1.0;
  GridSpec grid;
  grid.nx = 40;
  grid.ns = 16;
  const auto spot = dissipativity_spot_check(params, grid, 8, 1e-8, seed);
  report.items.push_back({"dissipativity spot check (k = 0)", spot.pass,
                          "max quotient " + format_number(spot.max_quotient)});
  return report;
}

int cmd_selfcheck(const CommandContext& ctx, const SelfcheckFormulas& formulas) {
  const auto report = run_selfcheck(ctx.seed, formulas);
  for (const auto& item : report.items)
    log_line(ctx, std::string(item.pass ? "PASS " : "FAIL ") + item.name + ": " + item.detail);
  log_line(ctx, report.pass() ? "selfcheck passed" : "selfcheck failed");
  return report.pass() ? kExitOk : kExitError;
}

}  // namespace viscodelay
