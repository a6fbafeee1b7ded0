#include "dads/verification.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

namespace dads {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::inconclusive: return "inconclusive";
    case CheckStatus::skipped: return "skipped";
  }
  return "unknown";
}

bool VerificationReport::overall_pass() const {
  if (aborted) return false;
  return std::none_of(records.begin(), records.end(),
                      [](const CheckRecord& r) { return r.status == CheckStatus::fail; });
}

const CheckRecord* VerificationReport::find(const std::string& id) const {
  for (const auto& r : records) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

namespace {

constexpr double kMonotoneTolerance = 1e-12;

CheckRecord make(const std::string& id, const std::string& category) {
  CheckRecord r;
  r.id = id;
  r.category = category;
  return r;
}

// Minimum margin over samples with index >= first; margin_fn(sample) -> (margin, observed).
template <class Fn>
void worst_over(CheckRecord& rec, const std::vector<Sample>& samples, std::size_t first, Fn&& margin_fn) {
  rec.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = first; i < samples.size(); ++i) {
    const auto [margin, observed] = margin_fn(samples[i]);
    if (!(margin >= rec.worst_margin)) {
      rec.worst_margin = margin;
      rec.time_of_worst = samples[i].t;
      rec.observed = observed;
    }
  }
  if (rec.worst_margin == std::numeric_limits<double>::infinity()) rec.worst_margin = 0.0;
  rec.status = rec.worst_margin >= 0.0 ? CheckStatus::pass : CheckStatus::fail;
}

std::size_t tail_start(const Trajectory& traj, double fraction) {
  const double t_end = traj.samples.back().t;
  const double from = (1.0 - fraction) * t_end;
  std::size_t i = 0;
  while (i < traj.samples.size() && traj.samples[i].t < from - 1e-12) ++i;
  return i;
}

CheckRecord z_monotone(const Trajectory& traj, const std::string& id, const std::string& category) {
  CheckRecord rec = make(id, category);
  const double z0 = traj.samples.front().z;
  rec.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const double step = i == 0 ? 0.0 : traj.samples[i].z - traj.samples[i - 1].z;
    const double margin = std::min(step, traj.samples[i].z - z0) + kMonotoneTolerance;
    if (margin < rec.worst_margin) {
      rec.worst_margin = margin;
      rec.time_of_worst = traj.samples[i].t;
      rec.observed = traj.samples[i].z;
    }
  }
  rec.status = rec.worst_margin >= 0.0 ? CheckStatus::pass : CheckStatus::fail;
  return rec;
}

CheckRecord bounded(const Trajectory& traj, const Scenario& s, std::size_t first, const std::string& id,
                    double Sample::*field, const std::string& note) {
  CheckRecord rec = make(id, "regulation");
  worst_over(rec, traj.samples, first, [&](const Sample& smp) {
    const double v = smp.*field;
    return std::pair{std::isfinite(v) ? s.integrator.blowup_guard - v : -1.0, v};
  });
  rec.note = note;
  return rec;
}

bool vanishing(const SignalSpec& sig) {
  return sig.kind == SignalKind::zero || sig.kind == SignalKind::decaying_exponential ||
         signal_sup_norm(sig) == 0.0;
}

}  // namespace

std::vector<CheckRecord> verify_regulation(const Trajectory& traj, const Scenario& s) {
  std::vector<CheckRecord> out;
  if (traj.samples.empty()) return out;
  const auto& P = s.controller.params;
  const double t_end = traj.samples.back().t;
  const bool short_horizon = t_end < 10.0;
  const std::size_t tail = tail_start(traj, s.verify.tail_fraction);

  CheckRecord v = make("v-limsup", "regulation");
  if (short_horizon) {
    v.status = CheckStatus::inconclusive;
    v.note = "horizon shorter than 10 time units";
  } else {
    const double bound = P.epsilon * (1.0 + s.verify.disc_tol) + tail_abs_tol(s);
    worst_over(v, traj.samples, tail, [&](const Sample& smp) { return std::pair{bound - smp.V, smp.V}; });
  }
  out.push_back(v);

  out.push_back(z_monotone(traj, "z-monotone", "regulation"));

  CheckRecord settle = make("deadzone-settling", "regulation");
  if (short_horizon) {
    settle.status = CheckStatus::inconclusive;
    settle.note = "horizon shorter than 10 time units";
  } else {
    const double growth = traj.samples.back().z - traj.samples[tail].z;
    settle.observed = growth;
    settle.worst_margin = s.verify.settle_tol - growth;
    settle.time_of_worst = t_end;
    settle.status = settle.worst_margin >= 0.0 ? CheckStatus::pass : CheckStatus::fail;
  }
  out.push_back(settle);

  out.push_back(bounded(traj, s, tail, "phi-tail-bounded", &Sample::Phi,
                        "boundedness only; the asymptotic gain on Phi has no closed form"));
  out.push_back(bounded(traj, s, 0, "u-sup-bounded", &Sample::U,
                        "boundedness only; the decay and gain functions have no closed form"));

  CheckRecord alt = make("regulation-alternative", "regulation");
  const auto& B = *s.plant.bundle;
  const bool applicable = B.gamma(0.0) == 0.0 && B.Lambda == 0.0 && is_time_invariant(s.theta) && vanishing(s.d) &&
                          vanishing(s.delta);
  if (!applicable) {
    alt.status = CheckStatus::skipped;
    alt.note = "needs gamma(0) = Lambda = 0, constant theta and vanishing d, delta";
  } else if (short_horizon) {
    alt.status = CheckStatus::inconclusive;
    alt.note = "horizon shorter than 10 time units";
  } else {
    double tail_state = 0.0;
    for (std::size_t i = tail; i < traj.samples.size(); ++i) {
      tail_state = std::max({tail_state, norm2(traj.samples[i].y), traj.samples[i].norm_w});
    }
    const double converge_margin = s.verify.converge_tol - tail_state;
    const double theta_norm = signal_sup_norm(s.theta);
    const double z_end = traj.samples.back().z;
    const double gain_margin =
        theta_norm > P.b ? std::log(theta_norm - P.b) - z_end : -std::numeric_limits<double>::infinity();
    alt.worst_margin = std::max(converge_margin, gain_margin);
    alt.observed = tail_state;
    alt.time_of_worst = t_end;
    alt.status = alt.worst_margin >= 0.0 ? CheckStatus::pass : CheckStatus::fail;
    alt.note = converge_margin >= 0.0 ? "state converged" : "gain below ln(|theta| - b)";
  }
  out.push_back(alt);
  return out;
}

std::vector<CheckRecord> verify_estimates(const Trajectory& traj, const Scenario& s,
                                          const ReactionDiffusionConstants& k) {
  std::vector<CheckRecord> out;
  if (traj.samples.empty()) return out;
  const auto& first = traj.samples.front();
  const double rel = s.verify.disc_tol;
  const double initial_energy = first.norm_w * first.norm_w + first.y[0] * first.y[0];

  CheckRecord energy = make("energy-bound", "estimate");
  worst_over(energy, traj.samples, 0, [&](const Sample& smp) {
    const double lhs = smp.norm_w * smp.norm_w + smp.y[0] * smp.y[0];
    const double rhs = energy_bound(s, smp.t, initial_energy);
    return std::pair{rhs * (1.0 + rel) + s.verify.abs_tol - lhs, lhs};
  });
  out.push_back(energy);

  const double dsup = signal_sup_norm(s.d);
  const double th = signal_sup_norm(s.theta);
  const double th4 = th * th * th * th;
  const double p = k.p;
  const double gain_cap = std::log(std::exp(first.z) + k.Bbar * (dsup * dsup + th4 + th4 * th4 + 2.0 / (p * p) +
                                                                   initial_energy)) +
                          s.verify.ln_slack;
  CheckRecord gain = make("gain-bound", "estimate");
  worst_over(gain, traj.samples, 0, [&](const Sample& smp) { return std::pair{gain_cap - smp.z, smp.z}; });
  const CheckRecord mono = z_monotone(traj, "gain-bound", "estimate");
  if (mono.status == CheckStatus::fail) {
    gain.status = CheckStatus::fail;
    gain.note = "z decreased at t = " + format_g17(mono.time_of_worst);
  }
  out.push_back(gain);

  const double t_end = traj.samples.back().t;
  const bool short_horizon = t_end < 10.0 / k.kappa;
  const std::size_t tail = tail_start(traj, s.verify.tail_fraction);
  const double abs_tol = tail_abs_tol(s);

  CheckRecord wtail = make("w-tail", "estimate");
  if (!is_time_invariant(s.theta)) {
    wtail.status = CheckStatus::skipped;
    wtail.note = "theta is time-varying";
  } else if (short_horizon || traj.aborted) {
    wtail.status = CheckStatus::inconclusive;
    wtail.note = "horizon shorter than 10/kappa";
  } else {
    const double theta1 = std::abs(eval_signal(s.theta, 0.0)[0]);
    const double bound =
        std::sqrt(2.0 * s.controller.params.epsilon) / (p * kPi * kPi) * theta1 * (1.0 + rel) + abs_tol;
    worst_over(wtail, traj.samples, tail, [&](const Sample& smp) { return std::pair{bound - smp.norm_w, smp.norm_w}; });
  }
  out.push_back(wtail);

  CheckRecord ytail = make("y-tail", "estimate");
  if (short_horizon || traj.aborted) {
    ytail.status = CheckStatus::inconclusive;
    ytail.note = "horizon shorter than 10/kappa";
  } else {
    const double bound = std::sqrt(2.0 * s.controller.params.epsilon) * (1.0 + rel) + abs_tol;
    worst_over(ytail, traj.samples, tail, [&](const Sample& smp) {
      return std::pair{bound - std::abs(smp.y[0]), std::abs(smp.y[0])};
    });
  }
  out.push_back(ytail);
  return out;
}

namespace {

struct MonitorValue {
  double quantity;  // the monitored functional at the sample
  double rhs;       // right-hand side of its differential inequality
  double scale;     // magnitude of the terms making up rhs
};

}  // namespace

std::vector<CheckRecord> monitor_dissipation(const Trajectory& traj, const Scenario& s) {
  const auto& ctl = s.controller;
  const auto& P = ctl.params;
  const double p = s.plant.pde.p;
  const double c = ctl.c;
  const auto k = reaction_diffusion_constants(p, c, P.a, P.b, P.epsilon, P.Gamma);
  const double pi2 = kPi * kPi;
  const double pi4 = pi2 * pi2;

  const double dsup = signal_sup_norm(s.d);
  const double th = signal_sup_norm(s.theta);
  const double th4 = th * th * th * th;
  double initial_energy = 0.0;
  if (!traj.samples.empty()) {
    const auto& f = traj.samples.front();
    initial_energy = f.norm_w * f.norm_w + f.y[0] * f.y[0];
  }
  const double R = P.a * k.Kbar * (dsup * dsup + th4 + th4 * th4 + 2.0 / (p * p) + initial_energy);

  auto pow8 = [](double x) {
    const double x2 = x * x;
    const double x4 = x2 * x2;
    return x4 * x4;
  };

  using Eval = std::function<MonitorValue(const Sample&, double d, const Vec& theta)>;
  const std::vector<std::pair<std::string, Eval>> monitors = {
      {"monitor-phi",
       [&](const Sample& smp, double, const Vec& theta) {
         const double nw = smp.norm_w;
         const double decay = p * pi2 * nw * nw;
         const double coupling = std::abs(theta[0]) * std::abs(smp.y[0]) * nw;
         return MonitorValue{smp.Phi, -decay + coupling, decay + coupling};
       }},
      {"monitor-v",
       [&](const Sample& smp, double d, const Vec& theta) {
         const double y = smp.y[0];
         const double y2 = y * y;
         const double y4 = y2 * y2;
         const double growth = P.b + std::exp(smp.z);
         const double forcing =
             P.a * (d * d + pow8(positive_part(norm2(theta) - growth)) + 2.0 / (p * p) + p * pi2 * smp.Phi) / growth;
         const double damping = 2.0 * c * smp.V + c * y4 + c * y4 * y4;
         return MonitorValue{smp.V, -damping + forcing, damping + forcing};
       }},
      {"monitor-u",
       [&](const Sample& smp, double d, const Vec& theta) {
         const double tn = norm2(theta);
         const double t4 = tn * tn * tn * tn;
         const double forcing =
             P.a / P.b * (d * d + pow8(positive_part(tn - P.b)) + 2.0 / (p * p)) + t4 / (4.0 * p * p * pi4);
         const double decay = k.kappa * smp.U;
         return MonitorValue{smp.U, -decay + forcing, decay + forcing};
       }},
      {"monitor-v-gain",
       [&](const Sample& smp, double, const Vec&) {
         const double decay = 2.0 * c * smp.V;
         const double forcing = R / (P.b + std::exp(smp.z));
         return MonitorValue{smp.V, -decay + forcing, decay + forcing};
       }},
  };

  const auto& samples = traj.samples;
  double max_spacing = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) max_spacing = std::max(max_spacing, samples[i].t - samples[i - 1].t);
  const bool too_sparse = max_spacing > s.verify.max_sample_spacing;
  const bool too_short = samples.size() < 3;

  std::vector<CheckRecord> out;
  for (const auto& [id, eval] : monitors) {
    CheckRecord rec = make(id, "dissipation");
    if (too_short || too_sparse) {
      rec.status = CheckStatus::inconclusive;
      rec.note = too_short ? "fewer than 3 samples" : "sample spacing above " + format_g17(s.verify.max_sample_spacing);
      out.push_back(rec);
      continue;
    }
    std::vector<MonitorValue> vals;
    vals.reserve(samples.size());
    for (const auto& smp : samples) vals.push_back(eval(smp, eval_signal(s.d, smp.t)[0], eval_signal(s.theta, smp.t)));
    rec.worst_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
      const double span = samples[i + 1].t - samples[i - 1].t;
      const double rate = (vals[i + 1].quantity - vals[i - 1].quantity) / span;
      double scale = 0.0;
      for (std::size_t j = i - 1; j <= i + 1; ++j) scale = std::max(scale, std::abs(vals[j].quantity) + vals[j].scale);
      const double tol = s.verify.monitor_factor * scale * (0.5 * span + traj.dx2);
      const double margin = vals[i].rhs + tol - rate;
      if (margin < rec.worst_margin) {
        rec.worst_margin = margin;
        rec.time_of_worst = samples[i].t;
        rec.observed = rate;
      }
    }
    rec.status = rec.worst_margin >= 0.0 ? CheckStatus::pass : CheckStatus::fail;
    out.push_back(rec);
  }
  return out;
}

RunResult run_scenario(const Scenario& s) {
  RunResult res;
  res.trajectory = simulate(s);
  auto& report = res.report;
  report.scenario = s.name;
  report.aborted = res.trajectory.aborted;
  report.abort_reason = res.trajectory.abort_reason;
  auto append = [&](std::vector<CheckRecord> recs) {
    report.records.insert(report.records.end(), recs.begin(), recs.end());
  };
  if (res.trajectory.samples.empty()) return res;
  if (s.controller.law == ControlLaw::general) {
    if (s.verify.regulation) append(verify_regulation(res.trajectory, s));
  } else {
    const auto& P = s.controller.params;
    if (s.verify.estimates) {
      const auto k = reaction_diffusion_constants(s.plant.pde.p, s.controller.c, P.a, P.b, P.epsilon, P.Gamma);
      append(verify_estimates(res.trajectory, s, k));
    }
    if (s.verify.monitors) append(monitor_dissipation(res.trajectory, s));
  }
  return res;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream os;
  os << 't';
  if (traj.n == 1) {
    os << ",y";
  } else {
    for (int i = 1; i <= traj.n; ++i) os << ",y" << i;
  }
  os << ",norm_w,z,u,V,Phi,U,deadzone_active";
  const bool pde = traj.law == ControlLaw::pde;
  if (pde) os << ",energy_bound";
  os << '\n';
  for (const auto& smp : traj.samples) {
    os << format_g17(smp.t);
    for (double y : smp.y) os << ',' << format_g17(y);
    for (double v : {smp.norm_w, smp.z, smp.u, smp.V, smp.Phi, smp.U}) os << ',' << format_g17(v);
    os << ',' << (smp.deadzone_active ? 1 : 0);
    if (pde) os << ',' << format_g17(smp.energy_bound);
    os << '\n';
  }
  return os.str();
}

std::string report_text(const VerificationReport& r) {
  std::ostringstream os;
  os << "scenario = " << r.scenario << '\n';
  os << "aborted = " << (r.aborted ? "true" : "false") << '\n';
  if (r.aborted) os << "abort_reason = " << r.abort_reason << '\n';
  os << "overall = " << (r.overall_pass() ? "pass" : "fail") << '\n';
  for (const auto& c : r.records) {
    const std::string key = "check." + c.id;
    os << key << ".category = " << c.category << '\n';
    os << key << ".status = " << to_string(c.status) << '\n';
    os << key << ".worst_margin = " << format_g17(c.worst_margin) << '\n';
    os << key << ".time_of_worst = " << format_g17(c.time_of_worst) << '\n';
    os << key << ".observed = " << format_g17(c.observed) << '\n';
    if (!c.note.empty()) os << key << ".note = " << c.note << '\n';
  }
  return os.str();
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << text;
  out.close();
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

}  // namespace

ExportPaths export_csv(const Trajectory& traj, const VerificationReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
  const std::string stem = report.scenario.empty() ? "scenario" : report.scenario;
  ExportPaths paths{dir / (stem + ".csv"), dir / (stem + ".report.txt")};
  write_file(paths.csv, trajectory_csv(traj));
  write_file(paths.report, report_text(report));
  return paths;
}

}  // namespace dads
