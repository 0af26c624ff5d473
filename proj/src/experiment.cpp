#include "terascope/experiment.hpp"

#include <cmath>
#include <ctime>
#include <optional>
#include <ostream>
#include <sstream>

#include "terascope/coverage.hpp"
#include "terascope/sim.hpp"

namespace terascope {

namespace {

std::string utc_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void apply_sweep(ConfigParams& cfg, double& x0, SweepVariable variable,
                 double value) {
  switch (variable) {
    case SweepVariable::x0: x0 = value; break;
    case SweepVariable::tau_dB: cfg.tau_dB = value; break;
    case SweepVariable::lambda_A: cfg.lambda_A = value; break;
    case SweepVariable::lambda_B: cfg.lambda_B = value; break;
    case SweepVariable::G_A_dBi: cfg.G_A_dBi = value; break;
    case SweepVariable::G_U_dBi: cfg.G_U_dBi = value; break;
  }
}

std::uint64_t mode_hits(const CoverageTally& tally, RunMode mode,
                        bool los_conditioned, bool snr_ok) {
  switch (mode) {
    case RunMode::mc_full:
      return los_conditioned ? tally.full_given_los : tally.full;
    case RunMode::mc_interference_only:
      // The mode already ignores every blockage check, tagged link included.
      return tally.interference_only;
    case RunMode::mc_blockage_only:
      return los_conditioned ? (snr_ok ? tally.n_trials : 0)
                             : tally.blockage_only;
    case RunMode::mc_dominant_only:
      return los_conditioned ? tally.dominant_only_given_los
                             : tally.dominant_only;
    case RunMode::analytic: break;
  }
  return 0;
}

}  // namespace

CoverageCurve run_experiment(const ExperimentSpec& spec, int threads) {
  CoverageCurve curve;
  curve.spec = spec;
  curve.tool_version = spec.version;
  curve.seed = spec.base_seed;
  curve.timestamp = utc_now();
  curve.rows.reserve(spec.values.size());

  for (double value : spec.values) {
    ConfigParams cfg = spec.params;
    double x0 = spec.x0;
    apply_sweep(cfg, x0, spec.sweep, value);
    const SystemParams p = cfg.to_system_params();

    CurveRow row;
    row.abscissa = value;
    std::optional<DerivedParams> derived;
    try {
      derived = derive_params(p);
    } catch (const infeasible_geometry&) {
      // The threshold is unreachable at any distance: every mode's coverage
      // probability is 0 at this sweep point.
    }
    bool infeasible = !derived.has_value();
    bool out_of_association = false;
    bool snr_ok = false;
    if (derived) {
      snr_ok = received_power(p, x0) >= p.tau * p.sigma2;
      infeasible = !snr_ok;
      out_of_association = x0 > derived->r_t;
    }

    std::optional<CoverageTally> tally;
    for (RunMode mode : spec.modes) {
      double v = 0.0;
      double hw = 0.0;
      if (mode == RunMode::analytic) {
        if (derived) {
          const CoverageResult c = coverage(p, *derived, x0);
          v = spec.los_conditioned ? c.p_cL : c.p_c;
        }
      } else if (derived) {
        if (!tally) {
          tally = tally_coverage(p, x0, spec.n_trials, spec.base_seed, threads);
        }
        const std::uint64_t hits =
            mode_hits(*tally, mode, spec.los_conditioned, snr_ok);
        const double n = static_cast<double>(spec.n_trials);
        v = static_cast<double>(hits) / n;
        hw = 1.96 * std::sqrt(v * (1.0 - v) / n);
      }
      row.values.push_back(v);
      row.half_widths.push_back(hw);
    }
    if (infeasible) row.note = "snr-infeasible";
    if (out_of_association) {
      if (!row.note.empty()) row.note += ";";
      row.note += "out-of-association";
    }
    curve.rows.push_back(std::move(row));
  }
  return curve;
}

std::size_t emit_csv(const CoverageCurve& curve, std::ostream& out) {
  std::ostringstream buf;
  {
    std::istringstream preamble(serialize_spec(curve.spec));
    std::string line;
    while (std::getline(preamble, line)) buf << "# " << line << '\n';
  }
  buf << "abscissa";
  for (RunMode mode : curve.spec.modes) {
    buf << ',' << to_string(mode) << "_p," << to_string(mode) << "_hw";
  }
  buf << ",note\n";
  for (const CurveRow& row : curve.rows) {
    buf << format_double(row.abscissa);
    for (std::size_t i = 0; i < row.values.size(); ++i) {
      buf << ',' << format_double(row.values[i]) << ','
          << format_double(row.half_widths[i]);
    }
    buf << ',' << row.note << '\n';
  }
  const std::string text = buf.str();
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  return text.size();
}

std::string csv_string(const CoverageCurve& curve) {
  std::ostringstream out;
  emit_csv(curve, out);
  return out.str();
}

}  // namespace terascope
