#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "ppe/analysis/apriori.hpp"
#include "ppe/analysis/diff.hpp"
#include "ppe/analysis/energy.hpp"
#include "ppe/harness/config.hpp"

namespace ppe::harness {

/// One anisotropic member of an eps sweep, compared against the shared
/// hydrostatic trajectory.
struct SweepMember {
  double eps = 0.0;
  bool ok = true;
  std::string message;
  double last_stable_time = 0.0;
  analysis::DiffRecord diff;
  analysis::AprioriSummary apriori;
  double energy_relative_slack = 0.0;
  double energy_max_abs_slack = 0.0;
  double max_divergence = 0.0;  // relative to ||grad u||
  double max_parity = 0.0;
};

struct SweepReport {
  std::string experiment_id;
  std::string config_hash;
  bool hydro_ok = true;
  std::string hydro_message;
  double hydro_mass_defect = 0.0;     // relative slab budget defect
  double hydro_max_principle_margin = 0.0;
  bool hydro_max_principle = true;
  std::vector<SweepMember> members;   // in eps_list order
  std::map<std::string, analysis::RateFit> fits;  // by DiffRecord key
  analysis::AprioriVerdict apriori;
  bool partial = false;               // some run failed; fits use the rest

  nlohmann::json to_json() const;
  std::string summary_table() const;
  std::vector<analysis::DiffRecord> records() const;
};

/// Runs the hydrostatic system once and the anisotropic system for every
/// eps in c.eps_list (concurrently, one thread per eps), from the same
/// initial data. eps_list must hold at least three distinct values in
/// descending order. The source of each aniso run is mollified at its eps.
SweepReport cmd_sweep(const RunConfig& c);

/// Writes sweep.json, sweep.csv, summary.txt and one rate_<key>.dat per fit
/// under output_dir/experiment_id/sweep.
void write_sweep(const RunConfig& c, const SweepReport& r);

/// sup_t ||c^mu - c^0||_{L2} for every mu in c.mu_list (hydro runs).
struct MuSweepReport {
  std::vector<double> mu;
  std::vector<double> distance;
  bool ok = true;
  bool strictly_decreasing = false;
  bool max_principle = true;
  nlohmann::json to_json() const;
};
MuSweepReport cmd_mu_sweep(const RunConfig& c);

/// Energy slack of one aniso run at dt, dt/2, ..., (levels runs).
struct DtStudy {
  std::vector<double> dt;
  std::vector<analysis::EnergyBudget> budgets;
  analysis::SlackOrder order;
  nlohmann::json to_json() const;
};
DtStudy energy_dt_study(const RunConfig& c, int levels = 3);

}  // namespace ppe::harness
