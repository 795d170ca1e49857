// Acceptance criteria 1-9 at the default configuration. Prints one line per
// criterion and exits nonzero when any of them fails.
#include <fmt/format.h>

#include <cmath>
#include <functional>
#include <iostream>

#include "ppe/harness/check.hpp"
#include "ppe/harness/sweep.hpp"

using namespace ppe;
using namespace ppe::harness;
using nlohmann::json;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << fmt::format("criterion {} [{}] {}: {}", id, pass ? "PASS" : "FAIL", title, detail) << std::endl;
}

std::string describe(const json& bundle) {
  std::string s;
  for (const auto& c : bundle["checks"]) {
    if (!s.empty()) s += ", ";
    s += fmt::format("{}={:.4g}{}", c["name"].get<std::string>(), c["value"].get<double>(),
                     c["pass"].get<bool>() ? "" : " (fail)");
  }
  return s;
}

}  // namespace

int main() {
  RunConfig base;
  base.experiment_id = "acceptance";

  const SweepReport sw = cmd_sweep(base);
  std::cout << sw.summary_table() << std::flush;

  {
    const auto it = sw.fits.find("sup_Uh_l2");
    const bool ok = !sw.partial && it != sw.fits.end() && it->second.slope >= 0.8 && it->second.r_squared >= 0.95;
    report(1, "velocity eps-rate", ok,
           it == sw.fits.end() ? "no fit"
                               : fmt::format("slope {:.4f} (>= 0.8), r^2 {:.4f} (>= 0.95)", it->second.slope,
                                             it->second.r_squared));
  }
  {
    const auto it = sw.fits.find("sup_C_h1");
    bool monotone = !sw.partial;
    for (std::size_t i = 1; i < sw.members.size(); ++i) {
      monotone = monotone && sw.members[i].diff.int_gradd_C_h1 < sw.members[i - 1].diff.int_gradd_C_h1;
    }
    const bool ok = it != sw.fits.end() && it->second.slope >= 0.8 && monotone;
    report(2, "concentration eps-rate", ok,
           fmt::format("slope {:.4f} (>= 0.8), int_gradd_C_h1 decreasing with eps: {}",
                       it == sw.fits.end() ? NAN : it->second.slope, monotone ? "yes" : "no"));
  }
  {
    bool ok = true;
    double worst_slack = 0.0, worst_ratio = INFINITY;
    for (const auto& m : sw.members) {
      ok = ok && m.ok && m.energy_relative_slack <= 1e-3;
      worst_slack = std::max(worst_slack, m.energy_relative_slack);
    }
    for (double eps : {sw.members.front().eps, sw.members.back().eps}) {
      RunConfig c = base;
      c.params.eps = eps;
      const DtStudy st = energy_dt_study(c, 3);
      ok = ok && st.order.min_ratio >= 4.0;
      worst_ratio = std::min(worst_ratio, st.order.min_ratio);
    }
    report(3, "energy inequality", ok,
           fmt::format("max relative positive slack {:.3e} (<= 1e-3), min slack ratio per dt halving {:.3f} (>= 4)",
                       worst_slack, worst_ratio));
  }
  {
    double worst = 0.0;
    for (double r : sw.apriori.ratio) worst = std::max(worst, r);
    report(4, "a priori uniformity", sw.apriori.pass && !sw.partial,
           fmt::format("max ratio small-eps / large-eps group {:.4f} (<= 1.5)", worst));
  }
  {
    RunConfig shortc = base;
    shortc.ctrl.t_end = 0.1;
    double div = 0.0, par = 0.0;
    for (const auto& m : sw.members) {
      div = std::max(div, m.max_divergence);
      par = std::max(par, m.max_parity);
    }
    const json cor = cmd_check("coriolis", base);
    const json parity = cmd_check("parity", shortc);
    const json moll = cmd_check("mollifier", base);
    const json budget = cmd_check("budget", shortc);
    const bool ok = div <= 1e-10 && par <= 1e-10 && cor["pass"] && parity["pass"] && moll["pass"] && budget["pass"];
    report(5, "structural exactness", ok,
           fmt::format("sweep divergence {:.2e}, sweep parity {:.2e}; {}; {}; {}; {}", div, par, describe(cor),
                       describe(parity), describe(moll), describe(budget)));
  }
  const MuSweepReport mu = cmd_mu_sweep(base);
  {
    const json mp = cmd_check("max_principle", base);
    const bool ok = sw.hydro_max_principle && mu.max_principle && mp["pass"].get<bool>();
    report(6, "maximum principle", ok,
           fmt::format("sweep hydro margin {:.4g}, mu runs {}; {}", sw.hydro_max_principle_margin,
                       mu.max_principle ? "hold" : "violated", describe(mp)));
  }
  {
    std::string d;
    for (std::size_t i = 0; i < mu.mu.size(); ++i) d += fmt::format("{}mu={}: {:.4e}", i ? ", " : "", mu.mu[i], mu.distance[i]);
    report(7, "mu-regularisation limit", mu.ok && mu.strictly_decreasing, d + " (strictly decreasing)");
  }
  {
    const json mms = cmd_check("mms", base);
    report(8, "manufactured solutions", mms["pass"].get<bool>(), describe(mms));
  }
  {
    const json lz = cmd_check("ladyzhenskaya", base);
    report(9, "trilinear inequality form", lz["pass"].get<bool>(), describe(lz));
  }
  std::cout << fmt::format("{} of 9 criteria passed", 9 - failures) << std::endl;
  return failures == 0 ? 0 : 1;
}
