#include "ppe/core/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace ppe {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

// The FFTW planner is not re-entrant; plan execution on distinct arrays is.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  PlanPair get(const SpectralGrid& g) {
    const auto key = std::make_tuple(g.n1(), g.n2(), g.n3());
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    std::vector<double> real(g.size());
    std::vector<std::complex<double>> cplx(g.spectral_size());
    auto* c = reinterpret_cast<fftw_complex*>(cplx.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p;
    p.forward = fftw_plan_dft_r2c_3d(g.n1(), g.n2(), g.n3(), real.data(), c, flags);
    p.inverse = fftw_plan_dft_c2r_3d(g.n1(), g.n2(), g.n3(), c, real.data(), flags);
    plans_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, PlanPair> plans_;
};

}  // namespace

Spectrum fft_forward(const Field& f) {
  const auto& g = f.grid();
  const PlanPair plan = PlanCache::instance().get(g);
  Spectrum out(g, f.parity());
  std::vector<double> in(f.values().begin(), f.values().end());
  fftw_execute_dft_r2c(plan.forward, in.data(),
                       reinterpret_cast<fftw_complex*>(out.coeffs().data()));
  out *= 1.0 / static_cast<double>(g.size());
  return out;
}

Field fft_inverse(const Spectrum& s) {
  const auto& g = s.grid();
  const PlanPair plan = PlanCache::instance().get(g);
  // c2r overwrites its input.
  std::vector<std::complex<double>> in(s.coeffs().begin(), s.coeffs().end());
  std::vector<double> out(g.size());
  fftw_execute_dft_c2r(plan.inverse, reinterpret_cast<fftw_complex*>(in.data()), out.data());
  return Field(g, std::move(out), s.parity());
}

}  // namespace ppe
