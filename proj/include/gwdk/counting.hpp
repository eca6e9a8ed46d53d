#pragma once

#include <cstdint>
#include <vector>

#include "gwdk/bar.hpp"
#include "gwdk/ifo.hpp"

namespace gwdk {

/// Exponential wait-time law r exp(-r tau) of a counter driven by a
/// coherent state, with r = (eta / 4) |a|^2.
class WaitTimeModel {
 public:
  explicit WaitTimeModel(double rate);

  /// r = rate_product / 4, where rate_product = eta |a|^2.
  static WaitTimeModel from_rate_product(double rate_product);

  double rate() const { return rate_; }
  double pdf(double tau) const;
  double cdf(double tau) const;
  /// 1 / r; infinite when r = 0.
  double mean() const;

 private:
  double rate_;
};

struct ClickStream {
  std::uint64_t seed;
  double rate;
  double duration;
  std::vector<double> times;
};

/// Seeded Poisson click train on [0, duration]. The generator is
/// std::mt19937_64; each wait is -log(u) / r with u uniform on (0, 1) built
/// from the top 52 bits of one draw.
ClickStream sample_click_stream(const WaitTimeModel& model, double duration,
                                std::uint64_t seed);

/// Merges two streams over the same duration into one strictly increasing
/// train whose rate is the sum of the two.
ClickStream superpose(const ClickStream& a, const ClickStream& b);

/// eta_ifo |a|^2 = pi^2 kappa alpha^2 omega_0^2 h0^2 / (4 (kappa^2 + Omega0^2)).
double rate_product_ifo(const IfoParams& p, double h0, double omega0);

/// eta_bar |a|^2 = 8 g^2 M L^2 Omega0^4 h0^2 / (pi hbar kappa omega_m gamma_m^2).
double rate_product_bar(const BarParams& p, double h0, double omega0);

}  // namespace gwdk
