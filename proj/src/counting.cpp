#include "gwdk/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "gwdk/constants.hpp"
#include "gwdk/error.hpp"

namespace gwdk {
namespace {

// Uniform on the open interval (0, 1): midpoints of 2^52 equal cells.
double open_uniform(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 12) + 0.5) * 0x1.0p-52;
}

void push_increasing(std::vector<double>& times, double t) {
  if (!times.empty() && t <= times.back()) {
    t = std::nextafter(times.back(), std::numeric_limits<double>::infinity());
  }
  times.push_back(t);
}

}  // namespace

WaitTimeModel::WaitTimeModel(double rate) : rate_(rate) {
  require(std::isfinite(rate) && rate >= 0.0, "click rate must be finite and >= 0");
}

WaitTimeModel WaitTimeModel::from_rate_product(double rate_product) {
  return WaitTimeModel(rate_product / 4.0);
}

double WaitTimeModel::pdf(double tau) const {
  require(tau >= 0.0, "wait time must be non-negative");
  return rate_ * std::exp(-rate_ * tau);
}

double WaitTimeModel::cdf(double tau) const {
  require(tau >= 0.0, "wait time must be non-negative");
  return -std::expm1(-rate_ * tau);
}

double WaitTimeModel::mean() const {
  return rate_ > 0.0 ? 1.0 / rate_ : std::numeric_limits<double>::infinity();
}

ClickStream sample_click_stream(const WaitTimeModel& model, double duration,
                                std::uint64_t seed) {
  require(duration > 0.0 && std::isfinite(duration), "stream duration must be positive");
  ClickStream stream{seed, model.rate(), duration, {}};
  if (model.rate() == 0.0) return stream;
  stream.times.reserve(static_cast<std::size_t>(
      std::min(model.rate() * duration * 1.1 + 16.0, 1e8)));
  std::mt19937_64 rng(seed);
  double t = 0.0;
  for (;;) {
    t += -std::log(open_uniform(rng)) / model.rate();
    if (t > duration) break;
    push_increasing(stream.times, t);
  }
  if (!stream.times.empty() && stream.times.back() > duration) stream.times.pop_back();
  return stream;
}

ClickStream superpose(const ClickStream& a, const ClickStream& b) {
  require(a.duration == b.duration, "superposed streams must share a duration");
  ClickStream out{a.seed, a.rate + b.rate, a.duration, {}};
  std::vector<double> merged;
  merged.reserve(a.times.size() + b.times.size());
  std::merge(a.times.begin(), a.times.end(), b.times.begin(), b.times.end(),
             std::back_inserter(merged));
  out.times.reserve(merged.size());
  for (double t : merged) push_increasing(out.times, t);
  while (!out.times.empty() && out.times.back() > out.duration) out.times.pop_back();
  return out;
}

double rate_product_ifo(const IfoParams& p, double h0, double omega0) {
  p.validate();
  require(h0 >= 0.0 && omega0 > 0.0, "rate product needs h0 >= 0 and Omega0 > 0");
  return units::pi * units::pi * p.kappa * p.alpha_sq * p.omega_opt * p.omega_opt * h0 * h0 /
         (4.0 * (p.kappa * p.kappa + omega0 * omega0));
}

double rate_product_bar(const BarParams& p, double h0, double omega0) {
  p.validate();
  require(h0 >= 0.0 && omega0 > 0.0, "rate product needs h0 >= 0 and Omega0 > 0");
  return 8.0 * p.g * p.g * p.mass * p.length * p.length * std::pow(omega0, 4) * h0 * h0 /
         (units::pi * kCodata.hbar * p.kappa * p.omega_m * p.gamma_m * p.gamma_m);
}

}  // namespace gwdk
