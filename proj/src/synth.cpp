#include "nolr/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace nolr {
namespace {

constexpr double kMaxSessionHours = 24.0;
// Above one arrival per idle minute the profile stops meaning anything.
constexpr double kMaxArrivalRate = 60.0;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform [0, 1) from the top 53 bits; identical on every standard library.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double exponential(double mean) { return -std::log1p(-uniform()) * mean; }

  // Knuth's method; rates here are well below 30 per hour.
  std::size_t poisson(double mean) {
    const double limit = std::exp(-mean);
    std::size_t k = 0;
    double p = uniform();
    while (p > limit) {
      ++k;
      p *= uniform();
    }
    return k;
  }

 private:
  std::mt19937_64 engine_;
};

bool is_work_hour(int h) { return h >= 8 && h < 17; }

// Exponential mean whose 24 h truncation has the requested mean.
double untruncated_mean(double truncated_mean_hours) {
  double d = truncated_mean_hours;
  for (int i = 0; i < 50; ++i) {
    d = truncated_mean_hours / (1.0 - std::exp(-kMaxSessionHours / d));
  }
  return d;
}

double session_hours(Rng& rng, double mean_hours) {
  return std::min(rng.exponential(mean_hours), kMaxSessionHours);
}

}  // namespace

void SynthConfig::validate() const {
  if (n_stations < 2) throw std::invalid_argument("need at least 2 stations");
  if (weeks < 1) throw std::invalid_argument("need at least 1 week");
  if (!(target_occupancy > 0.0 && target_occupancy < 1.0)) {
    throw std::invalid_argument("target_occupancy must lie in (0, 1)");
  }
  if (!(mean_session_minutes > 0.0 && mean_session_minutes < kMaxSessionHours * 60.0)) {
    throw std::invalid_argument("mean_session_minutes must lie in (0, 1440)");
  }
  if (!(workhour_arrival_multiplier >= 1.0)) {
    throw std::invalid_argument("workhour_arrival_multiplier must be at least 1");
  }
  if (!(neighbor_coupling >= 0.0 && neighbor_coupling <= 1.0)) {
    throw std::invalid_argument("neighbor_coupling must lie in [0, 1]");
  }
  if (!(surge_probability > 0.0 && surge_probability <= 1.0)) {
    throw std::invalid_argument("surge_probability must lie in (0, 1]");
  }
  if (!on_hour_boundary(origin)) throw std::invalid_argument("origin must be on an hour boundary");
}

std::vector<std::string> SynthConfig::station_ids() const {
  std::vector<std::string> ids;
  const int width = n_stations >= 100 ? 3 : 2;
  for (std::size_t i = 0; i < n_stations; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "S%0*zu", width, i + 1);
    ids.emplace_back(buf);
  }
  return ids;
}

double expected_occupancy(const std::vector<double>& hourly_rates, double mean_session_hours,
                          double coupling, double surge_probability) {
  if (hourly_rates.size() != 24) throw std::invalid_argument("need 24 hourly rates");
  const double departure = 1.0 / untruncated_mean(mean_session_hours);
  // The demand factor is i.i.d. per hour: 0 with probability 1 - q, 1/q with
  // probability q. Busy-at-start is independent of the current hour's factor,
  // so each hour's transition is the q-mixture of the two constant-rate cases.
  const double q = surge_probability;
  const double factors[2] = {1.0 - coupling, 1.0 - coupling + coupling / q};
  const double weights[2] = {1.0 - q, q};

  double busy = 0.0;
  std::vector<double> at_start(24);
  for (int day = 0; day < 200; ++day) {
    for (int h = 0; h < 24; ++h) {
      at_start[h] = busy;
      double next = 0.0;
      for (int k = 0; k < 2; ++k) {
        const double lambda = hourly_rates[h] * factors[k];
        const double steady = lambda / (lambda + departure);
        next += weights[k] * (steady + (busy - steady) * std::exp(-(lambda + departure)));
      }
      busy = next;
    }
  }
  double total = 0.0;
  for (int h = 0; h < 24; ++h) {
    // An hour is free only if it starts idle and nothing arrives in it.
    double quiet = 0.0;
    for (int k = 0; k < 2; ++k) quiet += weights[k] * std::exp(-hourly_rates[h] * factors[k]);
    total += 1.0 - (1.0 - at_start[h]) * quiet;
  }
  return total / 24.0;
}

std::vector<double> calibrated_arrival_rates(const SynthConfig& config) {
  config.validate();
  const double mean_hours = config.mean_session_minutes / 60.0;
  auto rates_for = [&](double base) {
    std::vector<double> r(24);
    for (int h = 0; h < 24; ++h) r[h] = base * (is_work_hour(h) ? config.workhour_arrival_multiplier : 1.0);
    return r;
  };
  auto occupancy = [&](double base) {
    return expected_occupancy(rates_for(base), mean_hours, config.neighbor_coupling, config.surge_probability);
  };
  const double max_base = kMaxArrivalRate / config.workhour_arrival_multiplier;
  if (occupancy(max_base) < config.target_occupancy) {
    throw std::invalid_argument("target_occupancy unreachable within the arrival-rate cap");
  }
  double lo = 0.0, hi = max_base;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (occupancy(mid) < config.target_occupancy) lo = mid;
    else hi = mid;
  }
  return rates_for(0.5 * (lo + hi));
}

std::vector<EventRecord> generate(const SynthConfig& config) {
  const auto rates = calibrated_arrival_rates(config);
  const double mean_hours = untruncated_mean(config.mean_session_minutes / 60.0);
  const auto ids = config.station_ids();
  const std::size_t hours = config.hours();
  const int origin_hod = hour_of_day(config.origin);
  const double c = config.neighbor_coupling;
  const double q = config.surge_probability;

  Rng rng(config.rng_seed);

  // Shared campus demand factor per hour.
  std::vector<double> demand(hours);
  for (auto& d : demand) d = rng.uniform() < q ? 1.0 / q : 0.0;

  struct Session {
    double start;
    double end;
    std::size_t station;
  };
  std::vector<Session> sessions;
  for (std::size_t s = 0; s < config.n_stations; ++s) {
    double busy_until = -1.0;
    for (std::size_t t = 0; t < hours; ++t) {
      const double lambda = rates[(origin_hod + t) % 24] * (1.0 - c + c * demand[t]);
      const std::size_t k = rng.poisson(lambda);
      std::vector<double> offsets(k);
      for (auto& o : offsets) o = rng.uniform();
      std::sort(offsets.begin(), offsets.end());
      for (double o : offsets) {
        const double start = static_cast<double>(t) + o;
        // Arrivals at a busy station are dropped; the draw still happens so
        // the random stream does not depend on occupancy.
        const double d = session_hours(rng, mean_hours);
        if (start < busy_until) continue;
        sessions.push_back({start, start + d, s});
        busy_until = start + d;
      }
    }
  }
  std::stable_sort(sessions.begin(), sessions.end(), [](const Session& a, const Session& b) {
    return a.start < b.start || (a.start == b.start && a.station < b.station);
  });

  std::vector<EventRecord> events;
  events.reserve(sessions.size());
  for (const auto& s : sessions) {
    auto plug = config.origin + std::chrono::seconds(static_cast<std::int64_t>(std::floor(s.start * 3600.0)));
    auto unplug = config.origin + std::chrono::seconds(static_cast<std::int64_t>(std::floor(s.end * 3600.0)));
    if (unplug <= plug) unplug = plug + std::chrono::seconds(1);
    events.push_back({ids[s.station], plug, unplug});
  }
  return events;
}

OccupancyGrid generate_grid(const SynthConfig& config) {
  const auto events = generate(config);
  return discretize(events, config.origin, static_cast<std::int64_t>(config.hours()), config.station_ids());
}

}  // namespace nolr
