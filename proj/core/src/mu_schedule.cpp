#include "smba/mu_schedule.hpp"

#include <algorithm>
#include <cmath>

#include "smba/errors.hpp"

namespace smba {
namespace {

double ramp_r(double rbar, double j, std::int64_t big_k) {
  return 0.01 + std::min(1.0, j / static_cast<double>(big_k)) * (rbar - 0.01);
}

double ramp_s(double sbar, double j, std::int64_t big_k) {
  return std::min(1.0, j / static_cast<double>(big_k)) * sbar;
}

// kbar = k2 (n0 + 1) + nu0 k1 with k = k2 (n0 + 1) + k1, 0 <= k1 <= n0.
double block_index(const ScheduleSpec& spec, std::int64_t k) {
  const std::int64_t block = spec.n0 + 1;
  const std::int64_t k2 = k / block;
  const std::int64_t k1 = k % block;
  return static_cast<double>(k2 * block) + spec.nu0 * static_cast<double>(k1);
}

}  // namespace

ScheduleSpec ScheduleSpec::power(double mu0, double r) {
  ScheduleSpec s;
  s.variant = Variant::Power;
  s.mu0 = mu0;
  s.r = r;
  s.validate();
  return s;
}

ScheduleSpec ScheduleSpec::blockwise(double mu0, std::int64_t n0, double nu0, double rbar,
                                     ExponentRule rule, std::int64_t ramp_k) {
  ScheduleSpec s;
  s.variant = Variant::Blockwise;
  s.mu0 = mu0;
  s.n0 = n0;
  s.nu0 = nu0;
  s.rbar = rbar;
  s.rule = rule;
  s.ramp_k = ramp_k;
  s.validate();
  return s;
}

ScheduleSpec ScheduleSpec::ramped_log(double mu0, double rbar, double sbar, std::int64_t n0,
                                      double nu0, std::int64_t ramp_k) {
  ScheduleSpec s;
  s.variant = Variant::RampedLog;
  s.mu0 = mu0;
  s.rbar = rbar;
  s.sbar = sbar;
  s.n0 = n0;
  s.nu0 = nu0;
  s.ramp_k = ramp_k;
  s.validate();
  return s;
}

void ScheduleSpec::validate() const {
  if (!(mu0 > 0.0) || !std::isfinite(mu0)) throw ArgumentError("schedule: mu0 must be positive");
  switch (variant) {
    case Variant::Power:
      if (!(r > 0.0 && r < 1.0)) throw ArgumentError("schedule: r must lie in (0, 1)");
      return;
    case Variant::Blockwise:
    case Variant::RampedLog:
      if (!(rbar > 0.01 && rbar < 1.0)) throw ArgumentError("schedule: rbar must lie in (0.01, 1)");
      if (!(nu0 > 0.0 && nu0 <= 1.0)) throw ArgumentError("schedule: nu0 must lie in (0, 1]");
      if (n0 < 0) throw ArgumentError("schedule: n0 must be nonnegative");
      if (ramp_k < 1) throw ArgumentError("schedule: ramp length K must be >= 1");
      if (variant == Variant::RampedLog && !(sbar >= 0.0 && std::isfinite(sbar))) {
        throw ArgumentError("schedule: sbar must be nonnegative");
      }
      return;
  }
}

double ScheduleSpec::exponent_sup() const { return variant == Variant::Power ? r : rbar; }

std::string to_string(ScheduleSpec::Variant variant) {
  switch (variant) {
    case ScheduleSpec::Variant::Power: return "power";
    case ScheduleSpec::Variant::Blockwise: return "blockwise";
    case ScheduleSpec::Variant::RampedLog: return "ramped_log";
  }
  return "unknown";
}

ScheduleSpec::Variant schedule_variant_from_string(const std::string& name) {
  if (name == "power") return ScheduleSpec::Variant::Power;
  if (name == "blockwise") return ScheduleSpec::Variant::Blockwise;
  if (name == "ramped_log") return ScheduleSpec::Variant::RampedLog;
  throw ArgumentError("unknown schedule variant '" + name + "'");
}

double mu_at(const ScheduleSpec& spec, std::int64_t k) {
  if (k < 0) throw ArgumentError("mu_at: k must be nonnegative");
  spec.validate();
  if (k == 0) return spec.mu0;
  switch (spec.variant) {
    case ScheduleSpec::Variant::Power:
      return spec.mu0 * std::pow(static_cast<double>(k) + 1.0, -spec.r);
    case ScheduleSpec::Variant::Blockwise: {
      const double rk = spec.rule == ExponentRule::Constant
                            ? spec.rbar
                            : ramp_r(spec.rbar, static_cast<double>(k), spec.ramp_k);
      return spec.mu0 * std::pow(block_index(spec, k) + 1.0, -rk);
    }
    case ScheduleSpec::Variant::RampedLog: {
      const double kbar = block_index(spec, k);
      const double rk = ramp_r(spec.rbar, kbar, spec.ramp_k);
      const double sk = ramp_s(spec.sbar, kbar, spec.ramp_k);
      return spec.mu0 * std::pow(kbar + 1.0, -rk) * std::pow(std::log(kbar + 3.0), -sk);
    }
  }
  return spec.mu0;
}

double partial_sum(const ScheduleSpec& spec, std::int64_t big_k) {
  if (big_k < 0) throw ArgumentError("partial_sum: K must be nonnegative");
  double sum = 0.0;
  for (std::int64_t k = (big_k + 1) / 2; k <= big_k; ++k) sum += mu_at(spec, k);
  return sum;
}

double partial_sum_squares(const ScheduleSpec& spec, std::int64_t big_k) {
  if (big_k < 0) throw ArgumentError("partial_sum_squares: K must be nonnegative");
  double sum = 0.0;
  for (std::int64_t k = (big_k + 1) / 2; k <= big_k; ++k) {
    const double mu = mu_at(spec, k);
    sum += mu * mu;
  }
  return sum;
}

}  // namespace smba
