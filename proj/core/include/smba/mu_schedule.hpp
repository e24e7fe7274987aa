#pragma once

#include <cstdint>
#include <string>

namespace smba {

/// How the exponent r_k evolves for the blockwise schedule.
enum class ExponentRule {
  Constant,  ///< r_k = rbar
  Ramp,      ///< r_j = 0.01 + min(1, j / K) (rbar - 0.01)
};

/// Prescheduled smoothing parameters mu_k, decreasing to zero with
/// divergent half-window sums.
struct ScheduleSpec {
  enum class Variant {
    Power,      ///< mu0 (k + 1)^-r
    Blockwise,  ///< mu0 (k2 (n0 + 1) + nu0 k1 + 1)^-r_k
    RampedLog,  ///< mu0 (kbar + 1)^-r_kbar ln(kbar + 3)^-s_kbar
  };

  Variant variant = Variant::RampedLog;
  double mu0 = 1.0;
  double r = 0.5;          ///< Power exponent
  std::int64_t n0 = 300;   ///< block length minus one
  double nu0 = 1.0 / 3001.0;
  double rbar = 0.9;
  double sbar = 3.0;
  std::int64_t ramp_k = 5000;  ///< K in the ramp rules
  ExponentRule rule = ExponentRule::Constant;  ///< Blockwise only

  static ScheduleSpec power(double mu0, double r);
  static ScheduleSpec blockwise(double mu0, std::int64_t n0, double nu0, double rbar,
                                ExponentRule rule = ExponentRule::Constant,
                                std::int64_t ramp_k = 5000);
  static ScheduleSpec ramped_log(double mu0, double rbar, double sbar, std::int64_t n0 = 300,
                                 double nu0 = 1.0 / 3001.0, std::int64_t ramp_k = 5000);

  /// Throws ArgumentError when a field is out of range.
  void validate() const;
  /// Supremum of the exponent sequence.
  double exponent_sup() const;
};

std::string to_string(ScheduleSpec::Variant variant);
ScheduleSpec::Variant schedule_variant_from_string(const std::string& name);

double mu_at(const ScheduleSpec& spec, std::int64_t k);

/// S_K = sum_{k = ceil(K/2)}^{K} mu_k.
double partial_sum(const ScheduleSpec& spec, std::int64_t big_k);

/// Sum of mu_k^2 over the same window.
double partial_sum_squares(const ScheduleSpec& spec, std::int64_t big_k);

}  // namespace smba
