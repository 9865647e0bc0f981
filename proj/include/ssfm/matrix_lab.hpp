// Copyright 2026 The ssfmlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SSFM_MATRIX_LAB_HPP
#define SSFM_MATRIX_LAB_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ssfm/channel.hpp"
#include "ssfm/config.hpp"
#include "ssfm/parallel.hpp"
#include "ssfm/spectral.hpp"

namespace ssfm {

/// g(w, n) = 2 (n-1) w (1 - w^2)^{n-2}: density of |U_11| for Haar U in U(n).
double haar_entry_marginal_pdf(double w, std::size_t n);
/// 1 - (1 - w^2)^{n-1}
double haar_entry_marginal_cdf(double w, std::size_t n);
/// Density of w_l = |U_l1| given w_1 .. w_{l-1}, with l = previous.size() + 1.
double haar_conditional_pdf(double w, std::span<const double> previous, std::size_t n);

/// sup_x |F_N(x) - F(x)|. Throws ConfigError for fewer than 100 samples.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);
/// sup_x |F_a(x) - F_b(x)| between two empirical CDFs.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Binned samples. Values outside [edges.front(), edges.back()] land in the
/// first or last bin, so counts always sum to the sample count.
class EmpiricalDistribution {
 public:
  EmpiricalDistribution(std::vector<double> samples, std::vector<double> edges);
  static EmpiricalDistribution uniform_bins(std::vector<double> samples, double lo, double hi,
                                            std::size_t bins);

  const std::vector<double>& samples() const noexcept { return samples_; }
  const std::vector<double>& edges() const noexcept { return edges_; }
  const std::vector<std::size_t>& counts() const noexcept { return counts_; }
  std::size_t bins() const noexcept { return counts_.size(); }
  double center(std::size_t bin) const { return 0.5 * (edges_[bin] + edges_[bin + 1]); }
  /// counts / (N * width)
  double density(std::size_t bin) const;
  /// Fraction of samples strictly above x.
  double fraction_above(double x) const;

 private:
  std::vector<double> samples_;
  std::vector<double> edges_;
  std::vector<std::size_t> counts_;
};

/// Haar-distributed unitary from the QR factorization of a complex Ginibre
/// matrix, with R's diagonal phases folded into Q.
Eigen::MatrixXcd haar_unitary(std::size_t n, RngStream& rng);

/// |(M_K)_11| over independent trials; trial t uses stream (seed, t).
std::vector<double> first_entry_magnitudes(const DispersionProfile& profile, std::size_t trials,
                                           std::uint64_t seed,
                                           Execution exec = Execution::parallel);

/// Deterministic per-bin phases in (0, pi/3] for fixed-D experiments; a
/// generic spectrum, so D is not block diagonal.
std::vector<double> generic_fixed_dispersion(std::size_t n, std::uint64_t seed);

struct DecayFitOptions {
  std::size_t bootstrap = 200;
  std::uint64_t seed = 1;
  Execution exec = Execution::parallel;
};

struct DecayFit {
  std::vector<std::size_t> K;
  std::vector<double> median;  ///< median over trials of max off-diagonal |M_ij|
  double slope = 0.0;          ///< d ln(median) / d ln K
  double intercept = 0.0;
  double slope_stderr = 0.0;   ///< bootstrap over trials
  bool degenerate = false;     ///< some median is 0; slope is NaN
};

/// Least-squares slope of ln(median max off-diagonal of M_K) against ln K.
/// cfg should be in finite-dispersion mode with n <= 32; needs >= 3 values of K.
DecayFit offdiag_decay_fit(const ChannelConfig& cfg, std::span<const std::size_t> K_values,
                           std::size_t trials, const DecayFitOptions& options = {});

enum class UpsilonVariant {
  single,       ///< tail sums of Phi_{s,1}
  difference,   ///< tail sums of Phi_{s,1} - Phi_{s,2}
};

enum class PowerNormalization {
  launch,        ///< input power per sample is P
  path_average,  ///< P scaled by 1/eta so the power averaged along the fiber is P
};

struct UpsilonOptions {
  /// P = power_reference * K^delta. 1 in normalized units.
  double power_reference = 1.0;
  PowerNormalization normalization = PowerNormalization::launch;
  UpsilonVariant variant = UpsilonVariant::single;
  std::uint64_t seed = 1;
  Execution exec = Execution::parallel;
};

struct UpsilonEstimate {
  double delta = 0.0;
  std::size_t K = 0;
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  double iqr() const { return q75 - q25; }
  std::vector<double> values;  ///< per trial, in trial order
};

/// -ln|(1/K) sum_i e^{j S_i}| / ln K with S_i = sum_{s=i..K} Phi_s.
double upsilon_from_trace(const SegmentTrace& trace, UpsilonVariant variant);

/// Per-trial upsilon for inputs x_l = sqrt(P/1.5) (U(0,1) + 0.7). Throws
/// ConfigError for K < 100.
UpsilonEstimate convergence_rate_upsilon(const ChannelConfig& cfg, double delta,
                                         std::size_t trials, const UpsilonOptions& options = {});

/// Linear-interpolated quantile of unsorted data, q in [0, 1].
double quantile(std::vector<double> values, double q);

}  // namespace ssfm

#endif  // SSFM_MATRIX_LAB_HPP
