#pragma once

#include <string>
#include <vector>

#include "parity/core/rng.hpp"

namespace parity::info {

inline constexpr double kProbabilitySlack = 1e-12;

// Finite joint table p(y, x). Rows index y, columns index x.
struct JointDistribution {
  std::vector<std::string> labels_y;
  std::vector<std::string> labels_x;
  std::vector<std::vector<double>> p;
};

// Row-stochastic kernel q(out | in). Rows index the input symbol.
struct Channel {
  std::vector<std::string> labels_in;
  std::vector<std::string> labels_out;
  std::vector<std::vector<double>> q;
};

// Throw std::invalid_argument when shapes or probability invariants fail.
void validate(const JointDistribution& joint);
void validate(const Channel& channel);

// -sum p log2 p with 0 log 0 = 0.
double entropy(const std::vector<double>& dist);

std::vector<double> marginal_y(const JointDistribution& joint);
std::vector<double> marginal_x(const JointDistribution& joint);

double joint_entropy(const JointDistribution& joint);

// I(Y;X) in bits, from the definition sum p(y,x) log2 p(y,x)/(p(y)p(x)).
double mutual_information(const JointDistribution& joint);

// H(Y|X) = H(Y,X) - H(X).
double conditional_entropy(const JointDistribution& joint);

// Minimum achievable prediction error from X: 1 - sum_x max_y p(y,x). The
// MAP rule attains the infimum over all randomized estimators.
double bayes_error(const JointDistribution& joint);

// p(y,m) = sum_c p(y,c) q(m|c). The channel's input labels must match the
// joint's x labels.
JointDistribution push_through_channel(const JointDistribution& joint, const Channel& channel);

struct DpiReport {
  double i_yc = 0.0;
  double i_ym = 0.0;
  double h_y_c = 0.0;
  double h_y_m = 0.0;
  double pe_c = 0.0;
  double pe_m = 0.0;
  bool all_inequalities_hold = false;
};

// Checks I(Y;C) >= I(Y;M), H(Y|M) >= H(Y|C) and Pe(C) <= Pe(M) within the
// probability slack, where M is the joint pushed through the channel.
DpiReport verify_dpi(const JointDistribution& joint, const Channel& channel);

struct ChainReport {
  std::vector<double> mutual_informations;  // starting at the uncomposed joint
  std::vector<double> bayes_errors;
  bool monotone = false;  // I nonincreasing and Pe nondecreasing along the chain
};

ChainReport verify_degradation_monotone(const JointDistribution& joint,
                                        const std::vector<Channel>& chain);

// Seeded random instances for property suites. Alphabet sizes are drawn in
// [2, max].
JointDistribution random_joint(SplitMix64& rng, int max_y, int max_x);
Channel random_channel(SplitMix64& rng, int in_size, int max_out);
// Same, but with the input alphabet fixed (composes onto an existing joint).
Channel random_channel(SplitMix64& rng, std::vector<std::string> labels_in, int max_out);

// Plain text matrix format: optional '#' comment lines, a header row of
// column labels, then one row per y/in symbol: "<row_label> <v0> <v1> ...".
JointDistribution load_joint(const std::string& path);
Channel load_channel(const std::string& path);
void save_joint(const JointDistribution& joint, const std::string& path);
void save_channel(const Channel& channel, const std::string& path);

}  // namespace parity::info
