#include "parity/info/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace parity::info {

namespace {

void check_matrix_shape(const std::vector<std::vector<double>>& m, size_t rows, size_t cols,
                        const char* what) {
  if (m.size() != rows) throw std::invalid_argument(std::string(what) + ": row count mismatch");
  for (const auto& row : m)
    if (row.size() != cols) throw std::invalid_argument(std::string(what) + ": ragged matrix");
}

double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

}  // namespace

void validate(const JointDistribution& joint) {
  if (joint.labels_y.empty() || joint.labels_x.empty())
    throw std::invalid_argument("joint: empty alphabet");
  check_matrix_shape(joint.p, joint.labels_y.size(), joint.labels_x.size(), "joint");
  double total = 0.0;
  for (const auto& row : joint.p)
    for (double v : row) {
      if (v < 0.0) throw std::invalid_argument("joint: negative entry");
      total += v;
    }
  if (std::abs(total - 1.0) > kProbabilitySlack)
    throw std::invalid_argument("joint: entries do not sum to 1");
}

void validate(const Channel& channel) {
  if (channel.labels_in.empty() || channel.labels_out.empty())
    throw std::invalid_argument("channel: empty alphabet");
  check_matrix_shape(channel.q, channel.labels_in.size(), channel.labels_out.size(), "channel");
  for (const auto& row : channel.q) {
    double total = 0.0;
    for (double v : row) {
      if (v < 0.0) throw std::invalid_argument("channel: negative entry");
      total += v;
    }
    if (std::abs(total - 1.0) > kProbabilitySlack)
      throw std::invalid_argument("channel: row does not sum to 1");
  }
}

double entropy(const std::vector<double>& dist) {
  double h = 0.0;
  for (double p : dist) h -= plogp(p);
  return h;
}

std::vector<double> marginal_y(const JointDistribution& joint) {
  std::vector<double> out(joint.labels_y.size(), 0.0);
  for (size_t y = 0; y < joint.p.size(); ++y)
    for (double v : joint.p[y]) out[y] += v;
  return out;
}

std::vector<double> marginal_x(const JointDistribution& joint) {
  std::vector<double> out(joint.labels_x.size(), 0.0);
  for (const auto& row : joint.p)
    for (size_t x = 0; x < row.size(); ++x) out[x] += row[x];
  return out;
}

double joint_entropy(const JointDistribution& joint) {
  double h = 0.0;
  for (const auto& row : joint.p)
    for (double v : row) h -= plogp(v);
  return h;
}

double mutual_information(const JointDistribution& joint) {
  const std::vector<double> py = marginal_y(joint);
  const std::vector<double> px = marginal_x(joint);
  double mi = 0.0;
  for (size_t y = 0; y < joint.p.size(); ++y) {
    for (size_t x = 0; x < joint.p[y].size(); ++x) {
      const double pyx = joint.p[y][x];
      if (pyx <= 0.0) continue;
      mi += pyx * std::log2(pyx / (py[y] * px[x]));
    }
  }
  return mi;
}

double conditional_entropy(const JointDistribution& joint) {
  return joint_entropy(joint) - entropy(marginal_x(joint));
}

double bayes_error(const JointDistribution& joint) {
  double correct = 0.0;
  for (size_t x = 0; x < joint.labels_x.size(); ++x) {
    double best = 0.0;
    for (size_t y = 0; y < joint.labels_y.size(); ++y) best = std::max(best, joint.p[y][x]);
    correct += best;
  }
  return 1.0 - correct;
}

JointDistribution push_through_channel(const JointDistribution& joint, const Channel& channel) {
  if (joint.labels_x != channel.labels_in)
    throw std::invalid_argument("push_through_channel: channel input alphabet mismatch");
  JointDistribution out;
  out.labels_y = joint.labels_y;
  out.labels_x = channel.labels_out;
  out.p.assign(joint.labels_y.size(), std::vector<double>(channel.labels_out.size(), 0.0));
  for (size_t y = 0; y < joint.p.size(); ++y)
    for (size_t c = 0; c < joint.p[y].size(); ++c) {
      const double pyc = joint.p[y][c];
      if (pyc == 0.0) continue;
      for (size_t m = 0; m < channel.labels_out.size(); ++m)
        out.p[y][m] += pyc * channel.q[c][m];
    }
  validate(out);
  return out;
}

DpiReport verify_dpi(const JointDistribution& joint, const Channel& channel) {
  validate(joint);
  validate(channel);
  const JointDistribution pushed = push_through_channel(joint, channel);
  DpiReport report;
  report.i_yc = mutual_information(joint);
  report.i_ym = mutual_information(pushed);
  report.h_y_c = conditional_entropy(joint);
  report.h_y_m = conditional_entropy(pushed);
  report.pe_c = bayes_error(joint);
  report.pe_m = bayes_error(pushed);
  report.all_inequalities_hold = report.i_yc >= report.i_ym - kProbabilitySlack &&
                                 report.h_y_m >= report.h_y_c - kProbabilitySlack &&
                                 report.pe_c <= report.pe_m + kProbabilitySlack;
  return report;
}

ChainReport verify_degradation_monotone(const JointDistribution& joint,
                                        const std::vector<Channel>& chain) {
  validate(joint);
  ChainReport report;
  JointDistribution current = joint;
  report.mutual_informations.push_back(mutual_information(current));
  report.bayes_errors.push_back(bayes_error(current));
  for (const Channel& channel : chain) {
    current = push_through_channel(current, channel);
    report.mutual_informations.push_back(mutual_information(current));
    report.bayes_errors.push_back(bayes_error(current));
  }
  report.monotone = true;
  for (size_t i = 1; i < report.mutual_informations.size(); ++i) {
    if (report.mutual_informations[i] > report.mutual_informations[i - 1] + kProbabilitySlack)
      report.monotone = false;
    if (report.bayes_errors[i] < report.bayes_errors[i - 1] - kProbabilitySlack)
      report.monotone = false;
  }
  return report;
}

namespace {

std::vector<std::string> index_labels(const char* prefix, int n) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) labels.push_back(std::string(prefix) + std::to_string(i));
  return labels;
}

std::vector<double> random_simplex_point(SplitMix64& rng, size_t n) {
  std::vector<double> values(n);
  double total = 0.0;
  for (double& v : values) {
    // 1e-6 floor keeps rows clear of degenerate all-zero draws
    v = rng.next_double() + 1e-6;
    total += v;
  }
  for (double& v : values) v /= total;
  return values;
}

}  // namespace

JointDistribution random_joint(SplitMix64& rng, int max_y, int max_x) {
  if (max_y < 2 || max_x < 2) throw std::invalid_argument("random_joint: max sizes must be >= 2");
  const int ny = 2 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(max_y - 1)));
  const int nx = 2 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(max_x - 1)));
  JointDistribution joint;
  joint.labels_y = index_labels("y", ny);
  joint.labels_x = index_labels("x", nx);
  const std::vector<double> flat = random_simplex_point(rng, static_cast<size_t>(ny * nx));
  joint.p.assign(static_cast<size_t>(ny), std::vector<double>(static_cast<size_t>(nx), 0.0));
  for (int y = 0; y < ny; ++y)
    for (int x = 0; x < nx; ++x)
      joint.p[static_cast<size_t>(y)][static_cast<size_t>(x)] =
          flat[static_cast<size_t>(y * nx + x)];
  validate(joint);
  return joint;
}

Channel random_channel(SplitMix64& rng, int in_size, int max_out) {
  if (in_size < 1) throw std::invalid_argument("random_channel: need in_size >= 1");
  return random_channel(rng, index_labels("x", in_size), max_out);
}

Channel random_channel(SplitMix64& rng, std::vector<std::string> labels_in, int max_out) {
  if (labels_in.empty() || max_out < 2)
    throw std::invalid_argument("random_channel: need inputs and max_out >= 2");
  const int nout = 2 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(max_out - 1)));
  Channel channel;
  channel.labels_in = std::move(labels_in);
  channel.labels_out = index_labels("m", nout);
  channel.q.reserve(channel.labels_in.size());
  for (size_t i = 0; i < channel.labels_in.size(); ++i)
    channel.q.push_back(random_simplex_point(rng, static_cast<size_t>(nout)));
  validate(channel);
  return channel;
}

namespace {

struct MatrixFile {
  std::vector<std::string> column_labels;
  std::vector<std::string> row_labels;
  std::vector<std::vector<double>> values;
};

MatrixFile load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  MatrixFile file;
  std::string line;
  bool header_seen = false;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    std::string token;
    while (fields >> token) tokens.push_back(token);
    if (tokens.empty()) continue;
    if (!header_seen) {
      file.column_labels = tokens;
      header_seen = true;
      continue;
    }
    if (tokens.size() != file.column_labels.size() + 1)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected " +
                               std::to_string(file.column_labels.size() + 1) + " fields");
    file.row_labels.push_back(tokens[0]);
    std::vector<double> row;
    for (size_t i = 1; i < tokens.size(); ++i) {
      try {
        row.push_back(std::stod(tokens[i]));
      } catch (const std::exception&) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad number '" +
                                 tokens[i] + "'");
      }
    }
    file.values.push_back(std::move(row));
  }
  if (!header_seen) throw std::runtime_error(path + ": missing header row");
  return file;
}

void save_matrix(const std::vector<std::string>& column_labels,
                 const std::vector<std::string>& row_labels,
                 const std::vector<std::vector<double>>& values, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(17);
  for (size_t i = 0; i < column_labels.size(); ++i)
    out << (i == 0 ? "" : " ") << column_labels[i];
  out << '\n';
  for (size_t r = 0; r < row_labels.size(); ++r) {
    out << row_labels[r];
    for (double v : values[r]) out << ' ' << v;
    out << '\n';
  }
}

}  // namespace

JointDistribution load_joint(const std::string& path) {
  MatrixFile file = load_matrix(path);
  JointDistribution joint{std::move(file.row_labels), std::move(file.column_labels),
                          std::move(file.values)};
  validate(joint);
  return joint;
}

Channel load_channel(const std::string& path) {
  MatrixFile file = load_matrix(path);
  Channel channel{std::move(file.row_labels), std::move(file.column_labels),
                  std::move(file.values)};
  validate(channel);
  return channel;
}

void save_joint(const JointDistribution& joint, const std::string& path) {
  save_matrix(joint.labels_x, joint.labels_y, joint.p, path);
}

void save_channel(const Channel& channel, const std::string& path) {
  save_matrix(channel.labels_out, channel.labels_in, channel.q, path);
}

}  // namespace parity::info
