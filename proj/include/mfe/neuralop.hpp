#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mfe/random.hpp"
#include "mfe/types.hpp"

namespace mfe {

enum class Activation { Tanh, ReLU, Identity };

std::string to_string(Activation a);
Activation activation_from_string(const std::string& s);

/// Fully connected network. `widths` lists every layer including input and
/// output; the activation applies to hidden layers only.
struct MLPSpec {
  std::vector<int> widths;
  Activation activation = Activation::Tanh;
  bool bias = true;

  /// Single matrix without bias: the linear branch option.
  static MLPSpec linear(int in, int out) { return {{in, out}, Activation::Identity, false}; }
  std::size_t parameter_count() const;
  int input_width() const { return widths.front(); }
  int output_width() const { return widths.back(); }
};

struct MIONetConfig {
  std::vector<MLPSpec> branches;
  MLPSpec trunk;
  int p = 0;        ///< latent width shared by every branch and the trunk
  int outputs = 0;  ///< 0 selects the summing head, otherwise an (outputs x p) matrix W

  void validate() const;
  int output_count() const { return outputs == 0 ? 1 : outputs; }
};

/// All weights live in one flat vector: branches in order, then the trunk,
/// then W (row-major) when present. Within a network each layer stores its
/// (out x in) row-major matrix followed by its bias.
struct MIONetParams {
  MIONetConfig config;
  std::vector<double> theta;

  std::size_t network_offset(std::size_t net) const;  ///< net == branches.size() is the trunk
  std::size_t head_offset() const;
};

std::size_t parameter_count(const MIONetConfig& config);

/// Glorot-uniform weights and zero biases drawn from a seeded generator.
MIONetParams init_mionet(const MIONetConfig& config, std::uint64_t seed);

/// Prediction at one query point, length output_count().
std::vector<double> mionet_forward(const MIONetParams& params, std::span<const std::vector<double>> branch_inputs,
                                   std::span<const double> query);

/// Training data. Samples point at a shared query set so trunk evaluations
/// can be reused; targets hold output_count() values per query.
struct OperatorSample {
  std::vector<std::vector<double>> inputs;
  int query_set = 0;
  std::vector<double> targets;
  std::vector<double> weights;  ///< one per query
};

struct OperatorDataset {
  std::string generator;
  std::uint64_t seed = 0;
  std::string basis_family;
  int basis_order = 0;
  int basis_dim = 0;
  int query_dim = 1;
  int outputs = 1;
  std::vector<std::vector<Point>> query_sets;
  std::vector<OperatorSample> samples;

  void validate() const;
  OperatorDataset subset(std::size_t begin, std::size_t end) const;
};

/// Weighted squared-error loss (1/B) sum_i sum_q w_iq |y_iq - t_iq|^2 over
/// the minibatch `batch` (sample indices), and its exact gradient.
double mionet_loss(const MIONetParams& params, const OperatorDataset& data, std::span<const std::size_t> batch);
double mionet_gradient(const MIONetParams& params, const OperatorDataset& data, std::span<const std::size_t> batch,
                       std::vector<double>& grad);

/// Predictions for one sample at every query of its set (query-major).
std::vector<double> predict_sample(const MIONetParams& params, const OperatorDataset& data, std::size_t sample);

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  long long step = 0;

  explicit AdamState(std::size_t size = 0) : m(size, 0.0), v(size, 0.0) {}
};

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

void adam_step(std::vector<double>& params, std::span<const double> grads, AdamState& state, const AdamConfig& cfg = {});

struct TrainConfig {
  AdamConfig adam;
  long long iterations = 0;
  int batch = 32;
  std::uint64_t seed = 0;
};

struct NetShape {
  std::vector<int> hidden;
  int p = 64;
  Activation activation = Activation::Tanh;
};

struct Preset {
  std::string name;
  NetShape net;
  TrainConfig train;
};

Preset desk_preset();
Preset paper_preset();
Preset preset_by_name(const std::string& name);

/// Network for a dataset: one nonlinear branch for the first input, linear
/// branches for the rest, a trunk over the query coordinates.
MIONetConfig mionet_for_dataset(const OperatorDataset& data, const NetShape& shape);

struct TrainResult {
  MIONetParams params;
  std::vector<double> loss_history;  ///< minibatch loss before each step
};

/// Adam on minibatches drawn from per-epoch shuffles. Single-threaded and
/// bit-reproducible for a given seed. Throws divergence on non-finite loss.
TrainResult train(const OperatorDataset& data, const MIONetConfig& config, const TrainConfig& cfg);

struct EvaluationReport {
  std::vector<double> per_sample;  ///< NaN for excluded samples
  double mean = 0.0;
  std::size_t excluded = 0;
};

/// Mean over samples of |pred - target|_w / |target|_w.
EvaluationReport evaluate_relative_l2(const MIONetParams& params, const OperatorDataset& data);

struct PoissonSample {
  double a = 0.0, b = 0.0, c = 0.0;
};

/// u(x) = c (x - a)(b - x) / 2 on [a,b], zero elsewhere.
inline double poisson1d_solution(const PoissonSample& s, double x) {
  return (x < s.a || x > s.b) ? 0.0 : s.c * (x - s.a) * (s.b - x) / 2.0;
}

inline constexpr int kPoissonQueries = 64;

PoissonSample draw_poisson1d(Rng& rng);
OperatorSample poisson1d_sample(const PoissonSample& s, int n);
OperatorDataset gen_poisson1d_dataset(std::size_t count, int n, std::uint64_t seed);

}  // namespace mfe
