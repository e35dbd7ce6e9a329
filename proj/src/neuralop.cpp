#include "mfe/neuralop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "mfe/basis.hpp"
#include "mfe/encoder.hpp"
#include "mfe/error.hpp"
#include "mfe/meshes.hpp"

namespace mfe {

using Mat = Eigen::MatrixXd;
using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::string to_string(Activation a) {
  switch (a) {
    case Activation::Tanh: return "tanh";
    case Activation::ReLU: return "relu";
    case Activation::Identity: return "identity";
  }
  return "identity";
}

Activation activation_from_string(const std::string& s) {
  if (s == "tanh") return Activation::Tanh;
  if (s == "relu") return Activation::ReLU;
  if (s == "identity") return Activation::Identity;
  fail(ErrorKind::Data, "parse-error", "unknown activation '" + s + "'");
}

std::size_t MLPSpec::parameter_count() const {
  std::size_t total = 0;
  for (std::size_t l = 0; l + 1 < widths.size(); ++l)
    total += static_cast<std::size_t>(widths[l]) * widths[l + 1] + (bias ? widths[l + 1] : 0);
  return total;
}

namespace {

void check_mlp(const MLPSpec& s, const char* what) {
  if (s.widths.size() < 2) fail(ErrorKind::Usage, "width-mismatch", std::string(what) + " needs at least one layer");
  for (int w : s.widths)
    if (w < 1) fail(ErrorKind::Usage, "width-mismatch", std::string(what) + " has a non-positive width");
}

}  // namespace

void MIONetConfig::validate() const {
  if (branches.empty()) fail(ErrorKind::Usage, "width-mismatch", "MIONet needs at least one branch");
  if (p < 1) fail(ErrorKind::Usage, "width-mismatch", "latent width p must be positive");
  for (const MLPSpec& b : branches) {
    check_mlp(b, "branch");
    if (b.output_width() != p) fail(ErrorKind::Usage, "width-mismatch", "branch output width != p");
  }
  check_mlp(trunk, "trunk");
  if (trunk.output_width() != p) fail(ErrorKind::Usage, "width-mismatch", "trunk output width != p");
  if (outputs < 0) fail(ErrorKind::Usage, "width-mismatch", "negative output count");
}

std::size_t parameter_count(const MIONetConfig& config) {
  std::size_t total = config.trunk.parameter_count();
  for (const MLPSpec& b : config.branches) total += b.parameter_count();
  return total + static_cast<std::size_t>(config.outputs) * config.p;
}

std::size_t MIONetParams::network_offset(std::size_t net) const {
  std::size_t off = 0;
  for (std::size_t j = 0; j < net && j < config.branches.size(); ++j) off += config.branches[j].parameter_count();
  return off;
}

std::size_t MIONetParams::head_offset() const {
  return network_offset(config.branches.size()) + config.trunk.parameter_count();
}

MIONetParams init_mionet(const MIONetConfig& config, std::uint64_t seed) {
  config.validate();
  MIONetParams params{config, std::vector<double>(parameter_count(config), 0.0)};
  Rng rng(seed);
  std::size_t off = 0;
  auto init_net = [&](const MLPSpec& s) {
    for (std::size_t l = 0; l + 1 < s.widths.size(); ++l) {
      const int in = s.widths[l], out = s.widths[l + 1];
      const double limit = std::sqrt(6.0 / (in + out));
      for (int i = 0; i < in * out; ++i) params.theta[off++] = rng.uniform(-limit, limit);
      if (s.bias) off += out;
    }
  };
  for (const MLPSpec& b : config.branches) init_net(b);
  init_net(config.trunk);
  if (config.outputs > 0) {
    const double limit = std::sqrt(6.0 / (config.p + config.outputs));
    for (int i = 0; i < config.outputs * config.p; ++i) params.theta[off++] = rng.uniform(-limit, limit);
  }
  return params;
}

namespace {

struct MlpCache {
  std::vector<Mat> h;  // h[0] is the input, h[l] the output of layer l
};

Mat mlp_forward(const MLPSpec& s, const double* w, const Mat& x, MlpCache* cache) {
  if (x.cols() != s.input_width()) fail(ErrorKind::Usage, "width-mismatch", "network input has the wrong width");
  const std::size_t layers = s.widths.size() - 1;
  if (cache) cache->h.assign(1, x);
  Mat h = x;
  std::size_t off = 0;
  for (std::size_t l = 0; l < layers; ++l) {
    const int in = s.widths[l], out = s.widths[l + 1];
    Eigen::Map<const RowMat> W(w + off, out, in);
    off += static_cast<std::size_t>(in) * out;
    Mat z = h * W.transpose();
    if (s.bias) {
      Eigen::Map<const Eigen::RowVectorXd> b(w + off, out);
      z.rowwise() += b;
      off += out;
    }
    if (l + 1 < layers) {
      if (s.activation == Activation::Tanh) z = z.array().tanh().matrix();
      else if (s.activation == Activation::ReLU) z = z.cwiseMax(0.0);
    }
    h = std::move(z);
    if (cache) cache->h.push_back(h);
  }
  return h;
}

void mlp_backward(const MLPSpec& s, const double* w, const MlpCache& cache, Mat dout, double* g) {
  const std::size_t layers = s.widths.size() - 1;
  std::vector<std::size_t> offsets(layers);
  std::size_t off = 0;
  for (std::size_t l = 0; l < layers; ++l) {
    offsets[l] = off;
    off += static_cast<std::size_t>(s.widths[l]) * s.widths[l + 1] + (s.bias ? s.widths[l + 1] : 0);
  }
  for (std::size_t l = layers; l-- > 0;) {
    const int in = s.widths[l], out = s.widths[l + 1];
    if (l + 1 < layers) {
      const Mat& h = cache.h[l + 1];
      if (s.activation == Activation::Tanh) dout = dout.cwiseProduct((1.0 - h.array().square()).matrix());
      else if (s.activation == Activation::ReLU) dout = dout.cwiseProduct((h.array() > 0.0).cast<double>().matrix());
    }
    Eigen::Map<RowMat> gW(g + offsets[l], out, in);
    gW.noalias() += dout.transpose() * cache.h[l];
    if (s.bias) {
      Eigen::Map<Eigen::RowVectorXd> gb(g + offsets[l] + static_cast<std::size_t>(in) * out, out);
      gb += dout.colwise().sum();
    }
    if (l > 0) {
      Eigen::Map<const RowMat> W(w + offsets[l], out, in);
      dout = dout * W;
    }
  }
}

/// Entrywise product of the branch outputs. With three or more factors each
/// entry multiplies its factors in sorted order so the result does not
/// depend on the branch order.
Mat hadamard(const std::vector<Mat>& factors) {
  Mat p = factors[0];
  if (factors.size() <= 2) {
    for (std::size_t j = 1; j < factors.size(); ++j) p = p.cwiseProduct(factors[j]);
    return p;
  }
  std::vector<double> vals(factors.size());
  for (Eigen::Index c = 0; c < p.cols(); ++c)
    for (Eigen::Index r = 0; r < p.rows(); ++r) {
      for (std::size_t j = 0; j < factors.size(); ++j) vals[j] = factors[j](r, c);
      std::sort(vals.begin(), vals.end());
      double acc = vals[0];
      for (std::size_t j = 1; j < vals.size(); ++j) acc *= vals[j];
      p(r, c) = acc;
    }
  return p;
}

struct GroupPass {
  std::vector<Mat> branch_out;
  std::vector<MlpCache> branch_cache;
  Mat trunk_out;
  MlpCache trunk_cache;
  Mat product;
  std::vector<Mat> outputs;  // one (samples x queries) matrix per output component
};

Mat query_matrix(const std::vector<Point>& queries, int dim) {
  Mat q(static_cast<Eigen::Index>(queries.size()), dim);
  for (std::size_t i = 0; i < queries.size(); ++i)
    for (int j = 0; j < dim; ++j) q(static_cast<Eigen::Index>(i), j) = queries[i][j];
  return q;
}

GroupPass forward_group(const MIONetParams& params, const std::vector<Mat>& inputs, const Mat& queries, bool keep) {
  const MIONetConfig& cfg = params.config;
  if (inputs.size() != cfg.branches.size())
    fail(ErrorKind::Usage, "width-mismatch", "expected " + std::to_string(cfg.branches.size()) + " branch inputs");
  GroupPass g;
  g.branch_cache.resize(cfg.branches.size());
  std::size_t off = 0;
  for (std::size_t j = 0; j < cfg.branches.size(); ++j) {
    g.branch_out.push_back(
        mlp_forward(cfg.branches[j], params.theta.data() + off, inputs[j], keep ? &g.branch_cache[j] : nullptr));
    off += cfg.branches[j].parameter_count();
  }
  g.trunk_out = mlp_forward(cfg.trunk, params.theta.data() + off, queries, keep ? &g.trunk_cache : nullptr);
  off += cfg.trunk.parameter_count();
  g.product = hadamard(g.branch_out);
  if (cfg.outputs == 0) {
    g.outputs.push_back(g.product * g.trunk_out.transpose());
  } else {
    Eigen::Map<const RowMat> W(params.theta.data() + off, cfg.outputs, cfg.p);
    for (int k = 0; k < cfg.outputs; ++k)
      g.outputs.push_back((g.product.array().rowwise() * W.row(k).array()).matrix() * g.trunk_out.transpose());
  }
  return g;
}

std::map<int, std::vector<std::size_t>> group_by_query_set(const OperatorDataset& data,
                                                           std::span<const std::size_t> batch) {
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t i : batch) {
    if (i >= data.samples.size()) fail(ErrorKind::Usage, "index-out-of-range", "minibatch index beyond dataset");
    groups[data.samples[i].query_set].push_back(i);
  }
  return groups;
}

std::vector<Mat> stack_inputs(const OperatorDataset& data, const std::vector<std::size_t>& members,
                              std::size_t branches) {
  std::vector<Mat> inputs;
  for (std::size_t j = 0; j < branches; ++j) {
    const std::size_t width = data.samples[members.front()].inputs.at(j).size();
    Mat x(static_cast<Eigen::Index>(members.size()), static_cast<Eigen::Index>(width));
    for (std::size_t i = 0; i < members.size(); ++i) {
      const std::vector<double>& in = data.samples[members[i]].inputs.at(j);
      if (in.size() != width) fail(ErrorKind::Usage, "width-mismatch", "branch inputs differ in length");
      for (std::size_t c = 0; c < width; ++c) x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = in[c];
    }
    inputs.push_back(std::move(x));
  }
  return inputs;
}

double loss_and_gradient(const MIONetParams& params, const OperatorDataset& data, std::span<const std::size_t> batch,
                         std::vector<double>* grad) {
  if (batch.empty()) fail(ErrorKind::Usage, "empty-batch", "minibatch is empty");
  const MIONetConfig& cfg = params.config;
  const int outs = cfg.output_count();
  if (data.outputs != outs) fail(ErrorKind::Usage, "width-mismatch", "dataset output count != network outputs");
  if (grad) grad->assign(params.theta.size(), 0.0);
  const double scale = 1.0 / static_cast<double>(batch.size());
  double loss = 0.0;
  for (const auto& [qs, members] : group_by_query_set(data, batch)) {
    const Mat q = query_matrix(data.query_sets.at(static_cast<std::size_t>(qs)), data.query_dim);
    const GroupPass g = forward_group(params, stack_inputs(data, members, cfg.branches.size()), q, grad != nullptr);
    const Eigen::Index nb = static_cast<Eigen::Index>(members.size()), nq = q.rows();
    std::vector<Mat> resid(outs, Mat(nb, nq));
    for (Eigen::Index i = 0; i < nb; ++i) {
      const OperatorSample& s = data.samples[members[static_cast<std::size_t>(i)]];
      for (Eigen::Index r = 0; r < nq; ++r)
        for (int k = 0; k < outs; ++k) {
          const double e = g.outputs[k](i, r) - s.targets[static_cast<std::size_t>(r) * outs + k];
          const double w = s.weights[static_cast<std::size_t>(r)];
          loss += scale * w * e * e;
          resid[k](i, r) = 2.0 * scale * w * e;
        }
    }
    if (!grad) continue;

    Mat dP = Mat::Zero(nb, cfg.p), dT = Mat::Zero(nq, cfg.p);
    const std::size_t head = params.head_offset();
    for (int k = 0; k < outs; ++k) {
      const Mat rt = resid[k] * g.trunk_out;                // nb x p
      const Mat rp = resid[k].transpose() * g.product;      // nq x p
      if (cfg.outputs == 0) {
        dP += rt;
        dT += rp;
      } else {
        Eigen::Map<const RowMat> W(params.theta.data() + head, cfg.outputs, cfg.p);
        dP += (rt.array().rowwise() * W.row(k).array()).matrix();
        dT += (rp.array().rowwise() * W.row(k).array()).matrix();
        Eigen::Map<Eigen::RowVectorXd> gW(grad->data() + head + static_cast<std::size_t>(k) * cfg.p, cfg.p);
        gW += g.product.cwiseProduct(rt).colwise().sum();
      }
    }
    std::size_t off = 0;
    for (std::size_t j = 0; j < cfg.branches.size(); ++j) {
      Mat dB = dP;
      for (std::size_t o = 0; o < cfg.branches.size(); ++o)
        if (o != j) dB = dB.cwiseProduct(g.branch_out[o]);
      mlp_backward(cfg.branches[j], params.theta.data() + off, g.branch_cache[j], std::move(dB), grad->data() + off);
      off += cfg.branches[j].parameter_count();
    }
    mlp_backward(cfg.trunk, params.theta.data() + off, g.trunk_cache, std::move(dT), grad->data() + off);
  }
  return loss;
}

}  // namespace

std::vector<double> mionet_forward(const MIONetParams& params, std::span<const std::vector<double>> branch_inputs,
                                   std::span<const double> query) {
  const MIONetConfig& cfg = params.config;
  if (branch_inputs.size() != cfg.branches.size())
    fail(ErrorKind::Usage, "width-mismatch", "expected " + std::to_string(cfg.branches.size()) + " branch inputs");
  std::vector<Mat> inputs;
  for (std::size_t j = 0; j < branch_inputs.size(); ++j) {
    if (static_cast<int>(branch_inputs[j].size()) != cfg.branches[j].input_width())
      fail(ErrorKind::Usage, "width-mismatch", "branch " + std::to_string(j) + " input has the wrong length");
    inputs.push_back(Eigen::Map<const Eigen::RowVectorXd>(branch_inputs[j].data(),
                                                          static_cast<Eigen::Index>(branch_inputs[j].size())));
  }
  const Mat q = Eigen::Map<const Eigen::RowVectorXd>(query.data(), static_cast<Eigen::Index>(query.size()));
  const GroupPass g = forward_group(params, inputs, q, false);
  std::vector<double> out;
  for (const Mat& o : g.outputs) out.push_back(o(0, 0));
  return out;
}

void OperatorDataset::validate() const {
  if (outputs < 1) fail(ErrorKind::Data, "invalid-dataset", "output count must be positive");
  for (const std::vector<Point>& qs : query_sets)
    if (qs.empty()) fail(ErrorKind::Data, "invalid-dataset", "empty query set");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const OperatorSample& s = samples[i];
    const std::string where = "sample " + std::to_string(i) + ": ";
    if (s.query_set < 0 || static_cast<std::size_t>(s.query_set) >= query_sets.size())
      fail(ErrorKind::Data, "invalid-dataset", where + "query set index out of range");
    const std::size_t nq = query_sets[static_cast<std::size_t>(s.query_set)].size();
    if (s.weights.size() != nq || s.targets.size() != nq * static_cast<std::size_t>(outputs))
      fail(ErrorKind::Data, "invalid-dataset", where + "query and target counts disagree");
    for (double w : s.weights)
      if (!(w >= 0.0)) fail(ErrorKind::Data, "invalid-dataset", where + "negative weight");
    if (i > 0 && s.inputs.size() != samples[0].inputs.size())
      fail(ErrorKind::Data, "invalid-dataset", where + "input block count differs");
  }
}

OperatorDataset OperatorDataset::subset(std::size_t begin, std::size_t end) const {
  if (begin > end || end > samples.size()) fail(ErrorKind::Usage, "index-out-of-range", "invalid subset range");
  OperatorDataset out = *this;
  out.samples.assign(samples.begin() + static_cast<std::ptrdiff_t>(begin),
                     samples.begin() + static_cast<std::ptrdiff_t>(end));
  return out;
}

double mionet_loss(const MIONetParams& params, const OperatorDataset& data, std::span<const std::size_t> batch) {
  return loss_and_gradient(params, data, batch, nullptr);
}

double mionet_gradient(const MIONetParams& params, const OperatorDataset& data, std::span<const std::size_t> batch,
                       std::vector<double>& grad) {
  return loss_and_gradient(params, data, batch, &grad);
}

std::vector<double> predict_sample(const MIONetParams& params, const OperatorDataset& data, std::size_t sample) {
  const std::vector<std::size_t> members{sample};
  const OperatorSample& s = data.samples.at(sample);
  const Mat q = query_matrix(data.query_sets.at(static_cast<std::size_t>(s.query_set)), data.query_dim);
  const GroupPass g = forward_group(params, stack_inputs(data, members, params.config.branches.size()), q, false);
  const int outs = params.config.output_count();
  std::vector<double> out(static_cast<std::size_t>(q.rows()) * outs);
  for (Eigen::Index r = 0; r < q.rows(); ++r)
    for (int k = 0; k < outs; ++k) out[static_cast<std::size_t>(r) * outs + k] = g.outputs[k](0, r);
  return out;
}

void adam_step(std::vector<double>& params, std::span<const double> grads, AdamState& state, const AdamConfig& cfg) {
  if (grads.size() != params.size() || state.m.size() != params.size() || state.v.size() != params.size())
    fail(ErrorKind::Usage, "dimension-mismatch", "Adam state, gradient and parameters differ in size");
  ++state.step;
  const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * grads[i];
    state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * grads[i] * grads[i];
    params[i] -= cfg.lr * (state.m[i] / c1) / (std::sqrt(state.v[i] / c2) + cfg.eps);
  }
}

Preset desk_preset() {
  Preset p;
  p.name = "desk";
  p.net = {{64, 64}, 64, Activation::Tanh};
  p.train.adam.lr = 1e-3;
  p.train.iterations = 20000;
  p.train.batch = 32;
  return p;
}

Preset paper_preset() {
  Preset p;
  p.name = "paper";
  p.net = {{500, 500, 500}, 500, Activation::Tanh};
  p.train.adam.lr = 1e-5;
  p.train.iterations = 5000000;
  p.train.batch = 5;
  return p;
}

Preset preset_by_name(const std::string& name) {
  if (name == "desk") return desk_preset();
  if (name == "paper") return paper_preset();
  fail(ErrorKind::Usage, "unknown-preset", "unknown preset '" + name + "' (expected desk or paper)");
}

MIONetConfig mionet_for_dataset(const OperatorDataset& data, const NetShape& shape) {
  if (data.samples.empty()) fail(ErrorKind::Usage, "empty-dataset", "dataset has no samples");
  const OperatorSample& first = data.samples.front();
  MIONetConfig cfg;
  cfg.p = shape.p;
  cfg.outputs = data.outputs == 1 ? 0 : data.outputs;
  for (std::size_t j = 0; j < first.inputs.size(); ++j) {
    const int in = static_cast<int>(first.inputs[j].size());
    if (j == 0) {
      MLPSpec b{{in}, shape.activation, true};
      b.widths.insert(b.widths.end(), shape.hidden.begin(), shape.hidden.end());
      b.widths.push_back(shape.p);
      cfg.branches.push_back(b);
    } else {
      cfg.branches.push_back(MLPSpec::linear(in, shape.p));
    }
  }
  cfg.trunk = {{data.query_dim}, shape.activation, true};
  cfg.trunk.widths.insert(cfg.trunk.widths.end(), shape.hidden.begin(), shape.hidden.end());
  cfg.trunk.widths.push_back(shape.p);
  return cfg;
}

TrainResult train(const OperatorDataset& data, const MIONetConfig& config, const TrainConfig& cfg) {
  data.validate();
  if (data.samples.empty()) fail(ErrorKind::Usage, "empty-dataset", "dataset has no samples");
  if (cfg.batch < 1) fail(ErrorKind::Usage, "invalid-batch", "batch size must be positive");
  TrainResult result{init_mionet(config, cfg.seed), {}};
  Rng shuffle(cfg.seed ^ 0x5DEECE66DULL);
  const std::size_t n = data.samples.size();
  const std::size_t batch = std::min<std::size_t>(static_cast<std::size_t>(cfg.batch), n);
  std::vector<std::size_t> order(n);
  std::size_t cursor = n;
  AdamState state(result.params.theta.size());
  std::vector<double> grad;
  result.loss_history.reserve(static_cast<std::size_t>(std::max<long long>(cfg.iterations, 0)));
  for (long long it = 0; it < cfg.iterations; ++it) {
    if (cursor + batch > n) {
      for (std::size_t i = 0; i < n; ++i) order[i] = i;
      for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[shuffle.index(i)]);
      cursor = 0;
    }
    const std::span<const std::size_t> mb(order.data() + cursor, batch);
    cursor += batch;
    const double loss = mionet_gradient(result.params, data, mb, grad);
    if (!std::isfinite(loss))
      fail(ErrorKind::Numerical, "divergence", "loss became non-finite at iteration " + std::to_string(it));
    result.loss_history.push_back(loss);
    adam_step(result.params.theta, grad, state, cfg.adam);
  }
  return result;
}

EvaluationReport evaluate_relative_l2(const MIONetParams& params, const OperatorDataset& data) {
  EvaluationReport report;
  double total = 0.0;
  std::size_t counted = 0;
  const int outs = data.outputs;
  for (std::size_t i = 0; i < data.samples.size(); ++i) {
    const OperatorSample& s = data.samples[i];
    const std::vector<double> pred = predict_sample(params, data, i);
    double num = 0.0, den = 0.0;
    for (std::size_t r = 0; r < s.weights.size(); ++r)
      for (int k = 0; k < outs; ++k) {
        const std::size_t idx = r * outs + k;
        num += s.weights[r] * (pred[idx] - s.targets[idx]) * (pred[idx] - s.targets[idx]);
        den += s.weights[r] * s.targets[idx] * s.targets[idx];
      }
    if (std::sqrt(den) < 1e-12) {
      report.per_sample.push_back(std::numeric_limits<double>::quiet_NaN());
      ++report.excluded;
      continue;
    }
    const double rel = std::sqrt(num) / std::sqrt(den);
    report.per_sample.push_back(rel);
    total += rel;
    ++counted;
  }
  if (counted == 0)
    fail(ErrorKind::Numerical, "all-targets-degenerate", "every sample has a zero target norm");
  report.mean = total / static_cast<double>(counted);
  return report;
}

PoissonSample draw_poisson1d(Rng& rng) {
  PoissonSample s;
  for (;;) {
    double a = rng.uniform(0.05, 0.95), b = rng.uniform(0.05, 0.95);
    if (a > b) std::swap(a, b);
    if (b - a >= 0.2) {
      s.a = a;
      s.b = b;
      break;
    }
  }
  s.c = rng.uniform(-1.0, 1.0);
  return s;
}

OperatorSample poisson1d_sample(const PoissonSample& s, int n) {
  const BasisSpec basis = BasisSpec::make(Family::LegendreTensor, n, 1);
  const ManifoldFunction mf =
      ManifoldFunction::constant(meshes::segment({s.a, 0.0, 0.0}, {s.b, 0.0, 0.0}, 1, 1), s.c);
  EncodedVector ev = encode(mf, basis);
  OperatorSample out;
  out.inputs.push_back(std::move(ev.block(kShapeBlock)));
  out.inputs.push_back(std::move(ev.block(kFunctionBlock)));
  out.query_set = 0;
  const double h = 1.0 / (kPoissonQueries - 1);
  for (int j = 0; j < kPoissonQueries; ++j) {
    const double x = j * h;
    out.targets.push_back(poisson1d_solution(s, x));
    out.weights.push_back(x >= s.a && x <= s.b ? h : 0.0);
  }
  return out;
}

OperatorDataset gen_poisson1d_dataset(std::size_t count, int n, std::uint64_t seed) {
  if (count < 1) fail(ErrorKind::Usage, "invalid-count", "count must be at least 1");
  OperatorDataset data;
  data.generator = "poisson1d";
  data.seed = seed;
  data.basis_family = to_string(Family::LegendreTensor);
  data.basis_order = n;
  data.basis_dim = 1;
  data.query_dim = 1;
  data.outputs = 1;
  std::vector<Point> queries;
  for (int j = 0; j < kPoissonQueries; ++j) queries.push_back({static_cast<double>(j) / (kPoissonQueries - 1), 0.0, 0.0});
  data.query_sets.push_back(std::move(queries));
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) data.samples.push_back(poisson1d_sample(draw_poisson1d(rng), n));
  return data;
}

}  // namespace mfe
