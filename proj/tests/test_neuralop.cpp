#include <doctest.h>

#include <cmath>

#include "mfe/neuralop.hpp"
#include "mfe/random.hpp"
#include "net_checks.hpp"
#include "oracles.hpp"

using namespace mfe;

namespace {

std::vector<std::size_t> all_indices(const OperatorDataset& d) {
  std::vector<std::size_t> b(d.samples.size());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = i;
  return b;
}

// Copy of `params` whose branch networks are reordered by `order`.
MIONetParams permute_branches(const MIONetParams& params, const std::vector<std::size_t>& order) {
  MIONetParams out = params;
  out.config.branches.clear();
  out.theta.clear();
  for (std::size_t b : order) {
    out.config.branches.push_back(params.config.branches[b]);
    const std::size_t begin = params.network_offset(b);
    const std::size_t end = begin + params.config.branches[b].parameter_count();
    out.theta.insert(out.theta.end(), params.theta.begin() + begin, params.theta.begin() + end);
  }
  out.theta.insert(out.theta.end(), params.theta.begin() + params.network_offset(params.config.branches.size()),
                   params.theta.end());
  return out;
}

}  // namespace

TEST_CASE("network layout") {
  const MLPSpec s{{3, 5, 2}, Activation::Tanh, true};
  CHECK(s.parameter_count() == 3 * 5 + 5 + 5 * 2 + 2);
  CHECK(MLPSpec::linear(4, 6).parameter_count() == 24);
  MIONetConfig c{{s, MLPSpec::linear(4, 2)}, {{1, 2}, Activation::Tanh, true}, 2, 3};
  CHECK(parameter_count(c) == s.parameter_count() + 8 + 4 + 6);
  const MIONetParams p = init_mionet(c, 1);
  CHECK(p.theta.size() == parameter_count(c));
  CHECK(p.network_offset(1) == s.parameter_count());
  CHECK(p.head_offset() == parameter_count(c) - 6);
  MIONetConfig bad = c;
  bad.trunk = {{1, 3}, Activation::Tanh, true};
  CHECK(throws_code([&] { bad.validate(); }, "width-mismatch"));
  CHECK(activation_from_string(to_string(Activation::ReLU)) == Activation::ReLU);
  CHECK(throws_code([] { activation_from_string("gelu"); }, "parse-error"));
  // Biases start at zero; weights are Glorot-bounded.
  const double limit = std::sqrt(6.0 / (3 + 5));
  for (int i = 0; i < 15; ++i) CHECK(std::abs(p.theta[i]) <= limit);
  for (int i = 15; i < 20; ++i) CHECK(p.theta[i] == 0.0);
  CHECK(init_mionet(c, 1).theta == p.theta);
  CHECK(init_mionet(c, 2).theta != p.theta);
}

TEST_CASE("mionet_forward examples") {
  Rng rng(3);
  const MIONetConfig c = netcheck::varied_config(0);
  MIONetParams p = netcheck::random_params(c, rng);
  const std::vector<std::vector<double>> inputs{{0.2, -0.4}};
  const std::vector<double> q{0.3};
  SUBCASE("matches the independent implementation") {
    for (int i = 0; i < 12; ++i) {
      const MIONetConfig ci = netcheck::varied_config(i);
      const MIONetParams pi = netcheck::random_params(ci, rng);
      const OperatorDataset d = netcheck::random_dataset(ci, rng, 1, 1);
      const std::vector<double> query(d.query_sets[0][0].begin(), d.query_sets[0][0].begin() + d.query_dim);
      const std::vector<double> y = mionet_forward(pi, d.samples[0].inputs, query);
      const std::vector<double> ref = netcheck::naive_forward(pi, d.samples[0].inputs, query);
      REQUIRE(y.size() == ref.size());
      for (std::size_t k = 0; k < y.size(); ++k) CHECK(std::abs(y[k] - ref[k]) < 1e-12 * std::max(1.0, std::abs(ref[k])));
    }
  }
  SUBCASE("a zero branch annihilates the prediction") {
    const std::size_t last = c.branches[0].parameter_count();
    const std::size_t out_block = c.p * c.branches[0].widths[1] + c.p;
    std::fill(p.theta.begin() + (last - out_block), p.theta.begin() + last, 0.0);
    CHECK(mionet_forward(p, inputs, q)[0] == 0.0);
  }
  SUBCASE("all-ones branch sums the trunk") {
    MIONetConfig c1{{{{2, c.p}, Activation::Identity, true}}, c.trunk, c.p, 0};
    MIONetParams p1 = netcheck::random_params(c1, rng);
    std::fill(p1.theta.begin(), p1.theta.begin() + 2 * c.p, 0.0);
    std::fill(p1.theta.begin() + 2 * c.p, p1.theta.begin() + 3 * c.p, 1.0);
    const std::vector<double> t =
        netcheck::naive_mlp(c1.trunk, p1.theta.data() + p1.network_offset(1), std::vector<double>(q));
    double sum = 0.0;
    for (double v : t) sum += v;
    CHECK(mionet_forward(p1, inputs, q)[0] == doctest::Approx(sum).epsilon(1e-14));
  }
  SUBCASE("width errors") {
    const std::vector<std::vector<double>> wrong{{0.2, -0.4, 0.1}};
    CHECK(throws_code([&] { mionet_forward(p, wrong, q); }, "width-mismatch"));
    const std::vector<std::vector<double>> two{{0.2, -0.4}, {0.1}};
    CHECK(throws_code([&] { mionet_forward(p, two, q); }, "width-mismatch"));
  }
}

TEST_CASE("mionet_gradient") {
  Rng rng(5);
  SUBCASE("zero ReLU network with zero targets") {
    MIONetConfig c{{{{3, 4, 4}, Activation::ReLU, true}}, {{1, 4, 4}, Activation::ReLU, true}, 4, 0};
    MIONetParams p{c, std::vector<double>(parameter_count(c), 0.0)};
    OperatorDataset d = netcheck::random_dataset(c, rng, 3, 5);
    for (OperatorSample& s : d.samples) std::fill(s.targets.begin(), s.targets.end(), 0.0);
    std::vector<double> g;
    CHECK(mionet_gradient(p, d, all_indices(d), g) == 0.0);
    for (double v : g) CHECK(v == 0.0);
  }
  SUBCASE("linear model closed form") {
    const int m = 3, qd = 2, P = 4;
    MIONetConfig c{{MLPSpec::linear(m, P)}, MLPSpec::linear(qd, P), P, 0};
    const MIONetParams p = netcheck::random_params(c, rng);
    OperatorDataset d = netcheck::random_dataset(c, rng, 1, 1);
    const std::vector<double>& u = d.samples[0].inputs[0];
    const Point& x = d.query_sets[0][0];
    const double w = d.samples[0].weights[0], t = d.samples[0].targets[0];
    std::vector<double> bu(P, 0.0), tx(P, 0.0);
    for (int k = 0; k < P; ++k) {
      for (int i = 0; i < m; ++i) bu[k] += p.theta[k * m + i] * u[i];
      for (int i = 0; i < qd; ++i) tx[k] += p.theta[P * m + k * qd + i] * x[i];
    }
    double y = 0.0;
    for (int k = 0; k < P; ++k) y += bu[k] * tx[k];
    std::vector<double> g;
    const double loss = mionet_gradient(p, d, all_indices(d), g);
    CHECK(loss == doctest::Approx(w * (y - t) * (y - t)).epsilon(1e-13));
    const double r = 2.0 * w * (y - t);
    for (int k = 0; k < P; ++k) {
      for (int i = 0; i < m; ++i) CHECK(g[k * m + i] == doctest::Approx(r * tx[k] * u[i]).epsilon(1e-12));
      for (int i = 0; i < qd; ++i) CHECK(g[P * m + k * qd + i] == doctest::Approx(r * bu[k] * x[i]).epsilon(1e-12));
    }
  }
  SUBCASE("central differences") {
    for (int i = 0; i < 8; ++i) {
      const MIONetConfig c = netcheck::varied_config(i);
      const MIONetParams p = netcheck::random_params(c, rng);
      const OperatorDataset d = netcheck::random_dataset(c, rng, 4, 3);
      CAPTURE(i);
      CHECK(netcheck::gradient_deviation(p, d, {0, 2, 3}) < 1e-5);
    }
  }
  SUBCASE("errors") {
    const MIONetConfig c = netcheck::varied_config(1);
    const MIONetParams p = netcheck::random_params(c, rng);
    const OperatorDataset d = netcheck::random_dataset(c, rng, 2, 3);
    std::vector<double> g;
    CHECK(throws_code([&] { mionet_gradient(p, d, std::vector<std::size_t>{}, g); }, "empty-batch"));
    CHECK(throws_code([&] { mionet_loss(p, d, std::vector<std::size_t>{5}); }, "index-out-of-range"));
  }
}

TEST_CASE("adam_step") {
  SUBCASE("zero gradient leaves parameters unchanged") {
    std::vector<double> w{1.0, -2.0};
    AdamState st(2);
    const std::vector<double> g{0.0, 0.0};
    adam_step(w, g, st);
    CHECK(w == std::vector<double>{1.0, -2.0});
  }
  SUBCASE("first step moves by about lr against the gradient") {
    std::vector<double> w{1.0, -2.0, 0.5};
    AdamState st(3);
    const std::vector<double> g{3.0, -0.01, 250.0};
    adam_step(w, g, st);
    CHECK(w[0] == doctest::Approx(1.0 - 1e-3).epsilon(1e-8));
    CHECK(w[1] == doctest::Approx(-2.0 + 1e-3).epsilon(1e-8));
    CHECK(w[2] == doctest::Approx(0.5 - 1e-3).epsilon(1e-8));
    CHECK(st.step == 1);
  }
  SUBCASE("quadratic bowl") {
    std::vector<double> w{1.0, -2.0, 0.5};
    AdamState st(3);
    AdamConfig cfg;
    cfg.lr = 0.1;
    for (int i = 0; i < 500; ++i) {
      const std::vector<double> g{2 * w[0], 2 * w[1], 2 * w[2]};
      adam_step(w, g, st, cfg);
    }
    CHECK(std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]) < 1e-3);
  }
  std::vector<double> w(2);
  AdamState st(3);
  CHECK(throws_code([&] { adam_step(w, std::vector<double>(2), st); }, "dimension-mismatch"));
}

TEST_CASE("Poisson data") {
  const PoissonSample s{0.25, 0.75, 1.0};
  CHECK(poisson1d_solution(s, 0.5) == doctest::Approx(0.03125).epsilon(1e-15));
  CHECK(poisson1d_solution(s, 0.1) == 0.0);
  const OperatorSample os = poisson1d_sample(s, 6);
  REQUIRE(os.inputs.size() == 2);
  CHECK(os.inputs[0].size() == 6);
  CHECK(os.inputs[0][0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(os.inputs[1][0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(os.targets.size() == kPoissonQueries);
  for (int j = 0; j < kPoissonQueries; ++j) {
    const double x = j / 63.0;
    CHECK(os.targets[j] == doctest::Approx(poisson1d_solution(s, x)).epsilon(1e-15));
    CHECK(os.weights[j] == (x >= s.a && x <= s.b ? 1.0 / 63.0 : 0.0));
  }
  const OperatorSample zero = poisson1d_sample({0.2, 0.6, 0.0}, 4);
  for (double t : zero.targets) CHECK(t == 0.0);

  const OperatorDataset d = gen_poisson1d_dataset(200, 5, 9);
  CHECK(d.samples.size() == 200);
  CHECK_NOTHROW(d.validate());
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    const PoissonSample p = draw_poisson1d(rng);
    CHECK(p.a >= 0.05);
    CHECK(p.b <= 0.95);
    CHECK(p.b - p.a >= 0.2);
    CHECK(std::abs(p.c) <= 1.0);
  }
  for (const OperatorSample& o : d.samples) CHECK(o.inputs[0][0] >= 0.2 - 1e-12);
  CHECK(gen_poisson1d_dataset(5, 5, 9).samples[3].targets == gen_poisson1d_dataset(5, 5, 9).samples[3].targets);
  CHECK(throws_code([] { gen_poisson1d_dataset(0, 5, 1); }, "invalid-count"));
}

TEST_CASE("train") {
  const OperatorDataset d = gen_poisson1d_dataset(16, 4, 2);
  const NetShape shape{{8}, 6, Activation::Tanh};
  const MIONetConfig c = mionet_for_dataset(d, shape);
  TrainConfig cfg;
  cfg.seed = 4;
  cfg.batch = 4;
  SUBCASE("zero iterations return the initialization") {
    cfg.iterations = 0;
    const TrainResult r = train(d, c, cfg);
    CHECK(r.params.theta == init_mionet(c, 4).theta);
    CHECK(r.loss_history.empty());
  }
  SUBCASE("loss decreases on a duplicated sample") {
    Rng rng(10);
    const MIONetConfig rc = netcheck::varied_config(0);
    OperatorDataset dup = netcheck::random_dataset(rc, rng, 1, 8);
    dup.samples.assign(8, dup.samples[0]);
    cfg.iterations = 100;
    const TrainResult r = train(dup, rc, cfg);
    REQUIRE(r.loss_history.size() == 100);
    for (std::size_t i = 1; i < r.loss_history.size(); ++i) CHECK(r.loss_history[i] < r.loss_history[i - 1]);
  }
  SUBCASE("identical seeds reproduce the loss history") {
    cfg.iterations = 50;
    const TrainResult a = train(d, c, cfg);
    const TrainResult b = train(d, c, cfg);
    CHECK(a.loss_history == b.loss_history);
    CHECK(a.params.theta == b.params.theta);
    cfg.seed = 5;
    CHECK(train(d, c, cfg).loss_history != a.loss_history);
  }
  SUBCASE("divergence") {
    OperatorDataset huge = d;
    for (OperatorSample& s : huge.samples) std::fill(s.targets.begin(), s.targets.end(), 1e300);
    cfg.iterations = 5;
    CHECK(throws_code([&] { train(huge, c, cfg); }, "divergence"));
  }
  CHECK(preset_by_name("desk").net.p == desk_preset().net.p);
  CHECK(paper_preset().net.hidden == std::vector<int>{500, 500, 500});
  CHECK(throws_code([] { preset_by_name("huge"); }, "unknown-preset"));
}

TEST_CASE("evaluate_relative_l2") {
  Rng rng(6);
  const MIONetConfig c = netcheck::varied_config(3);
  const MIONetParams p = netcheck::random_params(c, rng);
  OperatorDataset d = netcheck::random_dataset(c, rng, 5, 4);
  auto retarget = [&](double factor) {
    OperatorDataset out = d;
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
      std::vector<double> pred = predict_sample(p, d, i);
      for (double& v : pred) v *= factor;
      out.samples[i].targets = pred;
    }
    return out;
  };
  CHECK(evaluate_relative_l2(p, retarget(1.0)).mean < 1e-15);
  CHECK(evaluate_relative_l2(p, retarget(1.0 / 1.1)).mean == doctest::Approx(0.1).epsilon(1e-12));
  const MIONetParams zero{c, std::vector<double>(p.theta.size(), 0.0)};
  CHECK(evaluate_relative_l2(zero, d).mean == doctest::Approx(1.0).epsilon(1e-15));

  OperatorDataset partly = d;
  std::fill(partly.samples[1].targets.begin(), partly.samples[1].targets.end(), 0.0);
  const EvaluationReport rep = evaluate_relative_l2(zero, partly);
  CHECK(rep.excluded == 1);
  CHECK(std::isnan(rep.per_sample[1]));
  CHECK(rep.mean == doctest::Approx(1.0));
  for (OperatorSample& s : partly.samples) std::fill(s.targets.begin(), s.targets.end(), 0.0);
  CHECK(throws_code([&] { evaluate_relative_l2(zero, partly); }, "all-targets-degenerate"));
}

TEST_CASE("branch order does not change predictions") {
  Rng rng(7);
  MIONetConfig c;
  c.p = 5;
  c.branches = {{{3, 6, 5}, Activation::Tanh, true}, MLPSpec::linear(2, 5), {{4, 5}, Activation::Tanh, true}};
  c.trunk = {{1, 7, 5}, Activation::Tanh, true};
  const MIONetParams p = netcheck::random_params(c, rng);
  const std::vector<std::vector<double>> in{{0.1, -0.3, 0.8}, {0.5, 0.2}, {-0.7, 0.4, 0.9, 0.05}};
  const std::vector<double> q{0.37};
  const std::vector<double> base = mionet_forward(p, in, q);
  for (const std::vector<std::size_t>& order : std::vector<std::vector<std::size_t>>{
           {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}}) {
    const MIONetParams pp = permute_branches(p, order);
    std::vector<std::vector<double>> pin;
    for (std::size_t b : order) pin.push_back(in[b]);
    CHECK(mionet_forward(pp, pin, q) == base);
  }
  // Zeroing the output layer of any branch zeros every prediction.
  for (std::size_t b = 0; b < 3; ++b) {
    MIONetParams z = p;
    const MLPSpec& s = c.branches[b];
    const std::size_t end = p.network_offset(b) + s.parameter_count();
    const std::size_t last = static_cast<std::size_t>(s.widths[s.widths.size() - 2]) * 5 + (s.bias ? 5 : 0);
    std::fill(z.theta.begin() + (end - last), z.theta.begin() + end, 0.0);
    for (double x : {0.0, 0.5, 1.0}) CHECK(mionet_forward(z, in, std::vector<double>{x})[0] == 0.0);
  }
}

TEST_CASE("dataset subsets") {
  const OperatorDataset d = gen_poisson1d_dataset(10, 4, 1);
  const OperatorDataset s = d.subset(2, 5);
  CHECK(s.samples.size() == 3);
  CHECK(s.samples[0].targets == d.samples[2].targets);
  CHECK(throws_code([&] { d.subset(5, 2); }, "index-out-of-range"));
  OperatorDataset broken = d;
  broken.samples[0].weights.pop_back();
  CHECK(throws_code([&] { broken.validate(); }, "invalid-dataset"));
}
