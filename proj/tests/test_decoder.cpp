#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mfe/decoder.hpp"
#include "mfe/encoder.hpp"
#include "mfe/meshes.hpp"
#include "mfe/random.hpp"
#include "mfe/test_functions.hpp"
#include "oracles.hpp"

using namespace mfe;

namespace {

const Point kCenter{0.5, 0.5, 0.0};

ScalarField member(const BasisSpec& spec, std::size_t j) {
  return {[spec, j](std::span<const double> x) { return eval_basis(spec, j, x); },
          [spec, j](std::span<const double> x, const MultiIndex& a) { return eval_basis_deriv(spec, j, x, a); },
          "member"};
}

ScalarField combination(const BasisSpec& spec, std::vector<double> v) {
  return {[spec, v](std::span<const double> x) { return eval_expansion(spec, v, x); },
          [spec, v](std::span<const double> x, const MultiIndex& a) {
            double acc = 0.0;
            for (std::size_t m = 0; m < spec.size(); ++m) acc += v[m] * eval_basis_deriv(spec, m, x, a);
            return acc;
          },
          "combination"};
}

// Direct line integral of exp(x+y) over the polygonal circle.
double circle_exp_oracle(int segments) {
  const ManifoldFunction mf = ManifoldFunction::constant(meshes::circle(kCenter, 0.3, segments), 1.0);
  return oracle::manifold_integral(mf, [](const Point& x, double) { return std::exp(x[0] + x[1]); }, 20);
}

}  // namespace

TEST_CASE("pair examples") {
  SUBCASE("basis member picks off a coefficient") {
    const BasisSpec spec = BasisSpec::make(Family::LegendreTensor, 4, 2);
    const GramMatrix gram = gram_hs(spec, 2);
    const EncodedVector ev =
        encode(ManifoldFunction::sample(meshes::circle(kCenter, 0.3, 64), expsum_field(2).value), spec);
    const DualRepresentation dual(ev, gram);
    for (std::size_t j = 0; j < spec.size(); ++j) {
      CHECK(pair(dual, kShapeBlock, member(spec, j)) == doctest::Approx(ev.block(kShapeBlock)[j]).epsilon(1e-10));
      CHECK(pair(dual, kFunctionBlock, member(spec, j)) == doctest::Approx(ev.block(kFunctionBlock)[j]).epsilon(1e-10));
    }
    CHECK(throws_code([&] { pair(dual, kMeasureBlock, member(spec, 0)); }, "block-not-present"));
  }
  SUBCASE("diagonal segment is odd under l1 x l0") {
    const BasisSpec spec = BasisSpec::make(Family::LegendreTensor, 3, 2);
    const GramMatrix gram = gram_hs(spec, 2);
    const EncodedVector ev = encode(ManifoldFunction::constant(meshes::segment({0, 0, 0}, {1, 1, 0}, 2), 1.0), spec);
    const DualRepresentation dual(ev, gram);
    CHECK(std::abs(pair(dual, kShapeBlock, member(spec, spec.flat_index({1, 0, 0})))) < 1e-14);
  }
  SUBCASE("circle against the direct line integral") {
    const BasisSpec spec = BasisSpec::make(Family::LegendreTensor, 16, 2);
    const GramMatrix gram = gram_hs(spec, 2);
    const EncodedVector ev = encode(ManifoldFunction::constant(meshes::circle(kCenter, 0.3, 2048), 1.0), spec);
    const DualRepresentation dual(ev, gram);
    const double ref = circle_exp_oracle(2048);
    CHECK(std::abs(pair(dual, kShapeBlock, expsum_field(2)) - ref) < 1e-6 * std::abs(ref));
  }
}

TEST_CASE("reconstruction_error") {
  const BasisSpec spec = BasisSpec::make(Family::LegendreTensor, 4, 2);
  const GramMatrix gram = gram_hs(spec, 2);
  const ManifoldFunction mf = ManifoldFunction::sample(meshes::disk(kCenter, 0.3, 24), runge_field(2).value);
  const EncodedVector ev = encode(mf, spec);
  const DualRepresentation dual(ev, gram);
  std::vector<double> v(spec.size());
  Rng rng(2);
  for (double& x : v) x = rng.uniform(-1, 1);
  const ScalarField in_span = combination(spec, v);
  const double ref = oracle::manifold_integral(
      mf, [&](const Point& x, double f) { return f * eval_expansion(spec, v, coords(x, 2)); }, 8);
  CHECK(reconstruction_error(dual, kFunctionBlock, in_span, ref) < 1e-10);

  const EncodedVector zero = encode(ManifoldFunction::constant(mf.manifold, 0.0), spec);
  const DualRepresentation zd(zero, gram);
  CHECK(reconstruction_error(zd, kFunctionBlock, expsum_field(2), 0.0) == 0.0);

  const double ref_circle = circle_exp_oracle(2048);
  auto circle_error = [&](int n) {
    const BasisSpec s = BasisSpec::make(Family::LegendreTensor, n, 2);
    const GramMatrix g = gram_hs(s, 2);
    const EncodedVector e = encode(ManifoldFunction::constant(meshes::circle(kCenter, 0.3, 2048), 1.0), s);
    return reconstruction_error(DualRepresentation(e, g), kShapeBlock, expsum_field(2), ref_circle);
  };
  CHECK(circle_error(4) / circle_error(12) > 1e3);
}

TEST_CASE("reconstruct_field") {
  const BasisSpec spec = BasisSpec::make(Family::LegendreTensor, 5, 2);
  SUBCASE("unit square with f = 1 is constant") {
    const EncodedVector ev = encode(ManifoldFunction::constant(meshes::unit_square(), 1.0), spec);
    const Grid g = reconstruct_field(ev, kFunctionBlock, 17);
    CHECK(g.rows == 17);
    CHECK(g.cols == 17);
    for (double v : g.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("zero vector gives a zero field") {
    const EncodedVector ev = encode(ManifoldFunction::constant(meshes::unit_square(), 0.0), spec);
    for (double v : reconstruct_field(ev, kFunctionBlock, 9).values) CHECK(v == 0.0);
  }
  SUBCASE("grid orientation") {
    // A single point near the top-left corner concentrates the field there.
    const EncodedVector ev = encode(ManifoldFunction::constant(meshes::point_set({{0.1, 0.9, 0}}, 2), 1.0),
                                    BasisSpec::make(Family::LegendreTensor, 12, 2));
    const Grid g = reconstruct_field(ev, kShapeBlock, 11);
    int best = 0;
    for (int i = 1; i < static_cast<int>(g.values.size()); ++i)
      if (g.values[i] > g.values[best]) best = i;
    CHECK(best / g.cols == 1);
    CHECK(best % g.cols == 1);
  }
  SUBCASE("matches the expansion pointwise") {
    const EncodedVector ev =
        encode(ManifoldFunction::sample(meshes::circle(kCenter, 0.3, 40), expsum_field(2).value), spec);
    const Grid g = reconstruct_field(ev, kFunctionBlock, 5);
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 5; ++c) {
        const std::vector<double> x{c / 4.0, 1.0 - r / 4.0};
        double ref = 0.0;
        for (std::size_t m = 0; m < spec.size(); ++m) ref += ev.block(kFunctionBlock)[m] * oracle::phi(spec, m, x.data());
        CHECK(g.at(r, c) == doctest::Approx(ref).epsilon(1e-11));
      }
  }
  SUBCASE("shape field integrates to the constant coefficient") {
    const EncodedVector ev = encode(ManifoldFunction::constant(meshes::circle(kCenter, 0.3, 40), 1.0), spec);
    const oracle::Rule r = oracle::gauss(10);
    double integral = 0.0;
    for (std::size_t a = 0; a < r.x.size(); ++a)
      for (std::size_t b = 0; b < r.x.size(); ++b) {
        const std::vector<double> x{r.x[a], r.x[b]};
        integral += r.w[a] * r.w[b] * eval_expansion(spec, ev.block(kShapeBlock), x);
      }
    CHECK(std::abs(integral - ev.block(kShapeBlock)[0]) < 1e-10);
  }
  SUBCASE("Gram-premultiplied with s = 0 equals raw") {
    const EncodedVector ev =
        encode(ManifoldFunction::sample(meshes::circle(kCenter, 0.3, 40), expsum_field(2).value), spec);
    const GramMatrix g0 = gram_hs(spec, 0);
    const Grid raw = reconstruct_field(ev, kFunctionBlock, 9);
    const Grid pre = reconstruct_field(ev, kFunctionBlock, 9, ReconstructionMode::GramPremultiplied, &g0);
    for (std::size_t i = 0; i < raw.values.size(); ++i) CHECK(pre.values[i] == doctest::Approx(raw.values[i]).epsilon(1e-12));
    CHECK(throws_code([&] { reconstruct_field(ev, kFunctionBlock, 9, ReconstructionMode::GramPremultiplied); },
                      "missing-gram"));
  }
  SUBCASE("errors") {
    const EncodedVector ev = encode(ManifoldFunction::constant(meshes::unit_square(), 1.0), spec);
    CHECK(throws_code([&] { reconstruct_field(ev, kFunctionBlock, 1); }, "invalid-grid"));
    const BasisSpec s3 = BasisSpec::make(Family::LegendreTensor, 3, 3);
    const EncodedVector e3 = encode(ManifoldFunction::constant(meshes::unit_box(3), 1.0), s3);
    CHECK(throws_code([&] { reconstruct_field(e3, kFunctionBlock, 8); }, "grid-dimension"));
    CHECK(throws_code([&] { reconstruct_slice(ev, kFunctionBlock, 8, 2, 0.5); }, "grid-dimension"));
    CHECK(throws_code([&] { reconstruct_slice(e3, kFunctionBlock, 8, 3, 0.5); }, "invalid-grid"));
  }
}

TEST_CASE("1-d grids and 3-d slices") {
  const BasisSpec s1 = BasisSpec::make(Family::LegendreTensor, 4, 1);
  const EncodedVector e1 = encode(ManifoldFunction::constant(meshes::unit_box(1), 1.0), s1);
  const Grid g1 = reconstruct_field(e1, kShapeBlock, 7);
  CHECK(g1.rows == 1);
  CHECK(g1.cols == 7);
  for (double v : g1.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

  const BasisSpec s3 = BasisSpec::make(Family::LegendreTensor, 4, 3);
  const EncodedVector e3 =
      encode(ManifoldFunction::sample(meshes::ball(3, {0.5, 0.5, 0.5}, 0.3, 1), expsum_field(3).value), s3);
  const Grid sl = reconstruct_slice(e3, kFunctionBlock, 5, 1, 0.25);
  // Slice on axis 1: column runs over x0, row over x2 from top.
  const std::vector<double> x{0.75, 0.25, 1.0};
  CHECK(sl.at(0, 3) == doctest::Approx(eval_expansion(s3, e3.block(kFunctionBlock), x)).epsilon(1e-12));
}

TEST_CASE("visual_transform and normalize_max") {
  Grid g{1, 4, {0.5, 1.0, std::exp(2.0), -3.0}};
  const Grid t = visual_transform(g);
  CHECK(t.values[0] == 0.0);
  CHECK(t.values[1] == 0.0);
  CHECK(t.values[2] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(t.values[3] == 0.0);
  const Grid n = normalize_max(g);
  CHECK(n.values[2] == doctest::Approx(1.0));
  CHECK(n.values[3] == doctest::Approx(-3.0 / std::exp(2.0)));
  const Grid z{1, 2, {0.0, 0.0}};
  CHECK(normalize_max(z).values == z.values);
}

TEST_CASE("pair is linear in the encoding and in the test function") {
  const BasisSpec spec = BasisSpec::make(Family::LegendreTensor, 5, 2);
  const GramMatrix gram = gram_hs(spec, 2);
  const EncodedVector a =
      encode(ManifoldFunction::sample(meshes::circle(kCenter, 0.3, 40), expsum_field(2).value), spec);
  const EncodedVector b =
      encode(ManifoldFunction::sample(meshes::disk({0.4, 0.6, 0}, 0.2, 12), runge_field(2).value), spec);
  EncodedVector c = a;
  const double alpha = 0.7, beta = -1.3;
  for (std::size_t i = 0; i < spec.size(); ++i)
    c.block(kFunctionBlock)[i] = alpha * a.block(kFunctionBlock)[i] + beta * b.block(kFunctionBlock)[i];
  const ScalarField phi = expsum_field(2), psi = periodic_field(2);
  const DualRepresentation da(a, gram), db(b, gram), dc(c, gram);
  CHECK(std::abs(pair(dc, kFunctionBlock, phi) -
                 (alpha * pair(da, kFunctionBlock, phi) + beta * pair(db, kFunctionBlock, phi))) < 1e-10);
  const ScalarField mix{[&](std::span<const double> x) { return alpha * phi(x) + beta * psi(x); },
                        [&](std::span<const double> x, const MultiIndex& m) {
                          return alpha * phi.deriv(x, m) + beta * psi.deriv(x, m);
                        },
                        "mix"};
  CHECK(std::abs(pair(da, kFunctionBlock, mix) -
                 (alpha * pair(da, kFunctionBlock, phi) + beta * pair(da, kFunctionBlock, psi))) < 1e-10);
}

TEST_CASE("span members pair identically for s = 0 and s = 2") {
  for (Family fam : {Family::LegendreTensor, Family::FourierTensor}) {
    const BasisSpec spec = BasisSpec::make(fam, 4, 2);
    const GramMatrix g0 = gram_hs(spec, 0), g2 = gram_hs(spec, 2);
    const EncodedVector ev =
        encode(ManifoldFunction::sample(meshes::circle(kCenter, 0.3, 40), expsum_field(2).value), spec);
    Rng rng(8);
    std::vector<double> v(spec.size());
    for (double& x : v) x = rng.uniform(-1, 1);
    const ScalarField phi = combination(spec, v);
    const double p0 = pair(DualRepresentation(ev, g0), kFunctionBlock, phi);
    const double p2 = pair(DualRepresentation(ev, g2), kFunctionBlock, phi);
    CHECK(p0 == doctest::Approx(p2).epsilon(1e-10));
  }
}
