#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mfe/analysis.hpp"
#include "mfe/basis.hpp"
#include "mfe/decoder.hpp"
#include "mfe/encoder.hpp"
#include "mfe/error.hpp"
#include "mfe/io.hpp"
#include "mfe/neuralop.hpp"
#include "mfe/test_functions.hpp"

namespace {

using namespace mfe;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return 2;
    case ErrorKind::Data: return 3;
    case ErrorKind::Numerical: return 4;
  }
  return 1;
}

std::string strip_extension(const std::string& path) {
  for (const char* ext : {".csv", ".pgm"})
    if (path.size() > 4 && path.compare(path.size() - 4, 4, ext) == 0) return path.substr(0, path.size() - 4);
  return path;
}

struct EncodeArgs {
  std::string mesh, family = "legendre", pointcloud, out;
  int n = 0, degree = 0, dim = 2;
  std::vector<std::string> joint;
  bool measured = false;
  std::optional<std::uint64_t> seed;
};

void run_encode(const EncodeArgs& a) {
  if (a.mesh.empty() && a.pointcloud.empty()) fail(ErrorKind::Usage, "missing-input", "--mesh or --pointcloud is required");
  const Family family = family_from_string(a.family);
  EncodeOptions opt;
  opt.degree = a.degree;
  EncodedVector ev = [&]() {
    if (!a.pointcloud.empty()) {
      if (!a.seed) fail(ErrorKind::Usage, "missing-seed", "--pointcloud requires --seed");
      if (a.measured || !a.joint.empty())
        fail(ErrorKind::Usage, "conflicting-options", "--pointcloud cannot be combined with --measured or --joint");
      std::optional<std::vector<double>> shape;
      int dim = a.dim;
      if (!a.mesh.empty()) {
        const LoadedManifold m = load_manifold(a.mesh);
        dim = m.mf.manifold.ambient_dim();
        shape = normalized_shape(m.mf.manifold, BasisSpec::make(family, a.n, dim), a.degree);
      }
      const LoadedManifold cloud = load_pointcloud_csv(a.pointcloud, dim);
      const BasisSpec basis = BasisSpec::make(family, a.n, cloud.mf.manifold.ambient_dim());
      return encode_pointcloud(cloud.mf.manifold.vertices(), cloud.mf.values, basis, *a.seed, shape);
    }
    const LoadedManifold m = load_manifold(a.mesh);
    const BasisSpec basis = BasisSpec::make(family, a.n, m.mf.manifold.ambient_dim());
    if (a.measured) {
      if (!a.joint.empty()) fail(ErrorKind::Usage, "conflicting-options", "--measured cannot be combined with --joint");
      if (!m.masses) fail(ErrorKind::Data, "missing-masses", a.mesh + ": --measured needs a 'masses' field");
      return encode_measured(m.mf, *m.masses, basis, opt);
    }
    if (!a.joint.empty()) {
      JointManifoldFunction jmf;
      jmf.add(m.mf);
      for (const std::string& p : a.joint) jmf.add(load_manifold(p).mf);
      return encode_joint(jmf, basis, opt);
    }
    return encode(m.mf, basis, opt);
  }();
  save_encoded(ev, a.out);
}

struct ReconstructArgs {
  std::string encoded, out, block;
  int grid = 0;
  std::optional<int> s;
  bool log_transform = false;
  int slice_axis = 2;
  double slice_value = 0.5;
};

void run_reconstruct(const ReconstructArgs& a) {
  const EncodedVector ev = load_encoded(a.encoded);
  std::optional<GramMatrix> gram;
  if (a.s) gram.emplace(gram_hs(ev.basis, *a.s));
  const ReconstructionMode mode = gram ? ReconstructionMode::GramPremultiplied : ReconstructionMode::Raw;
  std::vector<std::string> blocks;
  if (!a.block.empty()) blocks.push_back(a.block);
  else
    for (const Block& b : ev.blocks) blocks.push_back(b.name);
  const std::string prefix = strip_extension(a.out);
  for (const std::string& name : blocks) {
    Grid g = ev.basis.dim() == 3
                 ? reconstruct_slice(ev, name, a.grid, a.slice_axis, a.slice_value, mode, gram ? &*gram : nullptr)
                 : reconstruct_field(ev, name, a.grid, mode, gram ? &*gram : nullptr);
    if (a.log_transform) g = normalize_max(visual_transform(g));
    const std::string stem = a.block.empty() ? prefix + "-" + name : prefix;
    write_text_file(stem + ".csv", grid_to_csv(g));
    write_text_file(stem + ".pgm", grid_to_pgm(g));
  }
}

struct StudyArgs {
  std::string mesh, family = "legendre", test_fn = "expsum", out;
  int s = -1;
  std::vector<int> n_list;
};

void run_study(const StudyArgs& a) {
  const LoadedManifold m = load_manifold(a.mesh);
  const int d = m.mf.manifold.ambient_dim();
  const int s = a.s >= 0 ? a.s : default_sobolev_order(d);
  const std::vector<StudyFunction> tests{{test_field_by_name(a.test_fn, d), std::nullopt}};
  const RateStudy study = convergence_study(m.mf, family_from_string(a.family), s, tests, a.n_list, true);
  std::string csv = "n,N,block,test_fn,error,at_floor\n";
  for (const RateRow& r : study.rows)
    csv += std::to_string(r.n) + "," + std::to_string(r.encoded_dim) + "," + r.block + "," + r.test_fn + "," +
           format_double(r.error) + "," + (r.at_floor ? "1" : "0") + "\n";
  write_text_file(a.out, csv);
  for (const char* block : {kShapeBlock, kFunctionBlock}) {
    std::string slope;
    try {
      slope = format_double(study.slope(tests[0].field.name, block));
    } catch (const Error& e) {
      slope = e.code();
    }
    std::cout << "slope " << block << " " << slope << "\n";
  }
}

struct ConsistencyArgs {
  std::vector<double> point, radii;
  std::string family = "legendre", test_fn = "expsum", out;
  int n = 0;
};

void run_consistency(const ConsistencyArgs& a) {
  const int d = static_cast<int>(a.point.size());
  if (d < 1 || d > kMaxDim) fail(ErrorKind::Usage, "unsupported-dimension", "--point needs 1 to 3 coordinates");
  Point x{0.0, 0.0, 0.0};
  for (int j = 0; j < d; ++j) x[j] = a.point[j];
  const BasisSpec basis = BasisSpec::make(family_from_string(a.family), a.n, d);
  const std::vector<ConsistencyRow> rows = consistency_check(x, a.radii, basis, test_field_by_name(a.test_fn, d));
  std::string csv = "radius,shape_deviation,function_deviation,deviation\n";
  for (const ConsistencyRow& r : rows)
    csv += format_double(r.radius) + "," + format_double(r.shape_deviation) + "," +
           format_double(r.function_deviation) + "," + format_double(r.deviation()) + "\n";
  write_text_file(a.out, csv);
}

struct McArgs {
  std::string mesh, family = "legendre", out;
  int n = 0, seeds = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> counts;
};

void run_mc(const McArgs& a) {
  const LoadedManifold m = load_manifold(a.mesh);
  const BasisSpec basis = BasisSpec::make(family_from_string(a.family), a.n, m.mf.manifold.ambient_dim());
  const McStudy study = mc_vs_quadrature(m.mf, basis, a.counts, a.seeds, a.seed);
  std::string csv = "N,rms_measure,rms_function,rms_max\n";
  for (const McRow& r : study.rows)
    csv += std::to_string(r.samples) + "," + format_double(r.rms_measure) + "," + format_double(r.rms_function) + "," +
           format_double(r.rms_max) + "\n";
  write_text_file(a.out, csv);
  if (study.rows.size() >= 3) std::cout << "slope " << format_double(study.slope) << "\n";
}

struct GenArgs {
  std::string problem, out;
  std::size_t count = 0;
  int n = 0;
  std::uint64_t seed = 0;
};

void run_gen(const GenArgs& a) {
  if (a.problem != "poisson1d") fail(ErrorKind::Usage, "unknown-problem", "unknown problem '" + a.problem + "'");
  save_dataset(gen_poisson1d_dataset(a.count, a.n, a.seed), a.out);
}

struct TrainArgs {
  std::string data, preset = "desk", out, loss_out;
  std::uint64_t seed = 0;
  std::optional<long long> iterations;
};

void run_train(const TrainArgs& a) {
  const OperatorDataset data = load_dataset(a.data);
  Preset preset = preset_by_name(a.preset);
  preset.train.seed = a.seed;
  if (a.iterations) preset.train.iterations = *a.iterations;
  const MIONetConfig cfg = mionet_for_dataset(data, preset.net);
  const TrainResult result = train(data, cfg, preset.train);
  Checkpoint cp{result.params, preset.name, a.seed, preset.train.iterations,
                result.loss_history.empty() ? 0.0 : result.loss_history.back()};
  save_checkpoint(cp, a.out);
  if (!a.loss_out.empty()) {
    std::string csv = "iteration,loss\n";
    for (std::size_t i = 0; i < result.loss_history.size(); ++i)
      csv += std::to_string(i) + "," + format_double(result.loss_history[i]) + "\n";
    write_text_file(a.loss_out, csv);
  }
  std::cout << "final_loss " << format_double(cp.final_loss) << "\n";
}

void run_evaluate(const std::string& model, const std::string& data_path) {
  const Checkpoint cp = load_checkpoint(model);
  const OperatorDataset data = load_dataset(data_path);
  const EvaluationReport report = evaluate_relative_l2(cp.params, data);
  std::cout << "mean_relative_l2 " << format_double(report.mean) << "\n";
  std::cout << "excluded " << report.excluded << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Manifold-function encoding toolkit"};
  app.require_subcommand(1);

  EncodeArgs enc;
  auto* c_enc = app.add_subcommand("encode", "Encode a manifold function, joint input, measure or point cloud");
  c_enc->add_option("--mesh", enc.mesh, "Manifold JSON file");
  c_enc->add_option("--family", enc.family, "legendre or fourier")->check(CLI::IsMember({"legendre", "fourier"}));
  c_enc->add_option("--n", enc.n, "Basis order per axis")->required();
  c_enc->add_option("--joint", enc.joint, "Further manifolds of other dimensions for a joint encoding");
  c_enc->add_flag("--measured", enc.measured, "Encode the vertex masses stored in the mesh file");
  c_enc->add_option("--pointcloud", enc.pointcloud, "CSV point cloud x1..xd[,value]");
  c_enc->add_option("--dim", enc.dim, "Point dimension of a header-less point cloud");
  c_enc->add_option("--seed", enc.seed, "Seed tag recorded with point-cloud encodings");
  c_enc->add_option("--degree", enc.degree, "Quadrature degree (default depends on the basis)");
  c_enc->add_option("--out", enc.out, "Encoded output file")->required();

  ReconstructArgs rec;
  auto* c_rec = app.add_subcommand("reconstruct", "Reconstruct encoded blocks on a grid (CSV + PGM)");
  c_rec->add_option("--encoded", rec.encoded, "Encoded file")->required();
  c_rec->add_option("--grid", rec.grid, "Grid points per axis")->required();
  c_rec->add_option("--s", rec.s, "Sobolev order of the Gram premultiplication");
  c_rec->add_flag("--log-transform", rec.log_transform, "Apply log(max(1,v)) and scale to max 1");
  c_rec->add_option("--block", rec.block, "Only this block (default: every block)");
  c_rec->add_option("--slice-axis", rec.slice_axis, "Fixed axis for d=3 slices");
  c_rec->add_option("--slice-value", rec.slice_value, "Fixed coordinate for d=3 slices");
  c_rec->add_option("--out", rec.out, "Output prefix")->required();

  StudyArgs st;
  auto* c_st = app.add_subcommand("study", "Convergence study of dual pairings against a test function");
  c_st->add_option("--mesh", st.mesh, "Manifold JSON file")->required();
  c_st->add_option("--family", st.family)->check(CLI::IsMember({"legendre", "fourier"}));
  c_st->add_option("--s", st.s, "Sobolev order (default d/2+1)");
  c_st->add_option("--n-list", st.n_list, "Increasing basis orders")->required()->delimiter(',');
  c_st->add_option("--test-fn", st.test_fn, "expsum, runge, periodic or poly:K");
  c_st->add_option("--out", st.out, "CSV output")->required();

  ConsistencyArgs con;
  auto* c_con = app.add_subcommand("consistency", "Ball averages against point values");
  c_con->add_option("--point", con.point, "Center x,y[,z]")->required()->delimiter(',');
  c_con->add_option("--radii", con.radii, "Ball radii")->required()->delimiter(',');
  c_con->add_option("--n", con.n, "Basis order")->required();
  c_con->add_option("--family", con.family)->check(CLI::IsMember({"legendre", "fourier"}));
  c_con->add_option("--test-fn", con.test_fn, "Function carried by the ball");
  c_con->add_option("--out", con.out, "CSV output")->required();

  McArgs mc;
  auto* c_mc = app.add_subcommand("mc-study", "Monte Carlo point-cloud encodings against quadrature");
  c_mc->add_option("--mesh", mc.mesh, "Manifold JSON file")->required();
  c_mc->add_option("--n", mc.n, "Basis order")->required();
  c_mc->add_option("--family", mc.family)->check(CLI::IsMember({"legendre", "fourier"}));
  c_mc->add_option("--N-list", mc.counts, "Sample counts")->required()->delimiter(',');
  c_mc->add_option("--seeds", mc.seeds, "Repetitions per sample count")->required();
  c_mc->add_option("--seed", mc.seed, "Base seed");
  c_mc->add_option("--out", mc.out, "CSV output")->required();

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen-data", "Generate an operator-learning dataset");
  c_gen->add_option("--problem", gen.problem, "Problem family (poisson1d)")->required();
  c_gen->add_option("--count", gen.count, "Number of samples")->required();
  c_gen->add_option("--n", gen.n, "Basis order of the encoded inputs")->required();
  c_gen->add_option("--seed", gen.seed, "Random seed")->required();
  c_gen->add_option("--out", gen.out, "Dataset JSON output")->required();

  TrainArgs tr;
  auto* c_tr = app.add_subcommand("train", "Train a MIONet on a dataset");
  c_tr->add_option("--data", tr.data, "Dataset JSON")->required();
  c_tr->add_option("--preset", tr.preset)->check(CLI::IsMember({"desk", "paper"}));
  c_tr->add_option("--seed", tr.seed, "Random seed")->required();
  c_tr->add_option("--iterations", tr.iterations, "Override the preset's iteration count");
  c_tr->add_option("--loss-out", tr.loss_out, "CSV of the loss history");
  c_tr->add_option("--out", tr.out, "Checkpoint output")->required();

  std::string model, eval_data;
  auto* c_ev = app.add_subcommand("evaluate", "Mean relative L2 error of a checkpoint on a dataset");
  c_ev->add_option("--model", model, "Checkpoint")->required();
  c_ev->add_option("--data", eval_data, "Dataset JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (c_enc->parsed()) run_encode(enc);
    else if (c_rec->parsed()) run_reconstruct(rec);
    else if (c_st->parsed()) run_study(st);
    else if (c_con->parsed()) run_consistency(con);
    else if (c_mc->parsed()) run_mc(mc);
    else if (c_gen->parsed()) run_gen(gen);
    else if (c_tr->parsed()) run_train(tr);
    else if (c_ev->parsed()) run_evaluate(model, eval_data);
  } catch (const Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
