#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <limits>

#include "mfe/io.hpp"
#include "mfe/meshes.hpp"
#include "mfe/test_functions.hpp"
#include "oracles.hpp"

using namespace mfe;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("mfe_test_io_" + name)).string();
}

EncodedVector sample_encoding() {
  const BasisSpec spec = BasisSpec::make(Family::LegendreTensor, 4, 2);
  return encode(ManifoldFunction::sample(meshes::circle({0.5, 0.5, 0}, 0.3, 37), expsum_field(2).value), spec);
}

}  // namespace

TEST_CASE("format_double round-trips") {
  for (double v : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 6.02214076e23, 5e-324, std::numeric_limits<double>::max()}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(INFINITY) == "inf");
  CHECK(format_double(-INFINITY) == "-inf");
}

TEST_CASE("manifold documents") {
  SUBCASE("save then load a two-triangle square") {
    const ManifoldFunction mf = ManifoldFunction::create(meshes::unit_square(), {0.1, 0.2, 1.0 / 3.0, -4.0});
    const std::string path = temp_path("square.json");
    save_manifold(mf, path, "square");
    const LoadedManifold back = load_manifold(path);
    CHECK(back.name == "square");
    CHECK(back.mf.manifold.vertices() == mf.manifold.vertices());
    CHECK(back.mf.manifold.cells() == mf.manifold.cells());
    CHECK(back.mf.values == mf.values);
    CHECK(back.mf.manifold.intrinsic_dim() == 2);
    std::filesystem::remove(path);
  }
  SUBCASE("masses and box cells survive") {
    const ManifoldFunction mf = ManifoldFunction::constant(meshes::unit_box(2), 1.0);
    const std::vector<double> masses{0.25, 0.75};
    const LoadedManifold back = parse_manifold(manifold_to_json(mf, "box", masses));
    CHECK(back.mf.manifold.cell_type() == CellType::Box);
    REQUIRE(back.masses.has_value());
    CHECK(*back.masses == masses);
  }
  SUBCASE("values default to zero") {
    const LoadedManifold m = parse_manifold(
        R"({"format": "mfe-manifold", "version": 1, "d": 2, "k": 1,
            "vertices": [[0.1, 0.1], [0.9, 0.5]], "simplices": [[0, 1]]})");
    CHECK(m.mf.values == std::vector<double>{0.0, 0.0});
  }
  SUBCASE("errors") {
    const std::string wrong_arity =
        R"({"format": "mfe-manifold", "version": 1, "d": 2, "k": 2,
            "vertices": [[0, 0], [1, 0], [0, 1]], "simplices": [[0, 1]]})";
    CHECK(throws_code([&] { parse_manifold(wrong_arity); }, "parse-error"));
    try {
      parse_manifold("{\n\"format\": \"mfe-manifold\",\n\"version\": 1,\n\"d\": 2 oops\n}", "bad.json");
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == "parse-error");
      CHECK(std::string(e.what()).find("bad.json:4") != std::string::npos);
      CHECK(e.kind() == ErrorKind::Data);
    }
    try {
      parse_manifold(R"({"format": "mfe-manifold", "version": 1, "d": 2, "k": 1, "vertices": [[0, 0]]})", "f");
      CHECK(false);
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("'simplices'") != std::string::npos);
    }
    CHECK(throws_code(
        [] {
          parse_manifold(R"({"format": "mfe-manifold", "version": 7, "d": 2, "k": 1,
                             "vertices": [[0, 0], [1, 1]], "simplices": [[0, 1]]})");
        },
        "unsupported-version"));
    CHECK(throws_code(
        [] {
          parse_manifold(R"({"format": "mfe-manifold", "version": 1, "d": 2, "k": 1,
                             "vertices": [[0.5, 0.5], [1.2, 0.5]], "simplices": [[0, 1]]})");
        },
        "invalid-manifold"));
    CHECK(throws_code([] { load_manifold(temp_path("does-not-exist.json")); }, "io-error"));
  }
  SUBCASE("advisory issues are reported, not fatal") {
    const LoadedManifold m = parse_manifold(
        R"({"format": "mfe-manifold", "version": 1, "d": 2, "k": 1,
            "vertices": [[0.1, 0.1], [0.5, 0.5]], "simplices": [[0, 1], [1, 0]]})");
    CHECK(m.report.has("overlap"));
  }
}

TEST_CASE("point cloud CSV") {
  const LoadedManifold plain = parse_pointcloud_csv("0.1,0.2\n0.3,0.4\n0.5,0.6\n", 2);
  CHECK(plain.mf.manifold.intrinsic_dim() == 0);
  CHECK(plain.mf.manifold.vertices().size() == 3);
  CHECK(plain.mf.values == std::vector<double>{0.0, 0.0, 0.0});

  const LoadedManifold valued = parse_pointcloud_csv("0.1,0.2,5\n0.3,0.4,-1\n", 2);
  CHECK(valued.mf.values == std::vector<double>{5.0, -1.0});

  const LoadedManifold header = parse_pointcloud_csv("x,y,z,value\n0.1,0.2,0.3,2\n# comment\n\n0.4,0.5,0.6,3\n", 1);
  CHECK(header.mf.manifold.ambient_dim() == 3);
  CHECK(header.mf.values == std::vector<double>{2.0, 3.0});

  try {
    parse_pointcloud_csv("0.1,0.2\n0.3\n", 2, "cloud.csv");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "parse-error");
    CHECK(std::string(e.what()).find("cloud.csv:2") != std::string::npos);
  }
  CHECK(throws_code([] { parse_pointcloud_csv("0.1,0.2,0.3,0.4\n", 2); }, "parse-error"));
  CHECK(throws_code([] { parse_pointcloud_csv("0.1,0.2\n0.3,abc\n", 2); }, "parse-error"));
  CHECK(throws_code([] { parse_pointcloud_csv("x,y\n", 2); }, "empty-cloud"));
  CHECK(throws_code([] { parse_pointcloud_csv("1.5,0.2\n", 2); }, "invalid-manifold"));
}

TEST_CASE("encoded files") {
  const EncodedVector ev = sample_encoding();
  const std::string bytes = serialize_encoded(ev);
  CHECK(bytes.rfind("MFE-ENCODED\n", 0) == 0);
  SUBCASE("bit-identical round trip") {
    const EncodedVector back = deserialize_encoded(bytes);
    CHECK(back == ev);
    const std::string path = temp_path("enc.bin");
    save_encoded(ev, path);
    CHECK(load_encoded(path) == ev);
    CHECK(read_text_file(path) == bytes);
    std::filesystem::remove(path);
  }
  SUBCASE("payload is little-endian doubles") {
    const std::size_t payload = 2 * ev.basis.size() * 8;
    double first;
    std::memcpy(&first, bytes.data() + bytes.size() - payload, 8);
    CHECK(first == ev.block(kShapeBlock)[0]);
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  }
  SUBCASE("corruption") {
    std::string flipped = bytes;
    flipped[flipped.size() - 3] ^= 0x01;
    CHECK(throws_code([&] { deserialize_encoded(flipped); }, "hash-mismatch"));
    CHECK(throws_code([&] { deserialize_encoded(bytes.substr(0, bytes.size() - 8)); }, "truncated-payload"));
    CHECK(throws_code([&] { deserialize_encoded(bytes + "x"); }, "trailing-bytes"));
    std::string versioned = bytes;
    const std::size_t at = versioned.find("\"version\":1");
    REQUIRE(at != std::string::npos);
    versioned.replace(at, 11, "\"version\":9");
    CHECK(throws_code([&] { deserialize_encoded(versioned); }, "unsupported-version"));
    CHECK(throws_code([&] { deserialize_encoded("not an encoded file"); }, "parse-error"));
  }
  SUBCASE("point cloud provenance") {
    const BasisSpec spec = BasisSpec::make(Family::FourierTensor, 3, 3);
    const std::vector<Point> pts{{0.2, 0.3, 0.4}, {0.6, 0.1, 0.9}};
    const std::vector<double> vals{1.0, 2.0};
    const EncodedVector pc = encode_pointcloud(pts, vals, spec, 123);
    const EncodedVector back = deserialize_encoded(serialize_encoded(pc));
    CHECK(back == pc);
    CHECK(back.provenance.shape_omitted);
    CHECK(back.provenance.seed == 123);
  }
}

TEST_CASE("grid output") {
  const Grid g{2, 3, {0.0, 0.5, 1.0, -1.0, 2.0, 1.0 / 3.0}};
  const std::string csv = grid_to_csv(g);
  CHECK(csv == "0,0.5,1\n-1,2,0.3333333333333333\n");
  const std::string pgm = grid_to_pgm(g);
  const std::string header = "P5\n3 2\n255\n";
  REQUIRE(pgm.size() == header.size() + 6);
  CHECK(pgm.substr(0, header.size()) == header);
  CHECK(static_cast<unsigned char>(pgm[header.size() + 3]) == 0);
  CHECK(static_cast<unsigned char>(pgm[header.size() + 4]) == 255);
  CHECK(static_cast<unsigned char>(pgm[header.size() + 0]) == 85);
  const Grid flat{1, 2, {3.0, 3.0}};
  CHECK(grid_to_pgm(flat) == "P5\n2 1\n255\n" + std::string(2, '\0'));
  const Grid bad{1, 1, {std::nan("")}};
  CHECK(throws_code([&] { grid_to_pgm(bad); }, "non-finite"));
}

TEST_CASE("checkpoints and datasets") {
  const OperatorDataset data = gen_poisson1d_dataset(6, 4, 3);
  const MIONetConfig cfg = mionet_for_dataset(data, desk_preset().net);
  const Checkpoint cp{init_mionet(cfg, 8), "desk", 8, 123, 0.015625};
  const Checkpoint back = parse_checkpoint(checkpoint_to_json(cp));
  CHECK(back.params.theta == cp.params.theta);
  CHECK(back.params.config.p == cfg.p);
  CHECK(back.params.config.branches.size() == cfg.branches.size());
  CHECK(back.params.config.branches[1].bias == false);
  CHECK(back.params.config.trunk.widths == cfg.trunk.widths);
  CHECK(back.preset == "desk");
  CHECK(back.seed == 8);
  CHECK(back.iterations == 123);
  CHECK(back.final_loss == 0.015625);

  const std::string path = temp_path("data.json");
  save_dataset(data, path);
  const OperatorDataset d2 = load_dataset(path);
  std::filesystem::remove(path);
  CHECK(d2.generator == data.generator);
  CHECK(d2.seed == data.seed);
  CHECK(d2.basis_order == 4);
  REQUIRE(d2.samples.size() == data.samples.size());
  for (std::size_t i = 0; i < data.samples.size(); ++i) {
    CHECK(d2.samples[i].inputs == data.samples[i].inputs);
    CHECK(d2.samples[i].targets == data.samples[i].targets);
    CHECK(d2.samples[i].weights == data.samples[i].weights);
  }
  CHECK(d2.query_sets == data.query_sets);
  CHECK(dataset_to_json(d2) == dataset_to_json(data));
  CHECK(throws_code([] { parse_dataset("{\"format\": \"mfe-checkpoint\"}"); }, "parse-error"));
  CHECK(throws_code([] { parse_checkpoint("[1, 2"); }, "parse-error"));
}
