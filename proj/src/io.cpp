#include "mfe/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>

#include "mfe/error.hpp"

namespace mfe {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Data, "io-error", "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Data, "io-error", "cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) fail(ErrorKind::Data, "io-error", "write to '" + path + "' failed");
}

namespace {

[[noreturn]] void field_error(const std::string& source, const std::string& field, const std::string& msg) {
  fail(ErrorKind::Data, "parse-error", source + ": field '" + field + "': " + msg);
}

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line number.
    const std::size_t pos = std::min<std::size_t>(e.byte, text.size());
    const std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
    fail(ErrorKind::Data, "parse-error", source + ":" + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
}

const json& require(const json& j, const std::string& key, const std::string& source) {
  if (!j.is_object()) field_error(source, key, "document is not an object");
  const auto it = j.find(key);
  if (it == j.end()) field_error(source, key, "missing");
  return *it;
}

long long get_int(const json& j, const std::string& key, const std::string& source) {
  const json& v = require(j, key, source);
  if (!v.is_number_integer()) field_error(source, key, "expected an integer");
  return v.get<long long>();
}

std::uint64_t get_u64(const json& j, const std::string& key, const std::string& source) {
  const json& v = require(j, key, source);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    field_error(source, key, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

double as_double(const json& v, const std::string& field, const std::string& source) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "nan") return std::nan("");
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
  }
  field_error(source, field, "expected a number");
}

json number_json(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

std::string get_string(const json& j, const std::string& key, const std::string& source) {
  const json& v = require(j, key, source);
  if (!v.is_string()) field_error(source, key, "expected a string");
  return v.get<std::string>();
}

std::vector<double> get_doubles(const json& v, const std::string& field, const std::string& source) {
  if (!v.is_array()) field_error(source, field, "expected an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_double(v[i], field + "[" + std::to_string(i) + "]", source));
  return out;
}

json doubles_json(const std::vector<double>& values) {
  json arr = json::array();
  for (double v : values) arr.push_back(number_json(v));
  return arr;
}

void check_format(const json& doc, const std::string& expected, int version, const std::string& source) {
  if (get_string(doc, "format", source) != expected)
    field_error(source, "format", "expected '" + expected + "'");
  const long long v = get_int(doc, "version", source);
  if (v != version)
    fail(ErrorKind::Data, "unsupported-version", source + ": version " + std::to_string(v) + " is not supported");
}

}  // namespace

LoadedManifold parse_manifold(const std::string& text, const std::string& source) {
  const json doc = parse_json(text, source);
  check_format(doc, "mfe-manifold", kManifoldFormatVersion, source);
  const long long d = get_int(doc, "d", source);
  const long long k = get_int(doc, "k", source);
  if (d < 1 || d > kMaxDim) field_error(source, "d", "must be 1, 2 or 3");
  if (k < 0 || k > d) field_error(source, "k", "must satisfy 0 <= k <= d");
  CellType type = CellType::Simplex;
  if (doc.contains("cell_type")) {
    const std::string t = get_string(doc, "cell_type", source);
    if (t == "box") type = CellType::Box;
    else if (t != "simplex") field_error(source, "cell_type", "expected 'simplex' or 'box'");
  }

  const json& jv = require(doc, "vertices", source);
  if (!jv.is_array()) field_error(source, "vertices", "expected an array");
  std::vector<Point> vertices;
  for (std::size_t i = 0; i < jv.size(); ++i) {
    const std::string field = "vertices[" + std::to_string(i) + "]";
    const std::vector<double> c = get_doubles(jv[i], field, source);
    if (static_cast<long long>(c.size()) != d)
      field_error(source, field, "expected " + std::to_string(d) + " coordinates, got " + std::to_string(c.size()));
    Point p{0.0, 0.0, 0.0};
    std::copy(c.begin(), c.end(), p.begin());
    vertices.push_back(p);
  }

  const long long arity = type == CellType::Box ? 2 : k + 1;
  std::vector<Cell> cells;
  if (doc.contains("simplices")) {
    const json& js = doc["simplices"];
    if (!js.is_array()) field_error(source, "simplices", "expected an array");
    for (std::size_t i = 0; i < js.size(); ++i) {
      const std::string field = "simplices[" + std::to_string(i) + "]";
      if (!js[i].is_array()) field_error(source, field, "expected an array of vertex indices");
      if (static_cast<long long>(js[i].size()) != arity)
        field_error(source, field,
                    "expected " + std::to_string(arity) + " indices for k=" + std::to_string(k) + ", got " +
                        std::to_string(js[i].size()));
      Cell c{-1, -1, -1, -1};
      for (std::size_t j = 0; j < js[i].size(); ++j) {
        if (!js[i][j].is_number_integer()) field_error(source, field, "indices must be integers");
        c[j] = js[i][j].get<int>();
      }
      cells.push_back(c);
    }
  } else if (k != 0) {
    field_error(source, "simplices", "missing");
  }

  std::vector<double> values(vertices.size(), 0.0);
  if (doc.contains("values")) {
    values = get_doubles(doc["values"], "values", source);
    if (values.size() != vertices.size())
      field_error(source, "values", "expected one value per vertex (" + std::to_string(vertices.size()) + ")");
  }
  auto build = [&]() {
    try {
      return ManifoldFunction::create(SimplicialManifold::create(static_cast<int>(d), static_cast<int>(k),
                                                                 std::move(vertices), std::move(cells), type),
                                      std::move(values));
    } catch (const Error& e) {
      fail(ErrorKind::Data, e.code(), source + ": " + e.what());
    }
  };
  LoadedManifold out{build(), "", std::nullopt, {}};
  if (doc.contains("name")) out.name = get_string(doc, "name", source);
  if (doc.contains("masses")) {
    out.masses = get_doubles(doc["masses"], "masses", source);
    if (out.masses->size() != out.mf.values.size()) field_error(source, "masses", "expected one mass per vertex");
  }
  out.report = validate_manifold(out.mf.manifold);
  if (out.report.has("containment") || out.report.has("non-finite"))
    fail(ErrorKind::Data, "invalid-manifold", source + ": " + out.report.summary());
  return out;
}

LoadedManifold load_manifold(const std::string& path) { return parse_manifold(read_text_file(path), path); }

std::string manifold_to_json(const ManifoldFunction& mf, const std::string& name,
                             const std::optional<std::vector<double>>& masses) {
  const SimplicialManifold& m = mf.manifold;
  json doc;
  doc["format"] = "mfe-manifold";
  doc["version"] = kManifoldFormatVersion;
  doc["d"] = m.ambient_dim();
  doc["k"] = m.intrinsic_dim();
  doc["cell_type"] = m.cell_type() == CellType::Box ? "box" : "simplex";
  json verts = json::array();
  for (const Point& p : m.vertices()) {
    json row = json::array();
    for (int j = 0; j < m.ambient_dim(); ++j) row.push_back(number_json(p[j]));
    verts.push_back(row);
  }
  doc["vertices"] = verts;
  json cells = json::array();
  for (const Cell& c : m.cells()) {
    json row = json::array();
    for (int j = 0; j < m.cell_arity(); ++j) row.push_back(c[j]);
    cells.push_back(row);
  }
  doc["simplices"] = cells;
  doc["values"] = doubles_json(mf.values);
  if (masses) doc["masses"] = doubles_json(*masses);
  if (!name.empty()) doc["name"] = name;
  return doc.dump(1) + "\n";
}

void save_manifold(const ManifoldFunction& mf, const std::string& path, const std::string& name,
                   const std::optional<std::vector<double>>& masses) {
  write_text_file(path, manifold_to_json(mf, name, masses));
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, ',')) {
    const auto b = cur.find_first_not_of(" \t\r");
    const auto e = cur.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
  }
  return out;
}

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  if (*first == '+') ++first;
  const auto res = std::from_chars(first, s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace

LoadedManifold parse_pointcloud_csv(const std::string& text, int dim, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  int d = dim;
  int columns = -1;
  bool has_value = false;
  std::vector<Point> points;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t\r")] == '#') continue;
    const std::vector<std::string> cells = split_csv(line);
    std::vector<double> nums(cells.size());
    bool numeric = true;
    for (std::size_t i = 0; i < cells.size(); ++i) numeric = numeric && parse_number(cells[i], nums[i]);
    if (columns < 0) {
      if (!numeric) {
        columns = static_cast<int>(cells.size());
        std::string last = cells.back();
        std::transform(last.begin(), last.end(), last.begin(), [](unsigned char c) { return std::tolower(c); });
        has_value = last == "value" || last == "f";
        d = columns - (has_value ? 1 : 0);
        continue;
      }
      columns = static_cast<int>(cells.size());
      if (columns == dim) has_value = false;
      else if (columns == dim + 1) has_value = true;
      else
        fail(ErrorKind::Data, "parse-error",
             source + ":" + std::to_string(lineno) + ": expected " + std::to_string(dim) + " or " +
                 std::to_string(dim + 1) + " columns, got " + std::to_string(columns));
    }
    if (!numeric)
      fail(ErrorKind::Data, "parse-error", source + ":" + std::to_string(lineno) + ": non-numeric field");
    if (static_cast<int>(cells.size()) != columns)
      fail(ErrorKind::Data, "parse-error",
           source + ":" + std::to_string(lineno) + ": expected " + std::to_string(columns) + " columns, got " +
               std::to_string(cells.size()));
    Point p{0.0, 0.0, 0.0};
    for (int j = 0; j < d; ++j) p[j] = nums[j];
    points.push_back(p);
    values.push_back(has_value ? nums[d] : 0.0);
  }
  if (d < 1 || d > kMaxDim) fail(ErrorKind::Data, "unsupported-dimension", source + ": point dimension must be 1..3");
  if (points.empty()) fail(ErrorKind::Data, "empty-cloud", source + ": no points");
  auto build = [&]() {
    try {
      return ManifoldFunction::create(SimplicialManifold::create(d, 0, std::move(points), {}), std::move(values));
    } catch (const Error& e) {
      fail(ErrorKind::Data, e.code(), source + ": " + e.what());
    }
  };
  LoadedManifold out{build(), "", std::nullopt, {}};
  out.report = validate_manifold(out.mf.manifold);
  if (out.report.has("containment") || out.report.has("non-finite"))
    fail(ErrorKind::Data, "invalid-manifold", source + ": " + out.report.summary());
  return out;
}

LoadedManifold load_pointcloud_csv(const std::string& path, int dim) {
  return parse_pointcloud_csv(read_text_file(path), dim, path);
}

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1)
    fail(ErrorKind::Numerical, "hash-failure", "SHA-256 computation failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

namespace {

void append_le(std::string& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
}

double read_le(const std::string& in, std::size_t pos) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  double v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

}  // namespace

std::string serialize_encoded(const EncodedVector& ev) {
  std::string payload;
  json blocks = json::array();
  for (const Block& b : ev.blocks) {
    blocks.push_back({{"name", b.name}, {"length", b.values.size()}});
    for (double v : b.values) append_le(payload, v);
  }
  json header;
  header["version"] = kEncodedFormatVersion;
  header["family"] = to_string(ev.basis.family());
  header["n"] = ev.basis.order();
  header["d"] = ev.basis.dim();
  header["intrinsic_dim"] = ev.intrinsic_dim;
  header["normalization"] = to_string(ev.normalization);
  header["provenance"] = {{"method", to_string(ev.provenance.method)},
                          {"degree", ev.provenance.degree},
                          {"samples", ev.provenance.samples},
                          {"seed", ev.provenance.seed},
                          {"shape_omitted", ev.provenance.shape_omitted}};
  header["blocks"] = blocks;
  header["payload_sha256"] = sha256_hex(payload);
  return std::string(kEncodedMagic) + "\n" + header.dump() + "\n" + payload;
}

EncodedVector deserialize_encoded(const std::string& bytes, const std::string& source) {
  const std::string magic = std::string(kEncodedMagic) + "\n";
  if (bytes.compare(0, magic.size(), magic) != 0)
    fail(ErrorKind::Data, "parse-error", source + ":1: not an encoded-vector file");
  const std::size_t eol = bytes.find('\n', magic.size());
  if (eol == std::string::npos) fail(ErrorKind::Data, "parse-error", source + ":2: header line is not terminated");
  const json header = parse_json(bytes.substr(magic.size(), eol - magic.size()), source + " header");
  const long long version = get_int(header, "version", source);
  if (version != kEncodedFormatVersion)
    fail(ErrorKind::Data, "unsupported-version", source + ": version " + std::to_string(version) + " is not supported");

  EncodedVector ev{BasisSpec::make(family_from_string(get_string(header, "family", source)),
                                   static_cast<int>(get_int(header, "n", source)),
                                   static_cast<int>(get_int(header, "d", source))),
                   static_cast<int>(get_int(header, "intrinsic_dim", source)),
                   normalization_from_string(get_string(header, "normalization", source)),
                   {},
                   {}};
  const json& prov = require(header, "provenance", source);
  ev.provenance.method = method_from_string(get_string(prov, "method", source));
  ev.provenance.degree = static_cast<int>(get_int(prov, "degree", source));
  ev.provenance.samples = get_u64(prov, "samples", source);
  ev.provenance.seed = get_u64(prov, "seed", source);
  const json& omitted = require(prov, "shape_omitted", source);
  if (!omitted.is_boolean()) field_error(source, "provenance.shape_omitted", "expected a boolean");
  ev.provenance.shape_omitted = omitted.get<bool>();

  const json& blocks = require(header, "blocks", source);
  if (!blocks.is_array()) field_error(source, "blocks", "expected an array");
  std::size_t expected = 0;
  for (const json& b : blocks) {
    const std::uint64_t len = get_u64(b, "length", source);
    if (len != ev.basis.size()) field_error(source, "blocks", "block length differs from the basis size");
    ev.blocks.push_back({get_string(b, "name", source), std::vector<double>(len)});
    expected += len * 8;
  }
  const std::string payload = bytes.substr(eol + 1);
  if (payload.size() < expected)
    fail(ErrorKind::Data, "truncated-payload",
         source + ": payload has " + std::to_string(payload.size()) + " bytes, expected " + std::to_string(expected));
  if (payload.size() > expected)
    fail(ErrorKind::Data, "trailing-bytes", source + ": payload is longer than the header declares");
  if (sha256_hex(payload) != get_string(header, "payload_sha256", source))
    fail(ErrorKind::Data, "hash-mismatch", source + ": payload does not match the recorded SHA-256");
  std::size_t pos = 0;
  for (Block& b : ev.blocks)
    for (double& v : b.values) {
      v = read_le(payload, pos);
      pos += 8;
    }
  return ev;
}

void save_encoded(const EncodedVector& ev, const std::string& path) { write_text_file(path, serialize_encoded(ev)); }

EncodedVector load_encoded(const std::string& path) { return deserialize_encoded(read_text_file(path), path); }

std::string grid_to_csv(const Grid& grid) {
  std::string out;
  for (int r = 0; r < grid.rows; ++r) {
    for (int c = 0; c < grid.cols; ++c) {
      if (c) out.push_back(',');
      out += format_double(grid.at(r, c));
    }
    out.push_back('\n');
  }
  return out;
}

std::string grid_to_pgm(const Grid& grid) {
  double lo = INFINITY, hi = -INFINITY;
  for (double v : grid.values) {
    if (!std::isfinite(v)) fail(ErrorKind::Numerical, "non-finite", "grid contains non-finite values");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::string out = "P5\n" + std::to_string(grid.cols) + " " + std::to_string(grid.rows) + "\n255\n";
  for (double v : grid.values) {
    const double t = hi > lo ? (v - lo) / (hi - lo) : 0.0;
    out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * std::clamp(t, 0.0, 1.0)))));
  }
  return out;
}

namespace {

json mlp_json(const MLPSpec& s) {
  return {{"widths", s.widths}, {"activation", to_string(s.activation)}, {"bias", s.bias}};
}

MLPSpec mlp_from_json(const json& j, const std::string& source) {
  MLPSpec s;
  const json& w = require(j, "widths", source);
  if (!w.is_array()) field_error(source, "widths", "expected an array");
  for (const json& v : w) {
    if (!v.is_number_integer()) field_error(source, "widths", "expected integers");
    s.widths.push_back(v.get<int>());
  }
  s.activation = activation_from_string(get_string(j, "activation", source));
  const json& b = require(j, "bias", source);
  if (!b.is_boolean()) field_error(source, "bias", "expected a boolean");
  s.bias = b.get<bool>();
  return s;
}

}  // namespace

std::string checkpoint_to_json(const Checkpoint& cp) {
  const MIONetConfig& cfg = cp.params.config;
  json doc;
  doc["format"] = "mfe-checkpoint";
  doc["version"] = kCheckpointFormatVersion;
  doc["preset"] = cp.preset;
  doc["seed"] = cp.seed;
  doc["iterations"] = cp.iterations;
  doc["final_loss"] = number_json(cp.final_loss);
  json branches = json::array();
  for (const MLPSpec& b : cfg.branches) branches.push_back(mlp_json(b));
  doc["config"] = {{"branches", branches}, {"trunk", mlp_json(cfg.trunk)}, {"p", cfg.p}, {"outputs", cfg.outputs}};
  doc["theta"] = doubles_json(cp.params.theta);
  return doc.dump() + "\n";
}

Checkpoint parse_checkpoint(const std::string& text, const std::string& source) {
  const json doc = parse_json(text, source);
  check_format(doc, "mfe-checkpoint", kCheckpointFormatVersion, source);
  Checkpoint cp;
  cp.preset = get_string(doc, "preset", source);
  cp.seed = get_u64(doc, "seed", source);
  cp.iterations = get_int(doc, "iterations", source);
  cp.final_loss = as_double(require(doc, "final_loss", source), "final_loss", source);
  const json& cfg = require(doc, "config", source);
  const json& branches = require(cfg, "branches", source);
  if (!branches.is_array()) field_error(source, "config.branches", "expected an array");
  for (const json& b : branches) cp.params.config.branches.push_back(mlp_from_json(b, source));
  cp.params.config.trunk = mlp_from_json(require(cfg, "trunk", source), source);
  cp.params.config.p = static_cast<int>(get_int(cfg, "p", source));
  cp.params.config.outputs = static_cast<int>(get_int(cfg, "outputs", source));
  try {
    cp.params.config.validate();
  } catch (const Error& e) {
    fail(ErrorKind::Data, e.code(), source + ": " + e.what());
  }
  cp.params.theta = get_doubles(require(doc, "theta", source), "theta", source);
  if (cp.params.theta.size() != parameter_count(cp.params.config))
    field_error(source, "theta", "length does not match the network configuration");
  return cp;
}

void save_checkpoint(const Checkpoint& cp, const std::string& path) { write_text_file(path, checkpoint_to_json(cp)); }

Checkpoint load_checkpoint(const std::string& path) { return parse_checkpoint(read_text_file(path), path); }

std::string dataset_to_json(const OperatorDataset& data) {
  json doc;
  doc["format"] = "mfe-dataset";
  doc["version"] = kDatasetFormatVersion;
  doc["generator"] = data.generator;
  doc["seed"] = data.seed;
  doc["basis"] = {{"family", data.basis_family}, {"n", data.basis_order}, {"d", data.basis_dim}};
  doc["query_dim"] = data.query_dim;
  doc["outputs"] = data.outputs;
  json sets = json::array();
  for (const std::vector<Point>& qs : data.query_sets) {
    json set = json::array();
    for (const Point& p : qs) {
      json row = json::array();
      for (int j = 0; j < data.query_dim; ++j) row.push_back(number_json(p[j]));
      set.push_back(row);
    }
    sets.push_back(set);
  }
  doc["query_sets"] = sets;
  json samples = json::array();
  for (const OperatorSample& s : data.samples) {
    json inputs = json::array();
    for (const std::vector<double>& in : s.inputs) inputs.push_back(doubles_json(in));
    samples.push_back({{"inputs", inputs},
                       {"query_set", s.query_set},
                       {"targets", doubles_json(s.targets)},
                       {"weights", doubles_json(s.weights)}});
  }
  doc["samples"] = samples;
  return doc.dump() + "\n";
}

OperatorDataset parse_dataset(const std::string& text, const std::string& source) {
  const json doc = parse_json(text, source);
  check_format(doc, "mfe-dataset", kDatasetFormatVersion, source);
  OperatorDataset data;
  data.generator = get_string(doc, "generator", source);
  data.seed = get_u64(doc, "seed", source);
  const json& basis = require(doc, "basis", source);
  data.basis_family = get_string(basis, "family", source);
  data.basis_order = static_cast<int>(get_int(basis, "n", source));
  data.basis_dim = static_cast<int>(get_int(basis, "d", source));
  data.query_dim = static_cast<int>(get_int(doc, "query_dim", source));
  if (data.query_dim < 1 || data.query_dim > kMaxDim) field_error(source, "query_dim", "must be 1, 2 or 3");
  data.outputs = static_cast<int>(get_int(doc, "outputs", source));
  const json& sets = require(doc, "query_sets", source);
  if (!sets.is_array()) field_error(source, "query_sets", "expected an array");
  for (std::size_t i = 0; i < sets.size(); ++i) {
    std::vector<Point> qs;
    if (!sets[i].is_array()) field_error(source, "query_sets", "expected arrays of points");
    for (std::size_t q = 0; q < sets[i].size(); ++q) {
      const std::string field = "query_sets[" + std::to_string(i) + "][" + std::to_string(q) + "]";
      const std::vector<double> c = get_doubles(sets[i][q], field, source);
      if (static_cast<int>(c.size()) != data.query_dim) field_error(source, field, "wrong coordinate count");
      Point p{0.0, 0.0, 0.0};
      std::copy(c.begin(), c.end(), p.begin());
      qs.push_back(p);
    }
    data.query_sets.push_back(std::move(qs));
  }
  const json& samples = require(doc, "samples", source);
  if (!samples.is_array()) field_error(source, "samples", "expected an array");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const std::string field = "samples[" + std::to_string(i) + "]";
    const json& js = samples[i];
    OperatorSample s;
    const json& inputs = require(js, "inputs", source);
    if (!inputs.is_array()) field_error(source, field + ".inputs", "expected an array");
    for (const json& in : inputs) s.inputs.push_back(get_doubles(in, field + ".inputs", source));
    s.query_set = static_cast<int>(get_int(js, "query_set", source));
    s.targets = get_doubles(require(js, "targets", source), field + ".targets", source);
    s.weights = get_doubles(require(js, "weights", source), field + ".weights", source);
    data.samples.push_back(std::move(s));
  }
  try {
    data.validate();
  } catch (const Error& e) {
    fail(ErrorKind::Data, e.code(), source + ": " + e.what());
  }
  return data;
}

void save_dataset(const OperatorDataset& data, const std::string& path) { write_text_file(path, dataset_to_json(data)); }

OperatorDataset load_dataset(const std::string& path) { return parse_dataset(read_text_file(path), path); }

}  // namespace mfe
