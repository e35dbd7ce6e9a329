#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mfe/decoder.hpp"
#include "mfe/encoder.hpp"
#include "mfe/geometry.hpp"
#include "mfe/neuralop.hpp"

namespace mfe {

inline constexpr int kManifoldFormatVersion = 1;
inline constexpr int kEncodedFormatVersion = 1;
inline constexpr int kCheckpointFormatVersion = 1;
inline constexpr int kDatasetFormatVersion = 1;
inline constexpr const char* kEncodedMagic = "MFE-ENCODED";

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

struct LoadedManifold {
  ManifoldFunction mf;
  std::string name;
  std::optional<std::vector<double>> masses;  ///< per-vertex probability masses
  ValidationReport report;
};

/// JSON manifold document:
///   {"format": "mfe-manifold", "version": 1, "d": 2, "k": 1,
///    "vertices": [[x, y], ...], "simplices": [[i, j], ...],
///    "values": [...], "masses": [...], "name": "...", "cell_type": "simplex"}
/// `values`, `masses`, `name` and `cell_type` are optional. Containment
/// failures are fatal; other validation issues are reported only.
LoadedManifold parse_manifold(const std::string& text, const std::string& source = "<string>");
LoadedManifold load_manifold(const std::string& path);
std::string manifold_to_json(const ManifoldFunction& mf, const std::string& name = "",
                             const std::optional<std::vector<double>>& masses = std::nullopt);
void save_manifold(const ManifoldFunction& mf, const std::string& path, const std::string& name = "",
                   const std::optional<std::vector<double>>& masses = std::nullopt);

/// Point cloud CSV, one point per line: x1..xd[,value]. A first line that is
/// not numeric is taken as a header; its columns name the coordinates and an
/// optional "value" column, which fixes d. Without a header `dim` decides.
LoadedManifold parse_pointcloud_csv(const std::string& text, int dim, const std::string& source = "<string>");
LoadedManifold load_pointcloud_csv(const std::string& path, int dim);

/// Encoded file: the magic line, a one-line JSON header (basis, normalization,
/// provenance, block names and lengths, SHA-256 of the payload), then the
/// coefficients as little-endian IEEE-754 doubles, block after block.
std::string serialize_encoded(const EncodedVector& ev);
EncodedVector deserialize_encoded(const std::string& bytes, const std::string& source = "<string>");
void save_encoded(const EncodedVector& ev, const std::string& path);
EncodedVector load_encoded(const std::string& path);

std::string sha256_hex(const std::string& bytes);

std::string grid_to_csv(const Grid& grid);
/// 8-bit binary PGM; values are mapped linearly from [min, max] to [0, 255].
std::string grid_to_pgm(const Grid& grid);

struct Checkpoint {
  MIONetParams params;
  std::string preset;
  std::uint64_t seed = 0;
  long long iterations = 0;
  double final_loss = 0.0;
};

std::string checkpoint_to_json(const Checkpoint& cp);
Checkpoint parse_checkpoint(const std::string& text, const std::string& source = "<string>");
void save_checkpoint(const Checkpoint& cp, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

std::string dataset_to_json(const OperatorDataset& data);
OperatorDataset parse_dataset(const std::string& text, const std::string& source = "<string>");
void save_dataset(const OperatorDataset& data, const std::string& path);
OperatorDataset load_dataset(const std::string& path);

}  // namespace mfe
