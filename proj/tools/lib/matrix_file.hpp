#pragma once

// JSON documents for states, positive operators and Kraus channels.
//
//   {"kind": "state", "dim": 2, "re": [...], "im": [...]}
//   {"kind": "state", "dimA": 2, "dimB": 2, "re": [...], "im": [...]}
//   {"kind": "positive", "dim": 2, "re": [...], "im": [...]}
//   {"kind": "channel-kraus", "dim_in": 2, "dim_out": 2, "kraus": [{"re": [...], "im": [...]}, ...]}
//
// Entries are row-major. "im" may be omitted for real matrices.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "srd/channels.hpp"
#include "srd/states.hpp"

namespace srd::io {

enum class MatrixKind { state, positive, channel_kraus };

struct MatrixFile {
  MatrixKind kind = MatrixKind::state;
  Index dim_a = 0;  // for a plain "dim", dim_a = dim and dim_b = 1
  Index dim_b = 1;
  bool factorized = false;
  std::vector<ComplexMatrix> matrices;  // one for states/operators, the Kraus list for channels

  Index dim() const { return dim_a * dim_b; }
};

/// Throws ParseError when fields are missing or shapes disagree with array lengths.
MatrixFile parse_matrix_file(const nlohmann::json& doc);
MatrixFile read_matrix_file(const std::filesystem::path& path);

DensityMatrix to_density(const MatrixFile& f);
BipartiteState to_bipartite(const MatrixFile& f);
PositiveOperator to_positive(const MatrixFile& f);
QuantumChannel to_channel(const MatrixFile& f);

nlohmann::json matrix_json(const ComplexMatrix& m);
nlohmann::json state_json(const DensityMatrix& rho);
nlohmann::json state_json(const BipartiteState& rho);
nlohmann::json positive_json(const PositiveOperator& p);
nlohmann::json channel_json(const QuantumChannel& channel);

/// Finite numbers as JSON numbers, infinities as the string "inf".
nlohmann::json number(double x);

void write_json(const nlohmann::json& doc, const std::filesystem::path& path);

}  // namespace srd::io
