#include "matrix_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "srd/errors.hpp"

namespace srd::io {

using nlohmann::json;

namespace {

Index read_dim(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("missing field '") + key + "'");
  if (!it->is_number_integer() || it->get<long long>() <= 0)
    throw ParseError(std::string("field '") + key + "' must be a positive integer");
  return static_cast<Index>(it->get<long long>());
}

std::vector<double> read_array(const json& doc, const char* key, bool required) {
  const auto it = doc.find(key);
  if (it == doc.end()) {
    if (required) throw ParseError(std::string("missing field '") + key + "'");
    return {};
  }
  if (!it->is_array()) throw ParseError(std::string("field '") + key + "' must be an array");
  std::vector<double> out;
  out.reserve(it->size());
  for (const auto& v : *it) {
    if (!v.is_number()) throw ParseError(std::string("field '") + key + "' must contain numbers only");
    out.push_back(v.get<double>());
  }
  return out;
}

ComplexMatrix read_matrix(const json& doc, Index rows, Index cols) {
  const std::vector<double> re = read_array(doc, "re", true);
  std::vector<double> im = read_array(doc, "im", false);
  const auto expected = static_cast<std::size_t>(rows * cols);
  if (im.empty()) im.assign(expected, 0.0);
  if (re.size() != expected || im.size() != expected) {
    std::ostringstream os;
    os << "expected " << expected << " entries for a " << rows << "x" << cols << " matrix, got re=" << re.size()
       << " im=" << im.size();
    throw ParseError(os.str());
  }
  ComplexMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) {
      const auto k = static_cast<std::size_t>(r * cols + c);
      m(r, c) = Complex(re[k], im[k]);
    }
  return m;
}

MatrixKind parse_kind(const json& doc) {
  const auto it = doc.find("kind");
  if (it == doc.end() || !it->is_string()) throw ParseError("missing string field 'kind'");
  const std::string k = it->get<std::string>();
  if (k == "state") return MatrixKind::state;
  if (k == "positive") return MatrixKind::positive;
  if (k == "channel-kraus") return MatrixKind::channel_kraus;
  throw ParseError("unknown kind '" + k + "'");
}

const char* kind_name(MatrixKind k) {
  switch (k) {
    case MatrixKind::state:
      return "state";
    case MatrixKind::positive:
      return "positive";
    case MatrixKind::channel_kraus:
      return "channel-kraus";
  }
  return "";
}

void require_kind(const MatrixFile& f, std::initializer_list<MatrixKind> allowed) {
  for (MatrixKind k : allowed)
    if (f.kind == k) return;
  throw ParseError(std::string("unexpected matrix file kind '") + kind_name(f.kind) + "'");
}

json with_entries(json doc, const ComplexMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  doc["re"] = std::move(re);
  doc["im"] = std::move(im);
  return doc;
}

}  // namespace

MatrixFile parse_matrix_file(const json& doc) {
  if (!doc.is_object()) throw ParseError("matrix file must be a JSON object");
  MatrixFile f;
  f.kind = parse_kind(doc);
  if (f.kind == MatrixKind::channel_kraus) {
    const Index din = read_dim(doc, "dim_in");
    const Index dout = read_dim(doc, "dim_out");
    const auto it = doc.find("kraus");
    if (it == doc.end() || !it->is_array() || it->empty()) throw ParseError("'kraus' must be a non-empty array");
    for (const auto& k : *it) {
      if (!k.is_object()) throw ParseError("each Kraus operator must be an object with 're'/'im'");
      f.matrices.push_back(read_matrix(k, dout, din));
    }
    f.dim_a = din;
    f.dim_b = 1;
    return f;
  }
  const bool has_dim = doc.contains("dim");
  const bool has_pair = doc.contains("dimA") || doc.contains("dimB");
  if (has_dim == has_pair) throw ParseError("give either 'dim' or both 'dimA' and 'dimB'");
  if (has_dim) {
    f.dim_a = read_dim(doc, "dim");
  } else {
    f.dim_a = read_dim(doc, "dimA");
    f.dim_b = read_dim(doc, "dimB");
    f.factorized = true;
  }
  f.matrices.push_back(read_matrix(doc, f.dim(), f.dim()));
  return f;
}

MatrixFile read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path.string() + "': " + e.what());
  }
  return parse_matrix_file(doc);
}

DensityMatrix to_density(const MatrixFile& f) {
  require_kind(f, {MatrixKind::state});
  return DensityMatrix(f.matrices.front());
}

BipartiteState to_bipartite(const MatrixFile& f) {
  require_kind(f, {MatrixKind::state});
  if (!f.factorized) throw ParseError("bipartite state needs 'dimA' and 'dimB'");
  return {DensityMatrix(f.matrices.front()), f.dim_a, f.dim_b};
}

PositiveOperator to_positive(const MatrixFile& f) {
  require_kind(f, {MatrixKind::state, MatrixKind::positive});
  return PositiveOperator(f.matrices.front());
}

QuantumChannel to_channel(const MatrixFile& f) {
  require_kind(f, {MatrixKind::channel_kraus});
  return QuantumChannel(f.matrices);
}

json matrix_json(const ComplexMatrix& m) { return with_entries(json::object(), m); }

json state_json(const DensityMatrix& rho) {
  return with_entries({{"kind", "state"}, {"dim", rho.dim()}}, rho.matrix());
}

json state_json(const BipartiteState& rho) {
  return with_entries({{"kind", "state"}, {"dimA", rho.dim_a()}, {"dimB", rho.dim_b()}}, rho.state().matrix());
}

json positive_json(const PositiveOperator& p) {
  return with_entries({{"kind", "positive"}, {"dim", p.dim()}}, p.matrix());
}

json channel_json(const QuantumChannel& channel) {
  json kraus = json::array();
  for (const auto& k : channel.kraus()) kraus.push_back(matrix_json(k));
  return {{"kind", "channel-kraus"}, {"dim_in", channel.dim_in()}, {"dim_out", channel.dim_out()}, {"kraus", kraus}};
}

json number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return x;
}

void write_json(const json& doc, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
}

}  // namespace srd::io
