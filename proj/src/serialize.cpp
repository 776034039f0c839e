#include "serialize.hpp"

namespace denmet {

using nlohmann::json;

namespace {

AlgebraShape shape_from_json(const json& j) {
  if (!j.is_array() || j.empty()) fail(errc::parse, "shape: expected non-empty integer array");
  std::vector<int> dims;
  dims.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number_integer()) fail(errc::parse, "shape: entries must be integers");
    dims.push_back(v.get<int>());
  }
  return AlgebraShape(std::move(dims));
}

}  // namespace

json element_to_json(const Element& a) {
  json blocks = json::array();
  for (const Matrix& b : a.blocks()) {
    json entries = json::array();
    for (Eigen::Index i = 0; i < b.rows(); ++i)
      for (Eigen::Index j = 0; j < b.cols(); ++j)
        entries.push_back({b(i, j).real(), b(i, j).imag()});
    blocks.push_back(std::move(entries));
  }
  return json{{"shape", a.shape().block_dims}, {"blocks", std::move(blocks)}};
}

Element element_from_json(const json& j) {
  if (!j.is_object() || !j.contains("shape") || !j.contains("blocks"))
    fail(errc::parse, "element: expected object with 'shape' and 'blocks'");
  const AlgebraShape shape = shape_from_json(j["shape"]);
  const json& jblocks = j["blocks"];
  if (!jblocks.is_array() || static_cast<int>(jblocks.size()) != shape.block_count())
    fail(errc::parse, "element: block count does not match shape");

  std::vector<Matrix> blocks;
  blocks.reserve(shape.block_count());
  for (int k = 0; k < shape.block_count(); ++k) {
    const int d = shape.block_dims[k];
    const json& jb = jblocks[k];
    if (!jb.is_array() || static_cast<long>(jb.size()) != static_cast<long>(d) * d)
      fail(errc::parse, "element: block " + std::to_string(k) + " has wrong entry count");
    Matrix m(d, d);
    long pos = 0;
    for (int i = 0; i < d; ++i)
      for (int jj = 0; jj < d; ++jj) {
        const json& e = jb[pos++];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
          fail(errc::parse, "element: entries must be [re, im] pairs");
        m(i, jj) = cplx(e[0].get<double>(), e[1].get<double>());
      }
    blocks.push_back(std::move(m));
  }
  return Element(shape, std::move(blocks));
}

json trace_to_json(const Trace& tau) {
  return json{{"shape", tau.shape.block_dims}, {"weights", tau.weights}};
}

Trace trace_from_json(const json& j) {
  if (!j.is_object() || !j.contains("shape") || !j.contains("weights"))
    fail(errc::parse, "trace: expected object with 'shape' and 'weights'");
  const AlgebraShape shape = shape_from_json(j["shape"]);
  const json& jw = j["weights"];
  if (!jw.is_array() || static_cast<int>(jw.size()) != shape.block_count())
    fail(errc::parse, "trace: weight count does not match shape");
  std::vector<double> w;
  w.reserve(jw.size());
  for (const auto& v : jw) {
    if (!v.is_number()) fail(errc::parse, "trace: weights must be numbers");
    w.push_back(v.get<double>());
  }
  return Trace(shape, std::move(w));
}

}  // namespace denmet
