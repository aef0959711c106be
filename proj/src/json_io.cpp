#include "wstar/json_io.hpp"

#include "wstar/error.hpp"

namespace wstar {

json shape_to_json(const Shape& s) { return json(s.dims); }

Shape shape_from_json(const json& j) {
  if (!j.is_array()) fail(ErrorKind::InvalidInput, "shape must be an array of block sizes");
  Shape s;
  for (const auto& d : j) {
    if (!d.is_number_integer() || d.get<int>() < 1)
      fail(ErrorKind::InvalidInput, "block sizes must be positive integers");
    s.dims.push_back(d.get<int>());
  }
  if (s.dims.empty()) fail(ErrorKind::InvalidInput, "shape without blocks");
  return s;
}

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

void require_matrix(const json& j, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n)
    fail(ErrorKind::InvalidInput, std::string(what) + ": expected " + std::to_string(n) + " rows");
  for (const auto& row : j)
    if (!row.is_array() || row.size() != n)
      fail(ErrorKind::InvalidInput, std::string(what) + ": expected square rows");
}

void require_pair(const json& e) {
  if (!e.is_array() || e.size() != 2) fail(ErrorKind::InvalidInput, "entries are [re, im] pairs");
}

double number(const json& v) {
  if (!v.is_number()) fail(ErrorKind::InvalidInput, "f64 entries must be numbers");
  return v.get<double>();
}

std::string rational_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  fail(ErrorKind::InvalidInput, "qq_i entries must be \"p/q\" strings");
}

}  // namespace

Eigen::MatrixXcd matrix_from_json(const json& j) {
  if (!j.is_array()) fail(ErrorKind::InvalidInput, "matrix must be an array of rows");
  std::size_t rows = j.size();
  std::size_t cols = rows ? j[0].size() : 0;
  Eigen::MatrixXcd m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) fail(ErrorKind::InvalidInput, "ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) {
      require_pair(j[r][c]);
      m(r, c) = cplx(number(j[r][c][0]), number(j[r][c][1]));
    }
  }
  return m;
}

json element_to_json(const Element& x) {
  json blocks = json::array();
  if (x.is_exact()) {
    for (const auto& b : x.exact_blocks()) {
      json rows = json::array();
      for (int r = 0; r < b.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < b.cols(); ++c)
          row.push_back({rational_string(b(r, c).re()), rational_string(b(r, c).im())});
        rows.push_back(std::move(row));
      }
      blocks.push_back(std::move(rows));
    }
  } else {
    for (const auto& b : x.float_blocks()) blocks.push_back(matrix_to_json(b));
  }
  return {{"shape", shape_to_json(x.shape())}, {"backend", backend_name(x.backend())},
          {"blocks", std::move(blocks)}};
}

Element element_from_json(const json& j) {
  if (!j.is_object() || !j.contains("shape") || !j.contains("blocks"))
    fail(ErrorKind::InvalidInput, "element needs \"shape\" and \"blocks\"");
  Shape s = shape_from_json(j["shape"]);
  std::string backend = j.value("backend", "f64");
  const json& blocks = j["blocks"];
  if (!blocks.is_array() || int(blocks.size()) != s.blocks())
    fail(ErrorKind::ShapeMismatch, "block count does not match shape");
  if (backend == "f64") {
    Element::FloatBlocks out;
    for (int b = 0; b < s.blocks(); ++b) {
      require_matrix(blocks[b], s.dims[b], "block");
      out.push_back(matrix_from_json(blocks[b]));
    }
    return Element(std::move(out));
  }
  if (backend == "qq_i") {
    Element::ExactBlocks out;
    for (int b = 0; b < s.blocks(); ++b) {
      require_matrix(blocks[b], s.dims[b], "block");
      QMatrix m(s.dims[b], s.dims[b]);
      for (int r = 0; r < s.dims[b]; ++r)
        for (int c = 0; c < s.dims[b]; ++c) {
          const json& e = blocks[b][r][c];
          require_pair(e);
          m(r, c) = GaussRat::parse(rational_text(e[0]), rational_text(e[1]));
        }
      out.push_back(std::move(m));
    }
    return Element(std::move(out));
  }
  fail(ErrorKind::InvalidInput, "unknown backend '" + backend + "'");
}

}  // namespace wstar
