// Copyright 2026 The qlsid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qlsid/json_io.hpp"

#include <algorithm>

namespace qls {
namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::kParseError, "field '" + field + "': " + what);
}

const Json& member(const Json& j, const char* key, const std::string& field) {
  if (!j.is_object()) fail(field, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(field + "." + key, "missing");
  return *it;
}

void check_schema(const Json& j) {
  if (!j.is_object()) fail("<root>", "expected an object");
  auto it = j.find("schema");
  if (it != j.end() && (!it->is_string() || it->get<std::string>() != kSchema)) {
    fail("schema", std::string("expected \"") + kSchema + "\"");
  }
}

std::vector<Complex> complex_list(const Json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array");
  std::vector<Complex> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(complex_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Json complex_list_json(const std::vector<Complex>& v) {
  Json a = Json::array();
  for (const Complex& z : v) a.push_back(to_json(z));
  return a;
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const RationalFn& f) {
  Json j;
  j["zeros"] = complex_list_json(f.zeros);
  j["poles"] = complex_list_json(f.poles);
  j["gain"] = to_json(f.gain);
  return j;
}

Json to_json(const TransferFunctionSISO& tf) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "transfer_function";
  j["xi_minus"] = to_json(tf.xi_minus);
  j["xi_plus"] = to_json(tf.xi_plus);
  return j;
}

Json to_json(const QlsSystem& sys) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "system";
  j["n"] = sys.n_modes();
  j["m"] = sys.n_channels();
  j["S"] = to_json(sys.S().dense());
  j["C_minus"] = to_json(sys.c_minus());
  j["C_plus"] = to_json(sys.c_plus());
  j["Omega_minus"] = to_json(sys.omega_minus());
  j["Omega_plus"] = to_json(sys.omega_plus());
  return j;
}

Json to_json(const GaussianInput& in) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "input";
  j["N"] = to_json(in.N());
  j["M"] = to_json(in.M());
  return j;
}

Json to_json(const PowerSpectrumSISO& ps) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "spectrum";
  j["phi11"] = to_json(ps.phi11);
  j["phi12"] = to_json(ps.phi12);
  j["phi22"] = to_json(ps.phi22);
  return j;
}

Complex complex_from_json(const Json& j, const std::string& field) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail(field, "expected [re, im]");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

CMatrix cmatrix_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected a nested array");
  const Index rows = static_cast<Index>(j.size());
  Index cols = -1;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array()) fail(field, "row " + std::to_string(i) + " is not an array");
    const Index c = static_cast<Index>(j[i].size());
    if (cols >= 0 && c != cols) fail(field, "ragged rows");
    cols = c;
  }
  CMatrix m(rows, std::max<Index>(cols, 0));
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      m(r, c) = complex_from_json(j[r][c], field + "[" + std::to_string(r) + "][" +
                                               std::to_string(c) + "]");
    }
  }
  return m;
}

RationalFn rational_from_json(const Json& j, const std::string& field) {
  RationalFn f;
  f.zeros = complex_list(member(j, "zeros", field), field + ".zeros");
  f.poles = complex_list(member(j, "poles", field), field + ".poles");
  f.gain = complex_from_json(member(j, "gain", field), field + ".gain");
  return f;
}

TransferFunctionSISO tf_from_json(const Json& j) {
  check_schema(j);
  TransferFunctionSISO tf;
  tf.xi_minus = rational_from_json(member(j, "xi_minus", "<root>"), "xi_minus");
  tf.xi_plus = rational_from_json(member(j, "xi_plus", "<root>"), "xi_plus");
  return tf;
}

QlsSystem system_from_json(const Json& j) {
  check_schema(j);
  const Json& jn = member(j, "n", "<root>");
  const Json& jm = member(j, "m", "<root>");
  if (!jn.is_number_integer() || jn.get<long>() < 0) fail("n", "expected a nonnegative integer");
  if (!jm.is_number_integer() || jm.get<long>() < 1) fail("m", "expected a positive integer");
  const Index n = jn.get<Index>();
  const Index m = jm.get<Index>();
  auto sized = [&](const char* key, Index r, Index c) {
    CMatrix x = cmatrix_from_json(member(j, key, "<root>"), key);
    // An empty nested array stands for any 0-sized block.
    if (x.size() == 0 && r * c == 0) return CMatrix(r, c);
    if (x.rows() != r || x.cols() != c) {
      fail(key, "expected " + std::to_string(r) + " x " + std::to_string(c));
    }
    return x;
  };
  const CMatrix cm = sized("C_minus", m, n);
  const CMatrix cp = sized("C_plus", m, n);
  const CMatrix om = sized("Omega_minus", n, n);
  const CMatrix op = sized("Omega_plus", n, n);
  DoubledUpMatrix s = DoubledUpMatrix::Identity(m);
  if (j.contains("S") && !j["S"].is_null()) {
    const CMatrix sd = sized("S", 2 * m, 2 * m);
    try {
      s = DoubledUpMatrix::FromDense(sd, 1e-10);
    } catch (const Error& e) {
      fail("S", e.what());
    }
  }
  try {
    return QlsSystem(s, DoubledUpMatrix(cm, cp), DoubledUpMatrix(om, op));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kShapeMismatch) fail("<root>", e.what());
    throw;
  }
}

GaussianInput input_from_json(const Json& j) {
  check_schema(j);
  const CMatrix n = cmatrix_from_json(member(j, "N", "<root>"), "N");
  CMatrix m = CMatrix::Zero(n.rows(), n.cols());
  if (j.contains("M")) m = cmatrix_from_json(j["M"], "M");
  if (n.rows() != n.cols() || m.rows() != n.rows() || m.cols() != n.cols()) {
    fail("N", "N and M must be square and the same size");
  }
  return GaussianInput(n, m);
}

PowerSpectrumSISO spectrum_from_json(const Json& j) {
  check_schema(j);
  PowerSpectrumSISO ps;
  ps.phi11 = rational_from_json(member(j, "phi11", "<root>"), "phi11");
  ps.phi12 = rational_from_json(member(j, "phi12", "<root>"), "phi12");
  ps.phi22 = rational_from_json(member(j, "phi22", "<root>"), "phi22");
  return ps;
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    int line = 1, col = 1;
    const std::size_t stop = std::min(e.byte, text.size());
    for (std::size_t i = 0; i + 1 < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::kParseError, source + ":" + std::to_string(line) + ":" +
                                            std::to_string(col) + ": malformed JSON");
  }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qls
