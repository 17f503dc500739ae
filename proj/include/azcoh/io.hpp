#pragma once

// State files ({"dim": d, "re": [[...]], "im": [[...]]}) and the pure-qubit
// sweep table.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "azcoh/coherence.hpp"

namespace azcoh {

using json = nlohmann::json;

inline json matrix_to_json(const Matrix& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json rr = json::array(), ri = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ri.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return json{{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline json state_to_json(const DensityMatrix& rho) { return matrix_to_json(rho.matrix()); }

/// Parses the raw matrix of a state file; schema problems raise BadInput.
inline Matrix matrix_from_json(const json& j) {
  auto bad = [](const std::string& what) { return Error(ErrorKind::BadInput, what); };
  if (!j.is_object() || !j.contains("dim") || !j.contains("re") || !j.contains("im"))
    throw bad("state file needs keys dim, re, im");
  if (!j["dim"].is_number_integer() || j["dim"].get<long>() < 1) throw bad("dim must be a positive integer");
  const auto d = static_cast<Eigen::Index>(j["dim"].get<long>());
  Matrix m(d, d);
  for (const char* key : {"re", "im"}) {
    const json& rows = j[key];
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != d)
      throw bad(std::string(key) + " must have dim rows");
    for (Eigen::Index i = 0; i < d; ++i) {
      const json& row = rows[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d)
        throw bad(std::string(key) + " rows must have dim entries");
      for (Eigen::Index k = 0; k < d; ++k) {
        const json& x = row[static_cast<std::size_t>(k)];
        if (!x.is_number()) throw bad(std::string(key) + " entries must be numbers");
        if (key[0] == 'r')
          m(i, k) = cplx(x.get<double>(), 0.0);
        else
          m(i, k) += cplx(0.0, x.get<double>());
      }
    }
  }
  return m;
}

inline DensityMatrix state_from_json(const json& j) { return validate_state(matrix_from_json(j)); }

inline json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::BadInput, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::BadInput, path.string() + ": " + e.what());
  }
}

/// Loads and validates a state file. Any failure (I/O, schema, or state
/// invariant) is reported as BadInput with the underlying reason.
inline DensityMatrix load_state(const std::filesystem::path& path) {
  const json j = read_json_file(path);
  try {
    return state_from_json(j);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::BadInput) throw;
    throw Error(ErrorKind::BadInput, path.string() + ": " + e.what());
  }
}

inline void save_state(const std::filesystem::path& path, const DensityMatrix& rho) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::BadInput, "cannot write " + path.string());
  out << state_to_json(rho).dump(2) << '\n';
}

struct SweepRow {
  double c3 = 0.0;
  double c_half_half = 0.0;
  double c_half_one = 0.0;
  double c_half_two = 0.0;
  double numeric_half_half = 0.0;
  double numeric_half_one = 0.0;
  double numeric_half_two = 0.0;

  double absdiff_half_half() const { return std::abs(c_half_half - numeric_half_half); }
  double absdiff_half_one() const { return std::abs(c_half_one - numeric_half_one); }
  double absdiff_half_two() const { return std::abs(c_half_two - numeric_half_two); }
  double max_absdiff() const { return std::max({absdiff_half_half(), absdiff_half_one(), absdiff_half_two()}); }
};

/// Pure qubits with c3 uniformly spaced on [-1, 1]: closed forms of
/// C_{1/2,1/2}, C_{1/2,1}, C_{1/2,2} next to the optimizer's values.
inline std::vector<SweepRow> sweep_qubit(int points, const OptimizerConfig& cfg = {}) {
  if (points < 2) throw Error(ErrorKind::InvalidParams, "sweep needs at least 2 points");
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double c3 = i == points - 1 ? 1.0 : -1.0 + 2.0 * i / (points - 1);
    const double c1 = std::sqrt(std::max(0.0, 1.0 - c3 * c3));
    const Bloch b{c1, 0.0, c3};
    const DensityMatrix rho = pure_qubit(c3);
    SweepRow r;
    r.c3 = c3;
    r.c_half_half = qubit_pure_closed(b, QubitVariant::ZHalf);
    r.c_half_one = qubit_pure_closed(b, QubitVariant::ZOne);
    r.c_half_two = qubit_pure_closed(b, QubitVariant::ZTwo);
    r.numeric_half_half = minimize(rho, AlphaZ(0.5, 0.5), cfg).value;
    r.numeric_half_one = minimize(rho, AlphaZ(0.5, 1.0), cfg).value;
    r.numeric_half_two = minimize(rho, AlphaZ(0.5, 2.0), cfg).value;
    rows.push_back(r);
  }
  return rows;
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "c3,c_half_half,c_half_one,c_half_two,numeric_half_half,numeric_half_one,numeric_half_two,"
         "absdiff_half_half,absdiff_half_one,absdiff_half_two\n";
  out << std::setprecision(17);
  for (const auto& r : rows) {
    out << r.c3 << ',' << r.c_half_half << ',' << r.c_half_one << ',' << r.c_half_two << ',' << r.numeric_half_half
        << ',' << r.numeric_half_one << ',' << r.numeric_half_two << ',' << r.absdiff_half_half() << ','
        << r.absdiff_half_one() << ',' << r.absdiff_half_two() << '\n';
  }
}

}  // namespace azcoh
