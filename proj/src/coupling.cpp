#include "lis/coupling.hpp"

#include <lapacke.h>

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace lis {

SymmetricEigen<double> lapack_eigen(const Matrix<double>& a) {
  const auto n = static_cast<lapack_int>(a.rows());
  std::vector<double> work(a.rows() * a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto row = a.row(r);
    std::copy(row.begin(), row.end(), work.begin() + static_cast<std::ptrdiff_t>(r * a.cols()));
  }
  std::vector<double> w(a.rows());
  // Column-major storage of a symmetric matrix is its own transpose, so the
  // eigenvectors come back as rows of `work`.
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, work.data(), n, w.data());
  if (info != 0) {
    throw NumericalFailure("LAPACK dsyevd failed with info " + std::to_string(info), 0.0);
  }
  SymmetricEigen<double> out;
  out.values.resize(a.rows());
  out.vectors = Matrix<double>(a.rows(), a.rows());
  // dsyevd sorts ascending.
  for (std::size_t k = 0; k < a.rows(); ++k) {
    const std::size_t src = a.rows() - 1 - k;
    out.values[k] = w[src];
    auto dst = out.vectors.row(k);
    std::copy_n(work.begin() + static_cast<std::ptrdiff_t>(src * a.rows()), a.rows(), dst.begin());
  }
  return out;
}

ImpedanceMatrix impedance(const ArrayGeometry& geom) { return impedance<double>(geom); }

void write_matrix(std::ostream& out, const Matrix<double>& m) {
  char buf[32];
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", m(r, c));
      if (c != 0) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

Matrix<double> read_matrix(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::vector<double> row;
    std::string token;
    while (fields >> token) {
      double v = 0.0;
      const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc() || end != token.data() + token.size()) {
        throw InvalidArgument("matrix file: bad number '" + token + "'");
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) throw InvalidArgument("matrix file: ragged rows");
    rows.push_back(std::move(row));
  }
  Matrix<double> m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

}  // namespace lis
