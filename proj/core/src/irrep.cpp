#include "lyalasso/irrep.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

#include "lyalasso/gram.hpp"
#include "lyalasso/linalg.hpp"

namespace lyalasso {

namespace {

constexpr double kRcondFloor = 1e-12;

Matrix select_rows_cols(const Matrix& m, const std::vector<int>& rows,
                        const std::vector<int>& cols) {
  Matrix out(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows.size(); ++i)
      out(i, j) = m(rows[i], cols[j]);
  return out;
}

double max_abs_row_sum(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

// Depth-first search over off-diagonal edges; self-loops are ignored.
bool graph_is_dag(const SupportSet& graph) {
  const int p = graph.p();
  std::vector<std::vector<int>> out_edges(p);
  for (const Pair& pair : graph.pairs())
    if (pair.row != pair.col) out_edges[pair.col].push_back(pair.row);

  enum class Mark { kUnseen, kActive, kDone };
  std::vector<Mark> mark(p, Mark::kUnseen);
  std::vector<std::pair<int, std::size_t>> stack;
  for (int start = 0; start < p; ++start) {
    if (mark[start] != Mark::kUnseen) continue;
    stack.emplace_back(start, 0);
    mark[start] = Mark::kActive;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next < out_edges[node].size()) {
        const int child = out_edges[node][next++];
        if (mark[child] == Mark::kActive) return false;
        if (mark[child] == Mark::kUnseen) {
          mark[child] = Mark::kActive;
          stack.emplace_back(child, 0);
        }
      } else {
        mark[node] = Mark::kDone;
        stack.pop_back();
      }
    }
  }
  return true;
}

IrrepReport report_from_gram(const Matrix& gram, const SupportSet& support,
                             const Vector& vec_m) {
  IrrepReport report;
  report.c_m = vec_m.size() == 0 ? 0.0 : vec_m.lpNorm<Eigen::Infinity>();

  const std::vector<int> s = support.flat_indices();
  const std::vector<int> sc = support.complement_indices();
  if (s.empty()) {
    report.gamma_ss_invertible = false;
    return report;
  }

  const Matrix gram_ss = select_rows_cols(gram, s, s);
  const Vector sing = Eigen::JacobiSVD<Matrix>(gram_ss).singularValues();
  const double smax = sing.maxCoeff();
  report.rcond = smax > 0.0 ? sing.minCoeff() / smax : 0.0;
  if (!(report.rcond > kRcondFloor)) {
    report.gamma_ss_invertible = false;
    return report;
  }
  report.gamma_ss_invertible = true;

  Eigen::PartialPivLU<Matrix> lu(gram_ss);
  const Matrix inv_ss = lu.solve(Matrix::Identity(gram_ss.rows(), gram_ss.cols()));
  report.c_gamma = max_abs_row_sum(inv_ss);

  const Matrix gram_cs = select_rows_cols(gram, sc, s);
  const Matrix ratio = gram_cs * inv_ss;
  report.rho = max_abs_row_sum(ratio);

  Vector sign_s(static_cast<Eigen::Index>(s.size()));
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double v = vec_m[s[k]];
    sign_s[static_cast<Eigen::Index>(k)] = (v > 0.0) - (v < 0.0);
  }
  report.weak_rho = ratio.rows() == 0
                        ? 0.0
                        : (ratio * sign_s).lpNorm<Eigen::Infinity>();
  return report;
}

}  // namespace

IrrepReport irrep_constant(const Matrix& m, const Matrix& c,
                           const SupportSet* support) {
  const Matrix sigma = solve_lyapunov(m, c);
  const Matrix gram = build_gram(sigma);
  const SupportSet s = support != nullptr ? *support : support_of(m);
  if (s.p() != m.rows())
    throw std::invalid_argument("irrep_constant: support dimension mismatch");

  IrrepReport report = report_from_gram(gram, s, vec(m));
  report.c_sigma =
      Eigen::JacobiSVD<Matrix>(sigma).singularValues().maxCoeff();
  report.c_c = vec(c).norm();
  return report;
}

IrrepReport irrep_constant(const Matrix& m) {
  return irrep_constant(m, 2.0 * Matrix::Identity(m.rows(), m.cols()));
}

double weak_irrep_value(const Matrix& m, const Matrix& c) {
  const IrrepReport report = irrep_constant(m, c);
  if (!report.gamma_ss_invertible)
    throw NumericalError("weak_irrep_value: singular Gram support block");
  return *report.weak_rho;
}

DiagLocalIrrep diag_local_irrep(const SupportSet& graph, const Vector& d) {
  if (d.size() != graph.p())
    throw std::invalid_argument("diag_local_irrep: dimension mismatch");
  for (Eigen::Index i = 0; i < d.size(); ++i)
    if (!(d[i] > 0.0))
      throw std::invalid_argument("diag_local_irrep: d must be strictly positive");

  DiagLocalIrrep result;
  result.is_dag = graph_is_dag(graph);

  bool two_cycle = false;
  double worst = 0.0;
  for (const Pair& pair : graph.pairs()) {
    if (pair.row == pair.col) continue;
    if (graph.contains(pair.col, pair.row)) two_cycle = true;
    worst = std::max(worst, d[pair.col] / d[pair.row]);
  }
  if (two_cycle) {
    result.ordering_ok = false;
    return result;
  }
  result.rho_tilde = worst;
  result.ordering_ok = worst < 1.0;
  return result;
}

Matrix gram_diagonal_closed_form(const Vector& d) {
  const int p = static_cast<int>(d.size());
  for (int i = 0; i < p; ++i)
    if (!(d[i] > 0.0))
      throw std::invalid_argument(
          "gram_diagonal_closed_form: d must be strictly positive");

  Matrix gram = Matrix::Zero(p * p, p * p);
  for (int l = 0; l < p; ++l)
    for (int k = 0; k < p; ++k) {
      const int a = flat_index(k, l, p);
      if (k == l) {
        gram(a, a) = 4.0 / (d[l] * d[l]);
      } else {
        gram(a, a) = 2.0 / (d[l] * d[l]);
        gram(flat_index(l, k, p), a) = 2.0 / (d[k] * d[l]);
      }
    }
  return gram;
}

}  // namespace lyalasso
