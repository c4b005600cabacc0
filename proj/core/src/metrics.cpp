#include "lyalasso/metrics.hpp"

#include <algorithm>
#include <utility>

#include "lyalasso/linalg.hpp"

namespace lyalasso {

namespace {

double trapezoid(const std::vector<std::pair<double, double>>& pts) {
  double area = 0.0;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    area += (pts[k].first - pts[k - 1].first) *
            0.5 * (pts[k].second + pts[k - 1].second);
  }
  return area;
}

}  // namespace

MetricScope parse_metric_scope(const std::string& name) {
  if (name == "offdiag") return MetricScope::kOffdiag;
  if (name == "all") return MetricScope::kAll;
  throw std::invalid_argument("unknown metric scope: " + name);
}

std::string metric_scope_name(MetricScope scope) {
  return scope == MetricScope::kOffdiag ? "offdiag" : "all";
}

Confusion confusion(const SupportSet& est, const SupportSet& truth,
                    MetricScope scope) {
  if (est.p() != truth.p())
    throw std::invalid_argument("confusion: dimension mismatch");
  const int p = est.p();
  Confusion c;
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < p; ++i) {
      if (i == j && scope == MetricScope::kOffdiag) continue;
      const bool in_est = est.contains(i, j);
      const bool in_truth = truth.contains(i, j);
      if (in_est && in_truth) ++c.tp;
      else if (in_est) ++c.fp;
      else if (in_truth) ++c.fn;
      else ++c.tn;
    }
  return c;
}

MetricRecord metric_record(const Confusion& c) {
  MetricRecord r;
  if (c.tp + c.fn > 0) {
    r.tpr = static_cast<double>(c.tp) / (c.tp + c.fn);
    r.tpr_defined = true;
  }
  if (c.fp + c.tn > 0) {
    r.fpr = static_cast<double>(c.fp) / (c.fp + c.tn);
    r.fpr_defined = true;
  }
  if (c.total() > 0) {
    r.acc = static_cast<double>(c.tp + c.tn) / c.total();
    r.acc_defined = true;
  }
  if (2 * c.tp + c.fp + c.fn > 0) {
    r.f1 = 2.0 * c.tp / (2.0 * c.tp + c.fp + c.fn);
    r.f1_defined = true;
  }
  if (c.tp + c.fp > 0) {
    r.precision = static_cast<double>(c.tp) / (c.tp + c.fp);
    r.precision_defined = true;
  }
  return r;
}

CurveAucs aucs_from_supports(const std::vector<SupportSet>& estimates,
                             const SupportSet& truth, MetricScope scope) {
  std::vector<std::pair<double, double>> roc;  // (fpr, tpr)
  std::vector<std::pair<double, double>> pr;   // (tpr, precision)
  for (const SupportSet& est : estimates) {
    const MetricRecord r = metric_record(confusion(est, truth, scope));
    if (r.fpr_defined && r.tpr_defined) roc.emplace_back(r.fpr, r.tpr);
    if (r.tpr_defined && r.precision_defined)
      pr.emplace_back(r.tpr, r.precision);
  }

  CurveAucs out;

  roc.emplace_back(0.0, 0.0);
  roc.emplace_back(1.0, 1.0);
  std::sort(roc.begin(), roc.end());
  out.auc_roc = trapezoid(roc);

  if (!pr.empty()) {
    std::sort(pr.begin(), pr.end());
    std::vector<std::pair<double, double>> curve;
    curve.emplace_back(0.0, pr.front().second);
    curve.insert(curve.end(), pr.begin(), pr.end());
    curve.emplace_back(1.0, pr.back().second);
    out.au_pr = trapezoid(curve);
  }
  return out;
}

CurveAucs curve_aucs(const LassoPath& path, const SupportSet& truth,
                     MetricScope scope) {
  if (path.solutions.empty())
    throw std::invalid_argument("curve_aucs: empty path");
  std::vector<SupportSet> estimates;
  estimates.reserve(path.solutions.size());
  for (std::size_t k = 0; k < path.solutions.size(); ++k) {
    if (k < path.failed.size() && path.failed[k]) continue;
    estimates.push_back(support_of(path.solutions[k].m_hat));
  }
  return aucs_from_supports(estimates, truth, scope);
}

}  // namespace lyalasso
