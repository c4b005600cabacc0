#pragma once

#include <string>
#include <vector>

#include "lyalasso/lasso.hpp"
#include "lyalasso/types.hpp"

namespace lyalasso {

// Which entries of the matrix are scored.  The diagonal belongs to every
// support by convention, so counting it inflates accuracy; offdiag is the
// default and "all" is available for checks that score every entry.
enum class MetricScope { kOffdiag, kAll };

MetricScope parse_metric_scope(const std::string& name);
std::string metric_scope_name(MetricScope scope);

struct Confusion {
  int tp = 0;
  int fp = 0;
  int tn = 0;
  int fn = 0;
  int total() const { return tp + fp + tn + fn; }
};

Confusion confusion(const SupportSet& est, const SupportSet& truth,
                    MetricScope scope = MetricScope::kOffdiag);

// Rates from a confusion table.  A zero denominator leaves the value 0 with
// its defined flag false; no NaN ever escapes.
struct MetricRecord {
  double tpr = 0.0;
  double fpr = 0.0;
  double acc = 0.0;
  double f1 = 0.0;
  double precision = 0.0;
  bool tpr_defined = false;
  bool fpr_defined = false;
  bool acc_defined = false;
  bool f1_defined = false;
  bool precision_defined = false;
};

MetricRecord metric_record(const Confusion& c);

struct CurveAucs {
  double auc_roc = 0.0;
  double au_pr = 0.0;
};

// Areas under the ROC and precision-recall curves traced by a sequence of
// estimated supports against a fixed truth.  ROC points (fpr, tpr) with both
// rates defined are augmented with (0,0) and (1,1), sorted by fpr, and
// integrated by trapezoid.  PR points (tpr, precision) skip entries with an
// undefined rate; the curve is sorted by tpr, anchored at tpr=0 with the
// precision of the smallest-tpr point, continued to tpr=1 at the precision
// of the largest-tpr point, and integrated by trapezoid.  No defined PR
// point at all yields au_pr = 0.
CurveAucs aucs_from_supports(const std::vector<SupportSet>& estimates,
                             const SupportSet& truth,
                             MetricScope scope = MetricScope::kOffdiag);

// The same over the supports of a regularization path; failed entries are
// skipped.
CurveAucs curve_aucs(const LassoPath& path, const SupportSet& truth,
                     MetricScope scope = MetricScope::kOffdiag);

}  // namespace lyalasso
