#include "nygap/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace nygap {

namespace {
constexpr double kTol = 1e-8;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::NotApplicable: return "not_applicable";
  }
  return "unknown";
}

double concentration_bound(std::size_t m, double conf) {
  if (m == 0) throw std::invalid_argument("concentration_bound: m must be >= 1");
  if (!(conf > 0.0 && conf < 1.0))
    throw std::invalid_argument("concentration_bound: confidence must lie in (0, 1)");
  return 4.0 * std::log(2.0 / conf) / std::sqrt(static_cast<double>(m));
}

TruncationGapBound truncation_gap_bound(double lambda1, std::size_t n, double dh_norm) {
  if (lambda1 < 0.0) throw std::invalid_argument("truncation_gap_bound: lambda1 < 0");
  TruncationGapBound b;
  b.tight = std::sqrt(lambda1 * static_cast<double>(n)) * dh_norm;
  b.loose = static_cast<double>(n) * dh_norm;
  return b;
}

EigengapBounds gap_bounds(std::size_t n, double hs, double gap) {
  if (!(gap > 0.0)) throw std::invalid_argument("gap_bounds: gap must be positive");
  EigengapBounds b;
  b.gap_condition = gap > 3.0 * hs;
  b.tight_defined = gap > hs;
  const double nn = static_cast<double>(n);
  if (b.tight_defined) {
    const double margin = gap - hs;
    b.p_tight = 2.0 * hs / margin;
    b.dh_tight = 4.0 * hs / margin;
    b.k_diff_tight = 4.0 * nn * hs / margin;
  }
  b.p_loose = 3.0 * hs / gap;
  b.dh_loose = 6.0 * hs / gap;
  b.k_diff_loose = 6.0 * nn * hs / gap;
  return b;
}

double lidskii_floor(double lambda_r, double n, double hs) { return lambda_r - n * hs; }

bool BoundReport::all_applicable_pass() const {
  for (Verdict v : {k_diff_op_ok, p_ok, dh_ok, k_diff_ok, lidskii_ok})
    if (v == Verdict::Fail) return false;
  return true;
}

BoundReport assemble_report(const BoundInputs& in) {
  if (in.n == 0 || in.m == 0 || in.rank == 0)
    throw std::invalid_argument("assemble_report: missing trial dimensions");
  BoundReport r;
  r.eigengap = in.eigengap;
  r.hs = in.hs;
  r.confidence = in.confidence;
  r.lambda1 = in.lambda1;
  r.lambda_r = in.lambda_r;
  r.sample_lambda_r = in.sample_lambda_r;
  r.dh_norm = in.dh_norm;
  r.p_frob = in.p_frob;
  r.k_diff_frob = in.k_diff_frob;
  r.n = in.n;
  r.m = in.m;
  r.rank = in.rank;

  const double nn = static_cast<double>(in.n);
  const double mm = static_cast<double>(in.m);

  r.concentration = concentration_bound(in.m, in.confidence);
  const TruncationGapBound tg = truncation_gap_bound(in.lambda1, in.n, in.dh_norm);
  r.k_diff_op_bound = tg.tight;
  r.k_diff_op_bound_loose = tg.loose;
  r.bigger_gap_condition = in.eigengap > 3.0 * r.concentration;

  if (in.eigengap > 0.0) {
    const EigengapBounds gb = gap_bounds(in.n, in.hs, in.eigengap);
    r.p_bound_tight = gb.p_tight;
    r.p_bound_loose = gb.p_loose;
    r.dh_bound_tight = gb.dh_tight;
    r.dh_bound_loose = gb.dh_loose;
    r.k_diff_bound_tight = gb.k_diff_tight;
    r.k_diff_bound_loose = gb.k_diff_loose;
    r.gap_condition = gb.gap_condition;
  }

  // Lidskii's inequality holds for the operator eigenvalues lambda_r/n and
  // sample_lambda_r/m; the verdict is evaluated at that scale. The unscaled
  // form is reported for reference only (it is false in general).
  r.lidskii_floor_scaled = mm * lidskii_floor(in.lambda_r / nn, 1.0, in.hs);
  r.lidskii_floor_raw = lidskii_floor(in.lambda_r, nn, in.hs);
  r.lidskii_ok = in.sample_lambda_r >= r.lidskii_floor_scaled - kTol
                     ? Verdict::Pass
                     : Verdict::Fail;
  r.lidskii_raw_ok = in.sample_lambda_r >= r.lidskii_floor_raw - kTol;

  r.k_diff_op_ok = in.k_diff_frob <= r.k_diff_op_bound * (1.0 + kTol) + kTol
                       ? Verdict::Pass
                       : Verdict::Fail;

  if (r.gap_condition) {
    r.dh_ok = in.dh_norm <= r.dh_bound_tight * (1.0 + kTol) + kTol ? Verdict::Pass
                                                                   : Verdict::Fail;
    r.k_diff_ok = in.k_diff_frob <= r.k_diff_bound_tight * (1.0 + kTol) + kTol
                      ? Verdict::Pass
                      : Verdict::Fail;
    if (in.p_frob >= 0.0)
      r.p_ok = in.p_frob <= r.p_bound_tight * (1.0 + kTol) + kTol ? Verdict::Pass
                                                                  : Verdict::Fail;
  }
  return r;
}

}  // namespace nygap
