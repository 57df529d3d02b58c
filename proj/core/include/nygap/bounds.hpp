#pragma once

#include <cstddef>
#include <string>

namespace nygap {

enum class Verdict { Pass, Fail, NotApplicable };

const char* to_string(Verdict v);

/// High-probability ceiling on the operator distance: 4 ln(2/conf) / sqrt(m).
double concentration_bound(std::size_t m, double conf);

struct TruncationGapBound {
  double tight = 0.0;  // sqrt(lambda1 * n) * dh_norm
  double loose = 0.0;  // n * dh_norm
};

/// Bounds ||K_hat_r - K_r||_F in terms of the projector-difference norm.
TruncationGapBound truncation_gap_bound(double lambda1, std::size_t n, double dh_norm);

struct EigengapBounds {
  double p_tight = 0.0;       // 2 hs / (gap - hs)
  double p_loose = 0.0;       // 3 hs / gap
  double dh_tight = 0.0;      // 4 hs / (gap - hs)
  double dh_loose = 0.0;      // 6 hs / gap
  double k_diff_tight = 0.0;  // 4 n hs / (gap - hs)
  double k_diff_loose = 0.0;  // 6 n hs / gap
  bool gap_condition = false; // gap > 3 hs, strictly
  bool tight_defined = true;  // gap > hs; tight values are meaningless otherwise
};

EigengapBounds gap_bounds(std::size_t n, double hs, double gap);

/// lambda_r - n * hs. Applied at operator scale (n = 1, operator eigenvalues)
/// when used as a verdict; see assemble_report.
double lidskii_floor(double lambda_r, double n, double hs);

/// Every bound value and inequality verdict a single trial can produce.
struct BoundReport {
  // measured inputs
  double eigengap = 0.0;         // normalized gap at the trial rank
  double hs = 0.0;               // operator distance ||E||_F
  double confidence = 0.1;       // conf level the concentration bound is quoted at
  double lambda1 = 0.0;
  double lambda_r = 0.0;
  double sample_lambda_r = 0.0;
  double dh_norm = 0.0;          // projector-difference operator norm
  double p_frob = -1.0;          // ||P||_F, negative when recovery not attempted
  double k_diff_frob = 0.0;      // ||K_hat_r - K_r||_F
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t rank = 0;

  // derived bound values
  double concentration = 0.0;
  double k_diff_op_bound = 0.0;        // sqrt(lambda1 n) * dh_norm
  double k_diff_op_bound_loose = 0.0;  // n * dh_norm
  double p_bound_tight = 0.0;
  double p_bound_loose = 0.0;
  double dh_bound_tight = 0.0;
  double dh_bound_loose = 0.0;
  double k_diff_bound_tight = 0.0;
  double k_diff_bound_loose = 0.0;
  double lidskii_floor_scaled = 0.0;   // m * (lambda_r / n - hs)
  double lidskii_floor_raw = 0.0;      // lambda_r - n * hs, diagnostic only
  bool gap_condition = false;
  bool bigger_gap_condition = false;   // eigengap > 12 ln(2/conf) / sqrt(m)

  // verdicts
  Verdict k_diff_op_ok = Verdict::NotApplicable;  // against k_diff_op_bound
  Verdict p_ok = Verdict::NotApplicable;          // against p_bound_tight
  Verdict dh_ok = Verdict::NotApplicable;         // against dh_bound_tight
  Verdict k_diff_ok = Verdict::NotApplicable;     // against k_diff_bound_tight
  Verdict lidskii_ok = Verdict::NotApplicable;    // against lidskii_floor_scaled
  bool lidskii_raw_ok = false;                    // diagnostic, never asserted

  bool all_applicable_pass() const;
};

struct BoundInputs {
  double eigengap = 0.0;
  double hs = 0.0;
  double confidence = 0.1;
  double lambda1 = 0.0;
  double lambda_r = 0.0;
  double sample_lambda_r = 0.0;
  double dh_norm = 0.0;
  double p_frob = -1.0;  // pass negative when P was not recovered
  double k_diff_frob = 0.0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t rank = 0;
};

/// Evaluates every bound and inequality for one trial's measured quantities.
BoundReport assemble_report(const BoundInputs& in);

}  // namespace nygap
