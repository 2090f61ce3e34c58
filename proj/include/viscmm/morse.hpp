#ifndef VISCMM_MORSE_HPP
#define VISCMM_MORSE_HPP

#include <utility>
#include <vector>

#include "viscmm/curve.hpp"

namespace viscmm {

// Exact second derivative of the discrete energy with respect to the
// ambient node coordinates (composed with the retraction onto M, so
// normal directions are exact zero modes).  Size (N q) x (N q).
struct HessianMatrix {
  Eigen::MatrixXd H;
  double sigma = 0.0;
  double critical_defect = 0.0;  // max node gradient norm at assembly
  bool critical = false;         // defect <= 1e-4
};

HessianMatrix hessian(const DiscreteClosedCurve& c, const EnergyParams& e);

struct IndexReport {
  int index = 0;                // eigenvalues < -tol
  int zero_modes = 0;           // |eigenvalue| <= tol
  int structural_zero_modes = 0;  // normal-direction zeros (N * codim)
  double eig_tol = 0.0;
  Eigen::VectorXd eigenvalues;  // ascending
};

// Morse index = count of eigenvalues below -eig_tol; eig_tol = 0 selects
// 1e-6 * max |eigenvalue|.
IndexReport morse_index(const HessianMatrix& H, double eig_tol = 0.0);

IndexReport morse_index(const DiscreteClosedCurve& c, const EnergyParams& e,
                        double eig_tol = 0.0);

// Lower-semicontinuity diagnostics for a sequence of near-critical
// curves with sigma_n -> 0 against a limit geodesic: indices of every
// member, the limit index at sigma = 0, and the quadratic-form values of
// the limit's negative directions projected onto each member.
struct SemicontinuityEntry {
  double sigma = 0.0;
  int index = 0;
  int zero_modes = 0;
  std::vector<double> projected_form_values;  // one per negative direction
};

struct SemicontinuityReport {
  std::vector<SemicontinuityEntry> entries;
  int limit_index = 0;
  std::vector<double> limit_form_values;  // negative eigenvalues of the limit
  bool semicontinuous = false;            // limit_index <= min tail index
};

SemicontinuityReport semicontinuity_report(
    const std::vector<std::pair<DiscreteClosedCurve, double>>& seq,
    const DiscreteClosedCurve& limit);

}  // namespace viscmm

#endif
