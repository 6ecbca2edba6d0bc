#pragma once

// Bordered (Grushin) problems for P_N - z and the determinant identities
// they induce.
//
// First problem: with Z_{N+M} = I_N u J, I_N = [0, N), J = [N, N+M) (that is
// [-M, 0) mod N+M), the circulant p_N(tau) - z splits into blocks
//
//   ( P~_N - z   R_-    )                  ( P_N - z   R_-    )
//   ( R_+        R_{+-} ),  and P_N(z) =   ( R_+       R_{+-} ).
//
// E(z) = P_N(z)^{-1} has blocks (E, E_+; E_-, E_{-+}).
//
// Second problem: the singular values t_1 <= ... <= t_M of E_{-+} (with
// E_{-+} e_j = t_j f_j) are split at a threshold tau. The k small ones
// define S_+ = (e_1 .. e_k)^* and S_- = (f_1 .. f_k), and
//
//   T = ( P_N - z      R_- S_-          )     G = ( E - E_+ F E_-   E_+ F_+ )
//       ( S_+ R_+      S_+ R_{+-} S_-   ),        ( F_- E_-         -F_{-+} )
//
// with F = sum_{j>k} t_j^{-1} e_j f_j^*, F_+ = S_+^*, F_- = S_-^*,
// F_{-+} = -diag(t_1, .., t_k) in the bases (e_j), (f_j).

#include <optional>
#include <vector>

#include "tnlab/matrix.hpp"
#include "tnlab/symbol.hpp"

namespace tnlab {

struct IndexPartition {
  int n = 0;
  int m = 0;

  [[nodiscard]] int dim() const { return n + m; }
  [[nodiscard]] bool in_interval(int j) const { return j >= 0 && j < n; }
  [[nodiscard]] bool in_border(int j) const { return j >= n && j < n + m; }
  /// Every index of Z_{N+M} lies in exactly one of I_N, J.
  [[nodiscard]] bool is_partition() const;
};

struct FirstGrushinInverse {
  DenseComplexMatrix e;             // N x N
  DenseComplexMatrix e_plus;        // N x M
  DenseComplexMatrix e_minus;       // M x N
  DenseComplexMatrix e_minusplus;   // M x M
};

/// Outcome of the operator-norm bound ||block|| <= (d_N - eps(M))^{-1}.
struct NormBoundCheck {
  bool applicable = false;  // eps(M) < d_N
  double bound = 0.0;
  double norm_e = 0.0;
  double norm_e_plus = 0.0;
  double norm_e_minus = 0.0;
  double norm_e_minusplus = 0.0;
  bool satisfied = true;    // vacuous when not applicable
};

struct FirstGrushin {
  Complex z;
  IndexPartition partition;
  DenseComplexMatrix p_block;          // P_N - z
  DenseComplexMatrix circulant_block;  // P~_N - z
  DenseComplexMatrix r_minus;          // N x M
  DenseComplexMatrix r_plus;           // M x N
  DenseComplexMatrix r_plusminus;      // M x M
  double d_n = 0.0;                    // dist(z, p_N(S_{N+M}))
  double epsilon_m = 0.0;              // eps(M)

  std::optional<FirstGrushinInverse> inverse;
  double inverse_residual = 0.0;       // ||P E - I||_HS
  NormBoundCheck norm_check;

  [[nodiscard]] int n() const { return partition.n; }
  [[nodiscard]] int m() const { return partition.m; }
  /// The bordered matrix P_N(z).
  [[nodiscard]] DenseComplexMatrix assembled() const;
  /// E(z); requires `inverse`.
  [[nodiscard]] DenseComplexMatrix assembled_inverse() const;
};

FirstGrushin assemble_first_grushin(const Symbol& symbol, int n, int m, Complex z);

/// Fills the inverse blocks, the identity residual and the norm check.
/// Throws SingularGrushin if P_N(z) cannot be factored.
FirstGrushin invert_first_grushin(FirstGrushin g);

struct SecondGrushin {
  FirstGrushin first;
  double tau = 0.0;
  int k = 0;
  std::vector<double> t;         // singular values of E_{-+}, ascending
  DenseComplexMatrix e_vectors;  // M x M, column j is e_j
  DenseComplexMatrix f_vectors;  // M x M, column j is f_j

  DenseComplexMatrix s_plus;     // k x M
  DenseComplexMatrix s_minus;    // M x k

  DenseComplexMatrix f;              // M x M
  DenseComplexMatrix f_plus;         // M x k
  DenseComplexMatrix f_minus;        // k x M
  DenseComplexMatrix f_minusplus;    // k x k

  DenseComplexMatrix t_block;        // N x N, P_N - z
  DenseComplexMatrix t_minus;        // N x k
  DenseComplexMatrix t_plus;         // k x N
  DenseComplexMatrix t_plusminus;    // k x k

  DenseComplexMatrix g;              // N x N
  DenseComplexMatrix g_plus;         // N x k
  DenseComplexMatrix g_minus;        // k x N
  DenseComplexMatrix g_minusplus;    // k x k

  [[nodiscard]] DenseComplexMatrix assembled_t() const;
  [[nodiscard]] DenseComplexMatrix assembled_g() const;
  /// The auxiliary problem (E_{-+}, S_-; S_+, 0) and its inverse F.
  [[nodiscard]] DenseComplexMatrix assembled_s() const;
  [[nodiscard]] DenseComplexMatrix assembled_f() const;
};

/// tau = min(0.1, 1 / (4 ||R_{+-}||)), so that ||T_{+-} G_{-+}|| <= 1/4;
/// shrunk by 10% steps while it sits within 1e-6 (relative) of some t_j.
double default_tau(const FirstGrushin& g);

/// Requires the inverse blocks and tau > 0. Throws ThresholdDegenerate
/// when tau lies within relative 1e-8 of a singular value of E_{-+}.
SecondGrushin build_second_grushin(const FirstGrushin& g, double tau);

struct CompositionReport {
  double residual_tg = 0.0;        // ||T G - I||_HS
  double residual_gt = 0.0;        // ||G T - I||_HS
  double norm_t = 0.0;
  double norm_g = 0.0;
  double tolerance = 0.0;          // 1e-8 (1 + ||G|| ||T||)
  double formula_residual = 0.0;   // ||G - T^{-1}||_HS / (1 + ||G||_HS)
  double auxiliary_residual = 0.0; // ||S F - I||_HS
  double intertwining_residual = 0.0;  // max_j ||E_{-+} e_j - t_j f_j||, ||E_{-+}^* f_j - t_j e_j||
  double norm_f = 0.0;
  double norm_f_plus = 0.0;
  double norm_f_minus = 0.0;
  double norm_f_minusplus = 0.0;
  bool f_bounds_hold = false;      // ||F|| <= 1/tau, ||F_pm|| <= 1, ||F_{-+}|| <= tau (to 1e-10)
  bool passed = false;
};

CompositionReport verify_composition(const SecondGrushin& s);

struct PerturbedBlocks {
  DenseComplexMatrix g_minusplus_delta;  // G_{-+} - G_- dQ (1 + G dQ)^{-1} G_+
  DenseComplexMatrix schur_direct;       // border block of (T + diag(dQ, 0))^{-1}
  double residual = 0.0;                 // ||difference||_HS
  bool consistent = false;               // residual <= 1e-8 ||G^delta_{-+}||_HS (+1e-14)
};

/// Requires delta ||Q|| ||G|| < 1/2, else throws NeumannViolation.
PerturbedBlocks perturbed_blocks(const SecondGrushin& s, const DenseComplexMatrix& q, double delta);

/// Log-determinants along the Schur-complement ladder at one z.
struct LadderReport {
  Complex z;
  int n = 0;
  int m = 0;
  double tau = 0.0;
  int k = 0;
  double d_n = 0.0;
  double epsilon_m = 0.0;

  double ln_det_p = 0.0;              // ln|det(P_N - z)|
  double ln_det_grushin = 0.0;        // ln|det P_N(z)|
  double ln_det_e_minusplus = 0.0;    // ln|det E_{-+}|
  double ln_det_t = 0.0;              // ln|det T|
  double ln_det_g_minusplus = 0.0;    // ln|det G_{-+}|
  double ln_det_p_delta = 0.0;        // ln|det(P_N^delta - z)|
  double ln_det_t_delta = 0.0;        // ln|det T^delta|
  double ln_det_g_delta = 0.0;        // ln|det G^delta_{-+}|
  double ln_det_circulant = 0.0;      // ln|det(p_N(tau) - z)|
  double ln_t_above = 0.0;            // sum_{j > k} ln t_j

  double residual_a = 0.0;  // ln_det_p - ln_det_grushin - ln_det_e_minusplus
  double residual_b = 0.0;  // ln_det_p - ln_det_t - ln_det_g_minusplus
  double residual_c = 0.0;  // ln_det_p_delta - ln_det_t_delta - ln_det_g_delta
  double ratio_residual = 0.0;  // ln_det_e_minusplus - ln_det_g_minusplus - ln_t_above
  double r_of_z = 0.0;      // ln_det_p_delta - ln_det_circulant - ln_det_g_delta
};

/// `q` must be N x N (ignored when delta == 0). tau defaults to default_tau.
LadderReport determinant_ladder(const Symbol& symbol, int n, int m, Complex z, double delta,
                                const DenseComplexMatrix& q, std::optional<double> tau = std::nullopt);

struct SingularValueWindow {
  std::vector<double> s_plus;   // singular values of G_+
  std::vector<double> s_minus;  // singular values of G_-^*
  int k = 0;
  double upper_bound = 0.0;     // 2 / alpha
  bool upper_bound_holds = true;
  double min_observed = 0.0;    // smallest s_j^pm (0 when k == 0)
};

SingularValueWindow singular_value_window(const SecondGrushin& s, double alpha);

}  // namespace tnlab
