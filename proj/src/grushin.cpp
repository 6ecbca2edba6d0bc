#include "tnlab/grushin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tnlab/errors.hpp"
#include "tnlab/linalg.hpp"

namespace tnlab {

namespace {

DenseComplexMatrix identity(Eigen::Index n) { return DenseComplexMatrix::Identity(n, n); }

DenseComplexMatrix block2x2(const DenseComplexMatrix& a, const DenseComplexMatrix& b, const DenseComplexMatrix& c,
                            const DenseComplexMatrix& d) {
  const Eigen::Index top = a.rows();
  const Eigen::Index left = a.cols();
  DenseComplexMatrix out(top + c.rows(), left + b.cols());
  out.topLeftCorner(top, left) = a;
  out.topRightCorner(top, b.cols()) = b;
  out.bottomLeftCorner(c.rows(), left) = c;
  out.bottomRightCorner(c.rows(), b.cols()) = d;
  return out;
}

}  // namespace

bool IndexPartition::is_partition() const {
  for (int j = 0; j < dim(); ++j)
    if (in_interval(j) == in_border(j)) return false;
  return n >= 1 && m >= 1;
}

DenseComplexMatrix FirstGrushin::assembled() const { return block2x2(p_block, r_minus, r_plus, r_plusminus); }

DenseComplexMatrix FirstGrushin::assembled_inverse() const {
  if (!inverse) throw InvalidArgument("first Grushin problem has not been inverted");
  return block2x2(inverse->e, inverse->e_plus, inverse->e_minus, inverse->e_minusplus);
}

FirstGrushin assemble_first_grushin(const Symbol& symbol, int n, int m, Complex z) {
  const auto embedding = build_circulant(symbol, n, m);
  const int dim = n + m;
  const DenseComplexMatrix shifted = embedding.full - z * identity(dim);

  FirstGrushin g;
  g.z = z;
  g.partition = IndexPartition{n, m};
  g.circulant_block = shifted.topLeftCorner(n, n);
  g.r_minus = shifted.topRightCorner(n, m);
  g.r_plus = shifted.bottomLeftCorner(m, n);
  g.r_plusminus = shifted.bottomRightCorner(m, m);
  g.p_block = build_toeplitz(symbol, n) - z * identity(n);

  g.d_n = std::numeric_limits<double>::infinity();
  for (const Complex& lambda : circulant_spectrum(symbol, n, m)) g.d_n = std::min(g.d_n, std::abs(z - lambda));
  g.epsilon_m = epsilon_bound(symbol, m);
  return g;
}

FirstGrushin invert_first_grushin(FirstGrushin g) {
  const int n = g.n();
  const int m = g.m();
  const DenseComplexMatrix p = g.assembled();
  DenseComplexMatrix inv;
  try {
    inv = solve(p, identity(n + m));
  } catch (const SingularMatrix& e) {
    throw SingularGrushin(std::string("bordered matrix is singular: ") + e.what());
  }
  g.inverse = FirstGrushinInverse{inv.topLeftCorner(n, n), inv.topRightCorner(n, m), inv.bottomLeftCorner(m, n),
                                  inv.bottomRightCorner(m, m)};
  g.inverse_residual = hs_norm(p * inv - identity(n + m));

  NormBoundCheck& check = g.norm_check;
  check.norm_e = operator_norm(g.inverse->e);
  check.norm_e_plus = operator_norm(g.inverse->e_plus);
  check.norm_e_minus = operator_norm(g.inverse->e_minus);
  check.norm_e_minusplus = operator_norm(g.inverse->e_minusplus);
  check.applicable = g.epsilon_m < g.d_n;
  if (check.applicable) {
    check.bound = 1.0 / (g.d_n - g.epsilon_m);
    const double limit = check.bound + 1e-8;
    check.satisfied = check.norm_e <= limit && check.norm_e_plus <= limit && check.norm_e_minus <= limit &&
                      check.norm_e_minusplus <= limit;
  }
  return g;
}

double default_tau(const FirstGrushin& g) {
  const double r_norm = operator_norm(g.r_plusminus);
  double tau = r_norm > 0.0 ? std::min(0.1, 1.0 / (4.0 * r_norm)) : 0.1;
  if (!g.inverse) return tau;
  const auto t = singular_values(g.inverse->e_minusplus);
  auto straddles = [&](double candidate) {
    return std::any_of(t.begin(), t.end(), [&](double s) { return std::abs(s - candidate) <= 1e-6 * candidate; });
  };
  while (straddles(tau)) tau *= 0.9;
  return tau;
}

SecondGrushin build_second_grushin(const FirstGrushin& g, double tau) {
  if (!g.inverse) throw InvalidArgument("build_second_grushin: first problem must be inverted");
  if (!(tau > 0.0)) throw InvalidArgument("build_second_grushin: tau must be > 0");
  const int m = g.m();
  const auto& inv = *g.inverse;

  SecondGrushin s;
  s.first = g;
  s.tau = tau;

  // E_{-+} = U diag(sigma) V^*, sigma descending: e_j are columns of V,
  // f_j columns of U. Reorder ascending.
  const auto dec = svd(inv.e_minusplus);
  s.t.resize(m);
  s.e_vectors.resize(m, m);
  s.f_vectors.resize(m, m);
  for (int j = 0; j < m; ++j) {
    s.t[j] = dec.s[m - 1 - j];
    s.e_vectors.col(j) = dec.v.col(m - 1 - j);
    s.f_vectors.col(j) = dec.u.col(m - 1 - j);
  }
  for (double tj : s.t)
    if (std::abs(tj - tau) < 1e-8 * tau)
      throw ThresholdDegenerate("tau = " + std::to_string(tau) + " straddles singular value " + std::to_string(tj));
  s.k = static_cast<int>(std::count_if(s.t.begin(), s.t.end(), [&](double tj) { return tj <= tau; }));
  const int k = s.k;

  const DenseComplexMatrix e_small = s.e_vectors.leftCols(k);
  const DenseComplexMatrix f_small = s.f_vectors.leftCols(k);
  const DenseComplexMatrix e_big = s.e_vectors.rightCols(m - k);
  const DenseComplexMatrix f_big = s.f_vectors.rightCols(m - k);

  s.s_plus = e_small.adjoint();
  s.s_minus = f_small;

  Eigen::VectorXcd inv_t_big(m - k);
  for (int j = k; j < m; ++j) inv_t_big(j - k) = 1.0 / s.t[j];
  s.f = e_big * inv_t_big.asDiagonal() * f_big.adjoint();
  s.f_plus = e_small;
  s.f_minus = f_small.adjoint();
  s.f_minusplus = DenseComplexMatrix::Zero(k, k);
  for (int j = 0; j < k; ++j) s.f_minusplus(j, j) = -s.t[j];

  s.t_block = g.p_block;
  s.t_minus = g.r_minus * s.s_minus;
  s.t_plus = s.s_plus * g.r_plus;
  s.t_plusminus = s.s_plus * g.r_plusminus * s.s_minus;

  s.g = inv.e - inv.e_plus * s.f * inv.e_minus;
  s.g_plus = inv.e_plus * s.f_plus;
  s.g_minus = s.f_minus * inv.e_minus;
  s.g_minusplus = -s.f_minusplus;
  return s;
}

DenseComplexMatrix SecondGrushin::assembled_t() const { return block2x2(t_block, t_minus, t_plus, t_plusminus); }

DenseComplexMatrix SecondGrushin::assembled_g() const { return block2x2(g, g_plus, g_minus, g_minusplus); }

DenseComplexMatrix SecondGrushin::assembled_s() const {
  return block2x2(first.inverse->e_minusplus, s_minus, s_plus, DenseComplexMatrix::Zero(k, k));
}

DenseComplexMatrix SecondGrushin::assembled_f() const { return block2x2(f, f_plus, f_minus, f_minusplus); }

CompositionReport verify_composition(const SecondGrushin& s) {
  CompositionReport r;
  const DenseComplexMatrix t = s.assembled_t();
  const DenseComplexMatrix g = s.assembled_g();
  const Eigen::Index dim = t.rows();
  r.residual_tg = hs_norm(t * g - identity(dim));
  r.residual_gt = hs_norm(g * t - identity(dim));
  r.norm_t = operator_norm(t);
  r.norm_g = operator_norm(g);
  r.tolerance = 1e-8 * (1.0 + r.norm_g * r.norm_t);

  DenseComplexMatrix direct;
  try {
    direct = solve(t, identity(dim));
    r.formula_residual = hs_norm(direct - g) / (1.0 + hs_norm(g));
  } catch (const SingularMatrix&) {
    r.formula_residual = std::numeric_limits<double>::infinity();
  }

  const DenseComplexMatrix sm = s.assembled_s();
  r.auxiliary_residual = hs_norm(sm * s.assembled_f() - identity(sm.rows()));

  const auto& e_mp = s.first.inverse->e_minusplus;
  for (std::size_t j = 0; j < s.t.size(); ++j) {
    const auto ej = s.e_vectors.col(static_cast<Eigen::Index>(j));
    const auto fj = s.f_vectors.col(static_cast<Eigen::Index>(j));
    r.intertwining_residual = std::max(r.intertwining_residual, (e_mp * ej - s.t[j] * fj).norm());
    r.intertwining_residual = std::max(r.intertwining_residual, (e_mp.adjoint() * fj - s.t[j] * ej).norm());
  }

  r.norm_f = operator_norm(s.f);
  r.norm_f_plus = operator_norm(s.f_plus);
  r.norm_f_minus = operator_norm(s.f_minus);
  r.norm_f_minusplus = operator_norm(s.f_minusplus);
  constexpr double kSlack = 1e-10;
  r.f_bounds_hold = r.norm_f <= 1.0 / s.tau + kSlack && r.norm_f_plus <= 1.0 + kSlack &&
                    r.norm_f_minus <= 1.0 + kSlack && r.norm_f_minusplus <= s.tau + kSlack;

  r.passed = r.residual_tg <= r.tolerance && r.residual_gt <= r.tolerance && r.f_bounds_hold;
  return r;
}

PerturbedBlocks perturbed_blocks(const SecondGrushin& s, const DenseComplexMatrix& q, double delta) {
  const int n = s.first.n();
  if (q.rows() != n || q.cols() != n) throw DimensionMismatch("perturbed_blocks: Q must be N x N");
  if (!(delta >= 0.0)) throw InvalidArgument("perturbed_blocks: delta must be >= 0");
  const double neumann = delta * operator_norm(q) * operator_norm(s.g);
  if (!(neumann < 0.5))
    throw NeumannViolation("delta ||Q|| ||G|| = " + std::to_string(neumann) + " is not below 1/2");

  PerturbedBlocks out;
  const int k = s.k;
  if (k == 0) {
    out.g_minusplus_delta.resize(0, 0);
    out.schur_direct.resize(0, 0);
    out.consistent = true;
    return out;
  }
  const DenseComplexMatrix dq = delta * q;
  const DenseComplexMatrix x = solve(identity(n) + s.g * dq, s.g_plus);
  out.g_minusplus_delta = s.g_minusplus - s.g_minus * dq * x;

  DenseComplexMatrix t_delta = s.assembled_t();
  t_delta.topLeftCorner(n, n) += dq;
  const DenseComplexMatrix inv = solve(t_delta, identity(n + k));
  out.schur_direct = inv.bottomRightCorner(k, k);
  out.residual = hs_norm(out.g_minusplus_delta - out.schur_direct);
  out.consistent = out.residual <= 1e-8 * hs_norm(out.g_minusplus_delta) + 1e-14;
  return out;
}

LadderReport determinant_ladder(const Symbol& symbol, int n, int m, Complex z, double delta,
                                const DenseComplexMatrix& q, std::optional<double> tau) {
  const FirstGrushin first = invert_first_grushin(assemble_first_grushin(symbol, n, m, z));
  const SecondGrushin second = build_second_grushin(first, tau ? *tau : default_tau(first));

  LadderReport r;
  r.z = z;
  r.n = n;
  r.m = m;
  r.tau = second.tau;
  r.k = second.k;
  r.d_n = first.d_n;
  r.epsilon_m = first.epsilon_m;

  r.ln_det_p = log_abs_det(first.p_block);
  r.ln_det_grushin = log_abs_det(first.assembled());
  r.ln_det_e_minusplus = log_abs_det(first.inverse->e_minusplus);
  r.ln_det_t = log_abs_det(second.assembled_t());
  r.ln_det_g_minusplus = log_abs_det(second.g_minusplus);
  for (int j = second.k; j < m; ++j) r.ln_t_above += std::log(second.t[j]);

  const bool perturbed = delta > 0.0;
  if (perturbed && (q.rows() != n || q.cols() != n)) throw DimensionMismatch("determinant_ladder: Q must be N x N");
  const DenseComplexMatrix dq = perturbed ? DenseComplexMatrix(delta * q) : DenseComplexMatrix::Zero(n, n);
  r.ln_det_p_delta = log_abs_det(first.p_block + dq);
  DenseComplexMatrix t_delta = second.assembled_t();
  t_delta.topLeftCorner(n, n) += dq;
  r.ln_det_t_delta = log_abs_det(t_delta);
  const DenseComplexMatrix g_delta =
      perturbed ? perturbed_blocks(second, q, delta).g_minusplus_delta : second.g_minusplus;
  r.ln_det_g_delta = log_abs_det(g_delta);

  for (const Complex& lambda : circulant_spectrum(symbol, n, m)) r.ln_det_circulant += std::log(std::abs(lambda - z));

  r.residual_a = r.ln_det_p - r.ln_det_grushin - r.ln_det_e_minusplus;
  r.residual_b = r.ln_det_p - r.ln_det_t - r.ln_det_g_minusplus;
  r.residual_c = r.ln_det_p_delta - r.ln_det_t_delta - r.ln_det_g_delta;
  r.ratio_residual = r.ln_det_e_minusplus - r.ln_det_g_minusplus - r.ln_t_above;
  r.r_of_z = r.ln_det_p_delta - r.ln_det_circulant - r.ln_det_g_delta;
  return r;
}

SingularValueWindow singular_value_window(const SecondGrushin& s, double alpha) {
  if (!(alpha > 0.0)) throw InvalidArgument("singular_value_window: alpha must be > 0");
  SingularValueWindow w;
  w.k = s.k;
  w.upper_bound = 2.0 / alpha;
  if (s.k == 0) return w;
  w.s_plus = singular_values(s.g_plus);
  w.s_minus = singular_values(s.g_minus.adjoint());
  w.min_observed = std::numeric_limits<double>::infinity();
  for (const auto* list : {&w.s_plus, &w.s_minus})
    for (double v : *list) {
      w.min_observed = std::min(w.min_observed, v);
      if (v > w.upper_bound) w.upper_bound_holds = false;
    }
  return w;
}

}  // namespace tnlab
