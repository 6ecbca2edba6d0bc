#pragma once

// Laurent symbols p(tau) = sum_nu a_nu tau^nu in the Wiener algebra.
//
// Conventions used throughout the library:
//   * the Toeplitz matrix built from a symbol has entry (j, k) = a_{j-k};
//   * the symbol is evaluated on the unit circle as
//       p(e^{-i theta}) = sum_nu a_nu e^{-i nu theta},
//     which is the parametrization whose values on the grid
//     theta_j = 2 pi j / L are the eigenvalues of the L-periodic circulant.

#include <complex>
#include <limits>
#include <map>
#include <string_view>
#include <vector>

namespace tnlab {

using Complex = std::complex<double>;

/// Truncation sentinel: evaluate the full symbol, tail summed to the
/// tail cutoff (remainder below 1e-14 relative).
inline constexpr int kFullSymbol = std::numeric_limits<int>::max();

/// Finitely supported coefficients a_nu. Absent indices read as zero.
class BandCoefficients {
 public:
  BandCoefficients() = default;
  BandCoefficients(std::initializer_list<std::pair<const int, Complex>> init);

  /// Stores a_nu. Throws InvalidArgument if nu is already present.
  void insert(int nu, Complex value);

  [[nodiscard]] Complex at(int nu) const;
  [[nodiscard]] bool contains(int nu) const { return entries_.contains(nu); }
  /// max |nu| over stored indices, 0 when empty.
  [[nodiscard]] int radius() const;
  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] const std::map<int, Complex>& entries() const { return entries_; }

 private:
  std::map<int, Complex> entries_;
};

/// One term coeff * |nu|^{-exponent} of a power-decay tail.
struct PowerTerm {
  Complex coefficient;
  double exponent = 0.0;
};

/// Analytic tail: positive-side terms apply for nu >= 1, negative-side terms
/// for nu <= -1. An empty rule (both lists empty) is the `none` kind.
struct TailRule {
  std::vector<PowerTerm> positive;
  std::vector<PowerTerm> negative;

  [[nodiscard]] bool empty() const { return positive.empty() && negative.empty(); }
  [[nodiscard]] Complex at(int nu) const;
  /// Smallest exponent over all terms; +inf when empty.
  [[nodiscard]] double min_exponent() const;
  /// Swaps the positive and negative sides (nu -> -nu).
  [[nodiscard]] TailRule reflected() const;
};

class Symbol {
 public:
  Symbol() : Symbol(BandCoefficients{}, TailRule{}) {}
  /// Throws InvalidArgument if a tail exponent is not > 2.
  Symbol(BandCoefficients band, TailRule tail);

  [[nodiscard]] const BandCoefficients& band() const { return band_; }
  [[nodiscard]] const TailRule& tail() const { return tail_; }

  /// a_nu = band(nu) + tail(nu).
  [[nodiscard]] Complex coefficient(int nu) const;

  /// p_N(e^{-i theta}) = sum_{|nu| <= N} a_nu e^{-i nu theta}.
  [[nodiscard]] Complex eval(double theta, int truncation = kFullSymbol) const;
  /// d/dtheta of eval(theta, truncation).
  [[nodiscard]] Complex derivative(double theta, int truncation = kFullSymbol) const;

  /// Largest |nu| with a possibly nonzero coefficient after truncation.
  [[nodiscard]] int effective_radius(int truncation = kFullSymbol) const;
  /// Index where infinite tails are cut off.
  [[nodiscard]] int tail_cutoff() const { return tail_cutoff_; }

  /// Decay envelope m(nu) with m(-nu) = m(nu). For a band-only symbol this
  /// is the indicator of [-radius, radius]; otherwise |nu|^{-s_min}, m(0) = 1.
  [[nodiscard]] double envelope(int nu) const;
  /// C = sup_nu |a_nu| / m(nu), so that |a_nu| <= C m(nu) for all nu.
  [[nodiscard]] double envelope_constant() const { return envelope_constant_; }

  /// sum_{|nu| <= truncation} |a_nu|.
  [[nodiscard]] double wiener_norm(int truncation = kFullSymbol) const;

  /// Symbol with coefficients a_{-nu}.
  [[nodiscard]] Symbol reflected() const;
  /// Same band, tail sides swapped.
  [[nodiscard]] Symbol with_reflected_tail() const;

  /// Coefficients a_nu for nu in [-R, R], R = effective_radius(truncation),
  /// stored at offset nu + R.
  [[nodiscard]] std::vector<Complex> dense_coefficients(int truncation = kFullSymbol) const;

 private:
  BandCoefficients band_;
  TailRule tail_;
  int tail_cutoff_ = 0;
  double envelope_constant_ = 0.0;
  // tail(nu) and tail(-nu) for nu in [1, tail_cutoff_]; index 0 unused
  std::vector<Complex> tail_pos_;
  std::vector<Complex> tail_neg_;
};

/// Built-in symbols.
namespace presets {
/// a_1 = 1: the nilpotent shift, P_N has ones on the first subdiagonal.
Symbol jordan();
/// a_1 = a, a_{-1} = b.
Symbol bidiagonal(Complex a, Complex b);
/// Eight-band part of exp1.
Symbol exp1_band();
/// Five-band part of exp1_2.
Symbol exp1_2_band();
/// Power-decay tail shared by exp1 and exp1_2.
TailRule exp1_tail();
/// exp1_band() + exp1_tail().
Symbol exp1();
/// exp1_2_band() + exp1_tail().
Symbol exp1_2();
/// Looks up `jordan`, `bidiag`, `bidiag(a,b)`, `exp1`, `exp1_2`, `exp1_band`,
/// `exp1_2_band`. Throws ConfigError for unknown names.
Symbol by_name(std::string_view name);
}  // namespace presets

}  // namespace tnlab
