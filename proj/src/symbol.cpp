#include "tnlab/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "tnlab/errors.hpp"

namespace tnlab {

namespace {

constexpr double kTailRelativeTolerance = 1e-14;
constexpr int kMaxTailCutoff = 1 << 20;

double side_remainder_bound(const std::vector<PowerTerm>& terms, double k) {
  // sum_{nu > k} |c| nu^{-s} <= |c| k^{1-s} / (s - 1)
  double bound = 0.0;
  for (const auto& t : terms) bound += std::abs(t.coefficient) * std::pow(k, 1.0 - t.exponent) / (t.exponent - 1.0);
  return bound;
}

double side_abs_sum_bound(const std::vector<PowerTerm>& terms) {
  // sum_{nu >= 1} |c| nu^{-s} <= |c| (1 + 1/(s-1))
  double bound = 0.0;
  for (const auto& t : terms) bound += std::abs(t.coefficient) * (1.0 + 1.0 / (t.exponent - 1.0));
  return bound;
}

Complex side_value(const std::vector<PowerTerm>& terms, int magnitude) {
  Complex v{0.0, 0.0};
  const double x = magnitude;
  for (const auto& t : terms) v += t.coefficient * std::pow(x, -t.exponent);
  return v;
}

}  // namespace

BandCoefficients::BandCoefficients(std::initializer_list<std::pair<const int, Complex>> init) {
  for (const auto& [nu, value] : init) insert(nu, value);
}

void BandCoefficients::insert(int nu, Complex value) {
  if (!entries_.emplace(nu, value).second)
    throw InvalidArgument("band coefficient index " + std::to_string(nu) + " stored twice");
}

Complex BandCoefficients::at(int nu) const {
  auto it = entries_.find(nu);
  return it == entries_.end() ? Complex{} : it->second;
}

int BandCoefficients::radius() const {
  if (entries_.empty()) return 0;
  return std::max(std::abs(entries_.begin()->first), std::abs(entries_.rbegin()->first));
}

Complex TailRule::at(int nu) const {
  if (nu > 0) return side_value(positive, nu);
  if (nu < 0) return side_value(negative, -nu);
  return {};
}

double TailRule::min_exponent() const {
  double s = std::numeric_limits<double>::infinity();
  for (const auto& t : positive) s = std::min(s, t.exponent);
  for (const auto& t : negative) s = std::min(s, t.exponent);
  return s;
}

TailRule TailRule::reflected() const { return TailRule{negative, positive}; }

Symbol::Symbol(BandCoefficients band, TailRule tail) : band_(std::move(band)), tail_(std::move(tail)) {
  for (const auto* side : {&tail_.positive, &tail_.negative})
    for (const auto& t : *side)
      if (!(t.exponent > 2.0) || !std::isfinite(t.exponent))
        throw InvalidArgument("tail exponent must be finite and > 2, got " + std::to_string(t.exponent));

  if (!tail_.empty()) {
    const double scale = std::max(1.0, [&] {
      double s = 0.0;
      for (const auto& [nu, a] : band_.entries()) s += std::abs(a);
      return s + side_abs_sum_bound(tail_.positive) + side_abs_sum_bound(tail_.negative);
    }());
    int k = 1;
    while (k < kMaxTailCutoff &&
           side_remainder_bound(tail_.positive, k) + side_remainder_bound(tail_.negative, k) >
               kTailRelativeTolerance * scale)
      k *= 2;
    int lo = std::max(1, k / 2);
    while (lo < k) {
      const int mid = lo + (k - lo) / 2;
      if (side_remainder_bound(tail_.positive, mid) + side_remainder_bound(tail_.negative, mid) <=
          kTailRelativeTolerance * scale)
        k = mid;
      else
        lo = mid + 1;
    }
    tail_cutoff_ = k;
    tail_pos_.resize(static_cast<std::size_t>(k) + 1);
    tail_neg_.resize(static_cast<std::size_t>(k) + 1);
    for (int nu = 1; nu <= k; ++nu) {
      tail_pos_[nu] = side_value(tail_.positive, nu);
      tail_neg_[nu] = side_value(tail_.negative, nu);
    }
  }

  // C = sup |a_nu| / m(nu). Beyond R = max(radius, 1) only the tail
  // contributes and |tail(nu)| / m(nu) <= sum |c| (R+1)^{s_min - s}.
  const int radius = band_.radius();
  double c = 0.0;
  if (tail_.empty()) {
    for (const auto& [nu, a] : band_.entries()) c = std::max(c, std::abs(a));
  } else {
    const int r = std::max(radius, 1);
    for (int nu = -r; nu <= r; ++nu) c = std::max(c, std::abs(coefficient(nu)) / envelope(nu));
    const double s_min = tail_.min_exponent();
    for (const auto* side : {&tail_.positive, &tail_.negative}) {
      double beyond = 0.0;
      for (const auto& t : *side) beyond += std::abs(t.coefficient) * std::pow(r + 1.0, s_min - t.exponent);
      c = std::max(c, beyond);
    }
  }
  envelope_constant_ = c;
}

Complex Symbol::coefficient(int nu) const { return band_.at(nu) + tail_.at(nu); }

int Symbol::effective_radius(int truncation) const {
  const int r = std::max(band_.radius(), tail_.empty() ? 0 : tail_cutoff_);
  return std::max(0, std::min(truncation, r));
}

std::vector<Complex> Symbol::dense_coefficients(int truncation) const {
  const int r = effective_radius(truncation);
  std::vector<Complex> a(2 * static_cast<std::size_t>(r) + 1);
  for (const auto& [nu, value] : band_.entries())
    if (std::abs(nu) <= r) a[nu + r] += value;
  const int k = std::min<int>(r, static_cast<int>(tail_pos_.size()) - 1);
  for (int nu = 1; nu <= k; ++nu) {
    a[r + nu] += tail_pos_[nu];
    a[r - nu] += tail_neg_[nu];
  }
  return a;
}

Complex Symbol::eval(double theta, int truncation) const {
  const int r = effective_radius(truncation);
  Complex sum{0.0, 0.0};
  for (const auto& [nu, value] : band_.entries())
    if (std::abs(nu) <= r) sum += value * std::polar(1.0, -nu * theta);
  const int k = std::min<int>(r, static_cast<int>(tail_pos_.size()) - 1);
  if (k >= 1) {
    const Complex step = std::polar(1.0, -theta);
    Complex w = step;
    for (int nu = 1; nu <= k; ++nu) {
      sum += tail_pos_[nu] * w + tail_neg_[nu] * std::conj(w);
      w *= step;
    }
  }
  return sum;
}

Complex Symbol::derivative(double theta, int truncation) const {
  const int r = effective_radius(truncation);
  const Complex minus_i{0.0, -1.0};
  Complex sum{0.0, 0.0};
  for (const auto& [nu, value] : band_.entries())
    if (std::abs(nu) <= r) sum += minus_i * static_cast<double>(nu) * value * std::polar(1.0, -nu * theta);
  const int k = std::min<int>(r, static_cast<int>(tail_pos_.size()) - 1);
  if (k >= 1) {
    const Complex step = std::polar(1.0, -theta);
    Complex w = step;
    for (int nu = 1; nu <= k; ++nu) {
      sum += minus_i * static_cast<double>(nu) * (tail_pos_[nu] * w - tail_neg_[nu] * std::conj(w));
      w *= step;
    }
  }
  return sum;
}

double Symbol::envelope(int nu) const {
  if (tail_.empty()) return std::abs(nu) <= band_.radius() ? 1.0 : 0.0;
  if (nu == 0) return 1.0;
  return std::pow(static_cast<double>(std::abs(nu)), -tail_.min_exponent());
}

double Symbol::wiener_norm(int truncation) const {
  const int r = effective_radius(truncation);
  double sum = 0.0;
  if (tail_.empty()) {
    for (const auto& [nu, value] : band_.entries())
      if (std::abs(nu) <= r) sum += std::abs(value);
    return sum;
  }
  const auto a = dense_coefficients(truncation);
  for (auto it = a.rbegin(); it != a.rend(); ++it) sum += std::abs(*it);
  return sum;
}

Symbol Symbol::reflected() const {
  BandCoefficients band;
  for (const auto& [nu, value] : band_.entries()) band.insert(-nu, value);
  return Symbol(std::move(band), tail_.reflected());
}

Symbol Symbol::with_reflected_tail() const { return Symbol(band_, tail_.reflected()); }

namespace presets {

Symbol jordan() { return Symbol(BandCoefficients{{1, Complex{1.0, 0.0}}}, {}); }

Symbol bidiagonal(Complex a, Complex b) {
  BandCoefficients band;
  band.insert(1, a);
  band.insert(-1, b);
  return Symbol(std::move(band), {});
}

// p_0(1/zeta) = -zeta^-4 - (3+2i) zeta^-3 + i zeta^-2 + zeta^-1
//               + 10 zeta + (3+i) zeta^2 + 4 zeta^3 + i zeta^4,
// a_nu is the coefficient of zeta^{-nu}.
Symbol exp1_band() {
  using namespace std::complex_literals;
  return Symbol(BandCoefficients{{4, -1.0 + 0i},
                                 {3, -(3.0 + 2.0i)},
                                 {2, 1.0i},
                                 {1, 1.0 + 0i},
                                 {-1, 10.0 + 0i},
                                 {-2, 3.0 + 1.0i},
                                 {-3, 4.0 + 0i},
                                 {-4, 1.0i}},
                {});
}

// p_0(1/zeta) = -4 zeta - 2i zeta^2 + 2i zeta^-1 - zeta^-2 + 2 zeta^-3.
Symbol exp1_2_band() {
  using namespace std::complex_literals;
  return Symbol(BandCoefficients{{-1, -4.0 + 0i}, {-2, -2.0i}, {1, 2.0i}, {2, -1.0 + 0i}, {3, 2.0 + 0i}}, {});
}

// a_{-nu} = 0.7 |nu|^-5 + i |nu|^-9,  a_nu = -2i nu^-5 + 0.5 nu^-9  (nu >= 1).
TailRule exp1_tail() {
  using namespace std::complex_literals;
  TailRule t;
  t.negative = {{0.7 + 0i, 5.0}, {1.0i, 9.0}};
  t.positive = {{-2.0i, 5.0}, {0.5 + 0i, 9.0}};
  return t;
}

Symbol exp1() { return Symbol(exp1_band().band(), exp1_tail()); }

Symbol exp1_2() { return Symbol(exp1_2_band().band(), exp1_tail()); }

Symbol by_name(std::string_view name) {
  if (name == "jordan") return jordan();
  if (name == "bidiag") return bidiagonal(1.0, 1.0);
  if (name == "exp1") return exp1();
  if (name == "exp1_2") return exp1_2();
  if (name == "exp1_band") return exp1_band();
  if (name == "exp1_2_band") return exp1_2_band();
  if (name.starts_with("bidiag(") && name.ends_with(")")) {
    const std::string args(name.substr(7, name.size() - 8));
    const auto comma = args.find(',');
    if (comma != std::string::npos) {
      char* end_a = nullptr;
      char* end_b = nullptr;
      const std::string sa = args.substr(0, comma);
      const std::string sb = args.substr(comma + 1);
      const double a = std::strtod(sa.c_str(), &end_a);
      const double b = std::strtod(sb.c_str(), &end_b);
      if (end_a != sa.c_str() && *end_a == '\0' && end_b != sb.c_str() && *end_b == '\0')
        return bidiagonal(a, b);
    }
  }
  throw ConfigError("unknown symbol preset '" + std::string(name) + "'");
}

}  // namespace presets

}  // namespace tnlab
