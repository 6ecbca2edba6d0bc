#pragma once

// Observables of the perturbed spectrum: eigenvalue counts against the Weyl
// prediction (N / 2 pi) |{theta : p(e^{i theta}) in Omega}|, circulant proxy
// counts and logarithmic potentials.

#include <cstdint>
#include <string>
#include <vector>

#include "tnlab/curve.hpp"
#include "tnlab/domain.hpp"
#include "tnlab/linalg.hpp"
#include "tnlab/symbol.hpp"

namespace tnlab {

/// Uniform probability measure on a list of eigenvalues.
struct EmpiricalMeasure {
  std::vector<Complex> atoms;

  [[nodiscard]] double weight() const { return atoms.empty() ? 0.0 : 1.0 / static_cast<double>(atoms.size()); }
  [[nodiscard]] double total_mass() const { return weight() * static_cast<double>(atoms.size()); }
};

/// Lebesgue measure of {theta in [0, 2 pi) : p(e^{i theta}) in Omega}.
/// grid_size >= 1024; every crossing is located by bisection.
double preimage_arc_measure(const Symbol& symbol, const Domain& domain, std::size_t grid_size = 1 << 14);
double preimage_arc_measure(const SymbolCurve& curve, const Domain& domain);

struct CurveBoundaryIntersection {
  double theta = 0.0;       // curve parameter
  double boundary_t = 0.0;  // boundary parameter
  Complex point;
  double speed = 0.0;       // |d/dtheta p|
  double angle_deg = 0.0;   // angle between the two tangents, in [0, 90]
  bool tangential = false;  // touching point without a sign change
};

struct ConditionOutcome {
  bool passed = true;
  std::string detail;
};

struct DomainConditionsReport {
  std::vector<CurveBoundaryIntersection> intersections;
  ConditionOutcome finite;                // (1) finitely many intersections
  ConditionOutcome no_self_intersection;  // (2) curve simple at those points
  ConditionOutcome non_critical;          // (3) |p'| >= derivative threshold
  ConditionOutcome transversal;           // (4) crossing angle >= angle threshold

  [[nodiscard]] bool all_passed() const {
    return finite.passed && no_self_intersection.passed && non_critical.passed && transversal.passed;
  }
};

struct ConditionThresholds {
  double min_angle_deg = 5.0;
  double min_derivative = 1e-6;
  std::size_t grid_size = 1 << 14;
};

DomainConditionsReport check_domain_conditions(const Symbol& symbol, const Domain& domain,
                                               const ConditionThresholds& thresholds = {});

/// Eigenvalues inside the domain, with multiplicity.
int count_in_domain(const SpectrumResult& eigs, const Domain& domain);

/// #{j : lambda_j in Omega} for the circulant spectrum on Z_{N+M}.
int circulant_count(const Symbol& symbol, int n, int m, const Domain& domain);

/// U(z) = -(1/N) sum ln|z - lambda|. Throws AtomCollision if z hits an atom.
double log_potential_empirical(const SpectrumResult& eigs, Complex z);

struct PotentialEstimate {
  double value = 0.0;
  double error_estimate = 0.0;  // |T_{2n} - T_n| at the final level
  std::size_t nodes = 0;
};

/// U_xi(z) = -(1/2 pi) int ln|z - p(e^{i theta})| d theta by the periodic
/// trapezoid rule, doubling from `quadrature_size` nodes until two levels
/// agree to 1e-10 (at most 2^22 nodes). Throws TooCloseToCurve on the curve.
PotentialEstimate log_potential_limit(const Symbol& symbol, Complex z, std::size_t quadrature_size = 1 << 12);

/// Per-seed outcome of one perturbed spectrum against the Weyl prediction.
struct WeylReport {
  int n = 0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  int count_in_domain = 0;
  double weyl_prediction = 0.0;
  double normalized_error = 0.0;  // |count - prediction| / N
  double hs_norm = 0.0;           // ||Q||_HS of the perturbation
  int circulant_count = 0;        // proxy count on Z_{N+M}
  DomainConditionsReport conditions;
  SpectrumResult spectrum;
};

/// Inputs shared by every trial on one (symbol, domain) pair.
struct WeylSetup {
  DomainConditionsReport conditions;
  double arc_measure = 0.0;
};

/// Throws DomainConditionsFailed when the conditions report fails.
WeylSetup prepare_weyl(const Symbol& symbol, const Domain& domain, const ConditionThresholds& thresholds = {});

/// Spectrum of P_N + delta Q_seed counted in the domain. M sets the circulant
/// used for the proxy count.
WeylReport weyl_report(const Symbol& symbol, int n, int m, double delta, std::uint64_t seed, const Domain& domain);
WeylReport weyl_report(const WeylSetup& setup, const Symbol& symbol, int n, int m, double delta,
                       std::uint64_t seed, const Domain& domain);

/// delta = min(1e-8, N^{-2}).
double default_delta(int n);

}  // namespace tnlab
