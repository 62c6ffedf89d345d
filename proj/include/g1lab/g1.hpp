#pragma once

// Deviation from the G1 condition ‖(z − a)⁻¹‖ = 1/d(z, σ(a)), one-sided
// certification by sampling, and the scalar / Hermitian-idempotent
// characterisations.
//
// Sampling can refute membership with a witness whose margin survives the
// error estimates of the eigenvalue and resolvent computations; it can
// never prove membership, only report consistency.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "g1lab/numrange.hpp"
#include "g1lab/parallel.hpp"
#include "g1lab/spectral.hpp"

namespace g1lab {

enum class Verdict { G1Consistent, NotG1, Inconclusive };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::G1Consistent: return "G1-consistent";
    case Verdict::NotG1: return "Not-G1";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

inline Verdict parse_verdict(std::string_view s) {
  if (s == "G1-consistent") return Verdict::G1Consistent;
  if (s == "Not-G1") return Verdict::NotG1;
  if (s == "Inconclusive") return Verdict::Inconclusive;
  throw InvalidArgument("unknown verdict '" + std::string(s) + "'");
}

inline constexpr double kDefaultG1Tol = 1e-6;

struct G1Report {
  Verdict verdict = Verdict::Inconclusive;
  double max_deviation = 0.0;
  Complex argmax_point{};
  std::size_t samples_used = 0;
  /// Certified excess of the best witness over tol (negative unless Not-G1).
  double witness_margin = 0.0;
  Complex witness_point{};
};

/// g(z) = ‖(z − a)⁻¹‖·d(z, σ(a)) − 1, nonnegative up to rounding.
inline double g1_deviation(const AlgebraElement& a, const Spectrum& s, Complex z) {
  return resolvent_norm(a, z) * distance_to_spectrum(z, s) - 1.0;
}

inline double g1_deviation(const AlgebraElement& a, Complex z) { return g1_deviation(a, spectrum(a), z); }

struct DeviationSample {
  Complex z;
  double deviation = 0.0;
  /// Lower bound on the true deviation after widening by the error estimates.
  double certified = 0.0;
  bool valid = false;
};

/// Eigenvalue uncertainty used when mapping spectra through d(z, ·).
inline double spectrum_uncertainty(const AlgebraElement& a, const Spectrum& s) {
  return a.is_nilpotent() ? 0.0 : s.backward_error + s.max_spread();
}

inline DeviationSample sample_deviation(const AlgebraElement& a, const Spectrum& s, double eig_err, Complex z) {
  DeviationSample out{z};
  try {
    const auto rn = resolvent_norm_estimate(a, z);
    const double d = distance_to_spectrum(z, s);
    out.deviation = rn.value * d - 1.0;
    out.certified = rn.value * std::max(0.0, 1.0 - rn.rel_error) * std::max(0.0, d - eig_err) - 1.0;
    out.valid = true;
  } catch (const SpectrumHit&) {
  }
  return out;
}

/// Sample points: 128-node circles of radius gap·2⁻ᵏ (k = 1..6) around every
/// cluster, where gap = min(inter-cluster distance, 1 + r(a)), plus a 41×41
/// grid over the spectrum's bounding box padded by max(1, r(a)) with nodes
/// closer than 1e-4·(1 + ‖a‖) to σ(a) dropped.
inline std::vector<Complex> g1_sample_points(const AlgebraElement& a, const Spectrum& s) {
  const double r = s.spectral_radius;
  double gap = 1.0 + r;
  for (std::size_t i = 0; i < s.clusters.size(); ++i)
    for (std::size_t j = i + 1; j < s.clusters.size(); ++j)
      gap = std::min(gap, std::abs(s.clusters[i].center - s.clusters[j].center));
  std::vector<Complex> pts;
  constexpr int kNodes = 128;
  for (const auto& c : s.clusters) {
    double rho = gap;
    for (int k = 1; k <= 6; ++k) {
      rho *= 0.5;
      for (int j = 0; j < kNodes; ++j)
        pts.push_back(c.center + std::polar(rho, 2.0 * std::numbers::pi * j / kNodes));
    }
  }
  const double delta = 1e-4 * (1.0 + a.norm());
  double re0 = std::numeric_limits<double>::infinity(), re1 = -re0, im0 = re0, im1 = -re0;
  for (const auto& c : s.clusters) {
    re0 = std::min(re0, c.center.real());
    re1 = std::max(re1, c.center.real());
    im0 = std::min(im0, c.center.imag());
    im1 = std::max(im1, c.center.imag());
  }
  const double pad = std::max(1.0, r);
  constexpr int kGrid = 41;
  for (int j = 0; j < kGrid; ++j)
    for (int i = 0; i < kGrid; ++i) {
      const Complex z(re0 - pad + (re1 - re0 + 2 * pad) * i / (kGrid - 1),
                      im0 - pad + (im1 - im0 + 2 * pad) * j / (kGrid - 1));
      if (distance_to_spectrum(z, s) >= delta) pts.push_back(z);
    }
  return pts;
}

inline G1Report certify_g1(const AlgebraElement& a, const Spectrum& s, double tol,
                           const std::vector<Complex>& points) {
  if (!(tol > 0.0)) throw InvalidArgument("certify_g1: tol must be positive");
  const double eig_err = spectrum_uncertainty(a, s);
  std::vector<DeviationSample> samples(points.size());
  parallel_for(points.size(), [&](std::size_t k) { samples[k] = sample_deviation(a, s, eig_err, points[k]); });

  G1Report rep;
  bool have = false;
  double best_cert = -std::numeric_limits<double>::infinity();
  for (const auto& smp : samples) {
    if (!smp.valid) continue;
    ++rep.samples_used;
    if (!have || smp.deviation > rep.max_deviation ||
        (smp.deviation == rep.max_deviation && complex_lex_less(smp.z, rep.argmax_point))) {
      rep.max_deviation = smp.deviation;
      rep.argmax_point = smp.z;
      have = true;
    }
    if (smp.certified > best_cert || (smp.certified == best_cert && complex_lex_less(smp.z, rep.witness_point))) {
      best_cert = smp.certified;
      rep.witness_point = smp.z;
    }
  }
  if (!have) {
    rep.verdict = Verdict::Inconclusive;
    return rep;
  }
  rep.witness_margin = best_cert - tol;
  if (rep.witness_margin > 0.0)
    rep.verdict = Verdict::NotG1;
  else if (rep.max_deviation <= tol)
    rep.verdict = Verdict::G1Consistent;
  else
    rep.verdict = Verdict::Inconclusive;
  return rep;
}

inline G1Report certify_g1(const AlgebraElement& a, double tol = kDefaultG1Tol) {
  const Spectrum s = spectrum(a);
  return certify_g1(a, s, tol, g1_sample_points(a, s));
}

// ---------------------------------------------------------------------------

struct AffineCheck {
  Complex alpha, beta;
  Verdict verdict = Verdict::Inconclusive;
  double max_deviation = 0.0;
};

struct ScalarTestReport {
  bool single_cluster = false;
  Complex mu{};
  double distance_from_scalar = 0.0;  // ‖a − μ·1‖ when single_cluster
  bool not_g1 = false;                // contrapositive witness: σ = {μ} but a ≠ μ
  G1Report certification;
  std::vector<AffineCheck> affine;
  bool affine_consistent = true;
};

/// If σ(a) = {μ} and a is G1 then a = μ. Also re-certifies a few affine images
/// αa + β of a G1-consistent element, which must stay consistent.
inline ScalarTestReport scalar_test(const AlgebraElement& a, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("scalar_test: tol must be positive");
  ScalarTestReport rep;
  const Spectrum s = spectrum(a);
  const double anorm = a.norm();
  if (s.clusters.size() == 1) {
    rep.single_cluster = true;
    rep.mu = s.clusters.front().center;
    rep.distance_from_scalar = a.shifted(-rep.mu).norm();
    rep.not_g1 = rep.distance_from_scalar > tol * (1.0 + anorm);
  }
  rep.certification = certify_g1(a, s, std::max(tol, kDefaultG1Tol), g1_sample_points(a, s));
  if (rep.certification.verdict == Verdict::G1Consistent) {
    const Complex pairs[][2] = {{{2.0, -1.0}, {0.5, 3.0}}, {{-0.5, 0.0}, {1.0, 0.0}}, {{0.0, 0.25}, {-2.0, 0.0}}};
    for (const auto& p : pairs) {
      const AlgebraElement b = (p[0] * a).shifted(p[1]);
      const G1Report rb = certify_g1(b, std::max(tol, kDefaultG1Tol));
      rep.affine.push_back({p[0], p[1], rb.verdict, rb.max_deviation});
      if (rb.verdict != Verdict::G1Consistent) rep.affine_consistent = false;
    }
  }
  return rep;
}

struct HermIdemReport {
  double idempotency_defect = 0.0;  // ‖a² − a‖
  bool idempotent = false;
  bool hermitian = false;
  double norm = 0.0;
  double norm_minus_one = 0.0;
  bool spectrum_in_01 = false;
  bool certified = false;  // certify_g1 was run
  G1Report certification;
  bool hermitian_idempotent = false;
  bool g1_consistent = false;
  /// σ(a) ⊆ {0, 1} yet a G1 witness exists, so a is not a Hermitian idempotent.
  bool refuted = false;
  std::string conclusion;
};

inline HermIdemReport hermitian_idempotent_test(const AlgebraElement& a, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("hermitian_idempotent_test: tol must be positive");
  HermIdemReport rep;
  rep.norm = a.norm();
  rep.norm_minus_one = rep.norm - 1.0;
  rep.idempotency_defect = (a * a - a).norm();
  rep.idempotent = rep.idempotency_defect <= tol * (1.0 + rep.norm);
  rep.hermitian = is_hermitian(a, tol);
  rep.hermitian_idempotent = rep.idempotent && rep.hermitian;

  const Spectrum s = spectrum(a);
  rep.spectrum_in_01 = std::all_of(s.clusters.begin(), s.clusters.end(), [&](const SpectralCluster& c) {
    return std::abs(c.center) <= tol * (1.0 + rep.norm) || std::abs(c.center - 1.0) <= tol * (1.0 + rep.norm);
  });

  if (rep.hermitian_idempotent || rep.spectrum_in_01) {
    rep.certified = true;
    rep.certification = certify_g1(a, s, kDefaultG1Tol, g1_sample_points(a, s));
    rep.g1_consistent = rep.certification.verdict == Verdict::G1Consistent;
  }
  if (rep.hermitian_idempotent) {
    rep.conclusion = rep.g1_consistent ? "Hermitian idempotent; G1-consistent"
                                       : "Hermitian idempotent but G1 certification failed";
  } else if (rep.spectrum_in_01 && rep.certification.verdict == Verdict::NotG1) {
    rep.refuted = true;
    rep.conclusion = "spectrum in {0,1} with a G1 witness: not a Hermitian idempotent";
  } else {
    rep.conclusion = "not a Hermitian idempotent";
  }
  return rep;
}

}  // namespace g1lab
