#pragma once

// Dense complex linear algebra kernels: LU solve, Schur-based eigenvalues,
// one-sided Jacobi singular values, Hermitian Jacobi eigenpairs and the
// induced 1/2/inf operator norms. Everything downstream builds on these.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "g1lab/errors.hpp"

namespace g1lab {

using Complex = std::complex<double>;

/// Largest matrix order accepted by the public operations.
inline constexpr std::size_t kMaxOrder = 500;
/// Relative pivot threshold below which a matrix is treated as singular.
inline constexpr double kRankTolerance = 1e-14;
inline constexpr double kEps = std::numeric_limits<double>::epsilon();

enum class NormKind { Induced1, Induced2, InducedInf };

inline std::string_view to_string(NormKind k) {
  switch (k) {
    case NormKind::Induced1: return "1";
    case NormKind::Induced2: return "2";
    case NormKind::InducedInf: return "inf";
  }
  return "?";
}

inline NormKind parse_norm_kind(std::string_view s) {
  if (s == "1") return NormKind::Induced1;
  if (s == "2") return NormKind::Induced2;
  if (s == "inf" || s == "Inf" || s == "INF") return NormKind::InducedInf;
  throw InvalidArgument("unknown norm '" + std::string(s) + "' (expected 1, 2 or inf)");
}

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Dense row-major complex matrix. Kernels accept rectangular shapes where
/// that is natural (products, singular values); the spectral operations
/// require square input via require_square().
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  explicit ComplexMatrix(std::size_t n) : ComplexMatrix(n, n) {}

  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw InvalidArgument("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const Complex> d) {
    ComplexMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t order() const { return rows_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Complex> data() { return data_; }
  std::span<const Complex> data() const { return data_; }

  std::vector<Complex> column(std::size_t j) const {
    std::vector<Complex> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
  }

  bool all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](Complex z) { return is_finite(z); });
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  ComplexMatrix& operator*=(Complex s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  /// this + s·I
  ComplexMatrix shifted(Complex s) const {
    ComplexMatrix r = *this;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) r(i, i) += s;
    return r;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw InvalidArgument("matrix product shape mismatch");
    ComplexMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      Complex* out = &r.data_[i * r.cols_];
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        const Complex* brow = &b.data_[k * b.cols_];
        for (std::size_t j = 0; j < b.cols_; ++j) out[j] += aik * brow[j];
      }
    }
    return r;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  void check_same_shape(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidArgument("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Throws InvalidArgument unless A is square, finite and 1 <= n <= kMaxOrder.
inline void require_square(const ComplexMatrix& a, std::string_view where) {
  if (!a.is_square() || a.rows() == 0)
    throw InvalidArgument(std::string(where) + ": matrix must be square and non-empty");
  if (a.rows() > kMaxOrder)
    throw InvalidArgument(std::string(where) + ": order " + std::to_string(a.rows()) +
                          " exceeds the supported maximum of " + std::to_string(kMaxOrder));
  if (!a.all_finite()) throw InvalidArgument(std::string(where) + ": matrix has non-finite entries");
}

inline double vector_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// LU solve

/// Solves A·X = B by LU with partial pivoting. Throws SingularMatrix when a
/// pivot falls below kRankTolerance·max|a_ij|.
inline ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "solve");
  if (b.rows() != a.rows()) throw InvalidArgument("solve: right-hand side has wrong row count");
  const std::size_t n = a.rows();
  const double threshold = kRankTolerance * a.max_abs();
  ComplexMatrix lu = a;
  ComplexMatrix x = b;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      double v = std::abs(lu(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0 || best < threshold)
      throw SingularMatrix("solve: pivot " + std::to_string(best) + " below rank tolerance");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      for (std::size_t j = 0; j < x.cols(); ++j) std::swap(x(k, j), x(piv, j));
    }
    const Complex inv = 1.0 / lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = lu(i, k) * inv;
      if (f == Complex{}) continue;
      lu(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
      for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) -= f * x(k, j);
    }
  }
  for (std::size_t kk = n; kk-- > 0;) {
    const Complex inv = 1.0 / lu(kk, kk);
    for (std::size_t j = 0; j < x.cols(); ++j) {
      Complex s = x(kk, j);
      for (std::size_t c = kk + 1; c < n; ++c) s -= lu(kk, c) * x(c, j);
      x(kk, j) = s * inv;
    }
  }
  return x;
}

inline ComplexMatrix inverse(const ComplexMatrix& a) { return solve(a, ComplexMatrix::identity(a.rows())); }

// ---------------------------------------------------------------------------
// Singular values (one-sided Jacobi)

/// Singular values in descending order. Works for any shape; wide inputs are
/// handled through the adjoint. Throws NoConvergence after 100·n sweeps.
inline std::vector<double> singular_values(const ComplexMatrix& a) {
  if (a.rows() < a.cols()) return singular_values(a.adjoint());
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (n == 0) return {};
  // column-major working copy
  std::vector<Complex> w(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) w[j * m + i] = a(i, j);
  auto col = [&](std::size_t j) { return w.data() + j * m; };

  const double tol = 4.0 * kEps;
  const std::size_t max_sweeps = 100 * std::max<std::size_t>(n, 1);
  bool rotated = true;
  std::size_t sweep = 0;
  while (rotated) {
    if (++sweep > max_sweeps) throw NoConvergence("singular_values: Jacobi sweeps exhausted");
    rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        Complex* cp = col(p);
        Complex* cq = col(q);
        double alpha = 0.0, beta = 0.0;
        Complex gamma{};
        for (std::size_t i = 0; i < m; ++i) {
          alpha += std::norm(cp[i]);
          beta += std::norm(cq[i]);
          gamma += std::conj(cp[i]) * cq[i];
        }
        const double g = std::abs(gamma);
        // alpha or beta can underflow to zero for negligible columns
        if (g == 0.0 || alpha == 0.0 || beta == 0.0 || g <= tol * std::sqrt(alpha) * std::sqrt(beta)) continue;
        rotated = true;
        // Remove the phase of gamma from column q, then apply a real rotation.
        const Complex phase = std::conj(gamma) / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const Complex x = cp[i];
          const Complex y = cq[i] * phase;
          cp[i] = c * x - s * y;
          cq[i] = s * x + c * y;
        }
      }
    }
  }
  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) sv[j] = vector_norm({col(j), m});
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

inline double sigma_min(const ComplexMatrix& a) {
  require_square(a, "sigma_min");
  return singular_values(a).back();
}

inline double sigma_max(const ComplexMatrix& a) {
  if (a.empty()) return 0.0;
  return singular_values(a).front();
}

// ---------------------------------------------------------------------------
// Operator norms

inline double norm_induced1(const ComplexMatrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

inline double norm_induced_inf(const ComplexMatrix& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

inline double operator_norm(const ComplexMatrix& a, NormKind k) {
  switch (k) {
    case NormKind::Induced1: return norm_induced1(a);
    case NormKind::InducedInf: return norm_induced_inf(a);
    case NormKind::Induced2: return sigma_max(a);
  }
  return 0.0;
}

/// max(column norms, row norms): a cheap lower bound on the spectral norm.
inline double spectral_norm_lower_bound(const ComplexMatrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) best = std::max(best, vector_norm(a.column(j)));
  for (std::size_t i = 0; i < a.rows(); ++i)
    best = std::max(best, vector_norm({&a(i, 0), a.cols()}));
  return best;
}

// ---------------------------------------------------------------------------
// Eigenvalues: Householder Hessenberg reduction + single-shift complex QR

struct EigenResult {
  std::vector<Complex> eigenvalues;  // length n, with algebraic multiplicity
  double residual_bound = 0.0;       // ‖Av − λv‖₂ ≤ residual_bound·‖A‖₂ for some unit v
  bool converged = true;
  std::size_t iterations = 0;
};

/// Raised when the QR iteration exhausts its budget; carries what was found
/// (flagged converged = false).
class EigenNoConvergence : public NoConvergence {
 public:
  EigenNoConvergence(const std::string& what, EigenResult partial)
      : NoConvergence(what), partial_(std::move(partial)) {}
  const EigenResult& partial() const { return partial_; }

 private:
  EigenResult partial_;
};

struct SchurForm {
  ComplexMatrix t;  // upper triangular
  ComplexMatrix q;  // unitary, A ≈ Q T Qᴴ
  bool converged = true;
  std::size_t iterations = 0;
};

namespace detail {

// Unitary G = [[c, s], [-conj(s), c]] with G·[p; q] = [r; 0].
struct Givens {
  double c = 1.0;
  Complex s{};

  static Givens make(Complex p, Complex q) {
    Givens g;
    const double ap = std::abs(p);
    const double aq = std::abs(q);
    if (aq == 0.0) return g;
    if (ap == 0.0) {
      g.c = 0.0;
      g.s = std::conj(q) / aq;
      return g;
    }
    const double r = std::hypot(ap, aq);
    g.c = ap / r;
    g.s = (p / ap) * std::conj(q) / r;
    return g;
  }

  // rows i, i+1 of m over columns [c0, c1)
  void apply_left(ComplexMatrix& m, std::size_t i, std::size_t c0, std::size_t c1) const {
    for (std::size_t j = c0; j < c1; ++j) {
      const Complex x = m(i, j);
      const Complex y = m(i + 1, j);
      m(i, j) = c * x + s * y;
      m(i + 1, j) = -std::conj(s) * x + c * y;
    }
  }

  // columns i, i+1 of m over rows [r0, r1), multiplied by Gᴴ on the right
  void apply_right_adjoint(ComplexMatrix& m, std::size_t i, std::size_t r0, std::size_t r1) const {
    for (std::size_t k = r0; k < r1; ++k) {
      const Complex x = m(k, i);
      const Complex y = m(k, i + 1);
      m(k, i) = c * x + std::conj(s) * y;
      m(k, i + 1) = -s * x + c * y;
    }
  }
};

inline void hessenberg_reduce(ComplexMatrix& h, ComplexMatrix& q) {
  const std::size_t n = h.rows();
  std::vector<Complex> v;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t len = n - k - 1;
    v.assign(len, Complex{});
    double tail = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
      v[i] = h(k + 1 + i, k);
      if (i > 0) tail += std::norm(v[i]);
    }
    if (tail == 0.0) continue;
    const double xnorm = std::sqrt(tail + std::norm(v[0]));
    const Complex phase = std::abs(v[0]) == 0.0 ? Complex{1.0} : v[0] / std::abs(v[0]);
    v[0] += phase * xnorm;
    const double vv = vector_norm(v) * vector_norm(v);
    const double scale = 2.0 / vv;
    // H <- P H
    for (std::size_t j = k; j < n; ++j) {
      Complex s{};
      for (std::size_t i = 0; i < len; ++i) s += std::conj(v[i]) * h(k + 1 + i, j);
      s *= scale;
      for (std::size_t i = 0; i < len; ++i) h(k + 1 + i, j) -= v[i] * s;
    }
    // H <- H P, Q <- Q P
    auto right = [&](ComplexMatrix& m) {
      for (std::size_t r = 0; r < n; ++r) {
        Complex s{};
        for (std::size_t i = 0; i < len; ++i) s += m(r, k + 1 + i) * v[i];
        s *= scale;
        for (std::size_t i = 0; i < len; ++i) m(r, k + 1 + i) -= s * std::conj(v[i]);
      }
    };
    right(h);
    right(q);
    h(k + 1, k) = -phase * xnorm;
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = Complex{};
  }
}

}  // namespace detail

/// Complex Schur decomposition. The iteration cap is 100·n QR steps; on
/// failure the partially reduced form is returned with converged = false.
inline SchurForm schur(const ComplexMatrix& a) {
  require_square(a, "schur");
  const std::size_t n = a.rows();
  SchurForm out{a, ComplexMatrix::identity(n), true, 0};
  ComplexMatrix& t = out.t;
  ComplexMatrix& q = out.q;
  detail::hessenberg_reduce(t, q);

  const double abs_floor = kEps * t.frobenius_norm();
  auto negligible = [&](std::size_t i) {
    const double sd = std::abs(t(i + 1, i));
    return sd <= kEps * (std::abs(t(i, i)) + std::abs(t(i + 1, i + 1))) || sd <= abs_floor;
  };
  auto shift_for = [&](std::size_t iu, std::size_t iter) -> Complex {
    if (iter == 10 || iter == 20) {
      double s = std::abs(t(iu, iu - 1).real());
      if (iu >= 2) s += std::abs(t(iu - 1, iu - 2).real());
      return s;
    }
    Complex t00 = t(iu - 1, iu - 1), t01 = t(iu - 1, iu), t10 = t(iu, iu - 1), t11 = t(iu, iu);
    const double normt = std::abs(t00) + std::abs(t01) + std::abs(t10) + std::abs(t11);
    if (normt == 0.0) return {};
    t00 /= normt;
    t01 /= normt;
    t10 /= normt;
    t11 /= normt;
    const Complex b = t01 * t10;
    const Complex c = t00 - t11;
    const Complex disc = std::sqrt(c * c + 4.0 * b);
    const Complex det = t00 * t11 - b;
    const Complex trace = t00 + t11;
    Complex e1 = (trace + disc) / 2.0;
    Complex e2 = (trace - disc) / 2.0;
    if (std::abs(e1) > std::abs(e2))
      e2 = det / e1;
    else if (e2 != Complex{})
      e1 = det / e2;
    return normt * (std::abs(e1 - t11) < std::abs(e2 - t11) ? e1 : e2);
  };

  const std::size_t max_iter = 100 * n;
  std::size_t iu = n - 1;
  std::size_t iter = 0;
  while (true) {
    while (iu > 0 && negligible(iu - 1)) {
      t(iu, iu - 1) = Complex{};
      --iu;
      iter = 0;
    }
    if (iu == 0) break;
    ++iter;
    if (++out.iterations > max_iter) {
      out.converged = false;
      break;
    }
    std::size_t il = iu - 1;
    while (il > 0 && !negligible(il - 1)) --il;

    const Complex shift = shift_for(iu, iter);
    auto g = detail::Givens::make(t(il, il) - shift, t(il + 1, il));
    g.apply_left(t, il, il, n);
    g.apply_right_adjoint(t, il, 0, std::min(il + 2, iu) + 1);
    g.apply_right_adjoint(q, il, 0, n);
    for (std::size_t i = il + 1; i < iu; ++i) {
      g = detail::Givens::make(t(i, i - 1), t(i + 1, i - 1));
      g.apply_left(t, i, i - 1, n);
      t(i + 1, i - 1) = Complex{};
      g.apply_right_adjoint(t, i, 0, std::min(i + 2, iu) + 1);
      g.apply_right_adjoint(q, i, 0, n);
    }
  }
  if (out.converged)
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) t(i, j) = Complex{};
  return out;
}

/// Eigenvalues with algebraic multiplicity plus a backward-error bound
/// derived from the Schur residual ‖AQ − QT‖ and the loss of orthogonality
/// of Q.
inline EigenResult eigenvalues(const ComplexMatrix& a) {
  require_square(a, "eigenvalues");
  const std::size_t n = a.rows();
  SchurForm s = schur(a);
  EigenResult r;
  r.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.eigenvalues[i] = s.t(i, i);
  r.converged = s.converged;
  r.iterations = s.iterations;

  const double residual = (a * s.q - s.q * s.t).frobenius_norm();
  const double drift = (s.q.adjoint() * s.q - ComplexMatrix::identity(n)).frobenius_norm();
  const double anorm = spectral_norm_lower_bound(a);
  if (anorm == 0.0)
    r.residual_bound = 0.0;
  else
    r.residual_bound = residual / (std::max(1.0 - drift, 0.5) * anorm);

  if (!r.converged) throw EigenNoConvergence("eigenvalues: QR iteration cap reached", r);
  return r;
}

// ---------------------------------------------------------------------------
// Hermitian eigenproblem (cyclic complex Jacobi)

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k pairs with values[k]
};

/// Eigenpairs of a Hermitian matrix. Only the upper triangle is trusted;
/// the input is symmetrised first.
inline HermitianEigen hermitian_eigen(const ComplexMatrix& h_in) {
  require_square(h_in, "hermitian_eigen");
  const std::size_t n = h_in.rows();
  ComplexMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = h_in(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = 0.5 * (h_in(i, j) + std::conj(h_in(j, i)));
      a(j, i) = std::conj(a(i, j));
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = a.frobenius_norm();
  const std::size_t max_sweeps = 100;
  for (std::size_t sweep = 0;; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += std::norm(a(i, j));
    if (std::sqrt(off) <= kEps * scale * 0.1 || off == 0.0) break;
    if (sweep >= max_sweeps) throw NoConvergence("hermitian_eigen: Jacobi sweeps exhausted");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double g = std::abs(a(p, q));
        if (g == 0.0) continue;
        const Complex ph = std::conj(a(p, q)) / g;  // e^{-iφ}
        const double alpha = a(p, p).real();
        const double beta = a(q, q).real();
        const double theta = (beta - alpha) / (2.0 * g);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex u00 = c, u01 = s, u10 = -s * ph, u11 = c * ph;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex x = a(k, p), y = a(k, q);
          a(k, p) = x * u00 + y * u10;
          a(k, q) = x * u01 + y * u11;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex x = a(p, k), y = a(q, k);
          a(p, k) = std::conj(u00) * x + std::conj(u10) * y;
          a(q, k) = std::conj(u01) * x + std::conj(u11) * y;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex x = v(k, p), y = v(k, q);
          v(k, p) = x * u00 + y * u10;
          v(k, q) = x * u01 + y * u11;
        }
        a(p, q) = a(q, p) = Complex{};
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

/// Numerical rank: number of singular values above tol.
inline std::size_t numerical_rank(const ComplexMatrix& a, double tol) {
  auto sv = singular_values(a);
  return static_cast<std::size_t>(std::count_if(sv.begin(), sv.end(), [&](double s) { return s > tol; }));
}

/// Orthonormal basis (as columns) for the span of the `rank` most dominant
/// columns of A, by Gram-Schmidt with column pivoting and reorthogonalisation.
inline ComplexMatrix orthonormal_range(const ComplexMatrix& a, std::size_t rank) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  rank = std::min({rank, m, n});
  std::vector<std::vector<Complex>> cols(n);
  for (std::size_t j = 0; j < n; ++j) cols[j] = a.column(j);
  ComplexMatrix basis(m, rank);
  std::vector<bool> used(n, false);
  for (std::size_t k = 0; k < rank; ++k) {
    std::size_t best = n;
    double best_norm = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      double nj = vector_norm(cols[j]);
      if (nj > best_norm) {
        best_norm = nj;
        best = j;
      }
    }
    used[best] = true;
    std::vector<Complex> u = cols[best];
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t b = 0; b < k; ++b) {
        Complex d{};
        for (std::size_t i = 0; i < m; ++i) d += std::conj(basis(i, b)) * u[i];
        for (std::size_t i = 0; i < m; ++i) u[i] -= d * basis(i, b);
      }
    }
    const double un = vector_norm(u);
    if (un == 0.0) throw NumericalError("orthonormal_range: rank deficient beyond requested rank");
    for (std::size_t i = 0; i < m; ++i) basis(i, k) = u[i] / un;
    // deflate the remaining candidates against the new direction
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      Complex d{};
      for (std::size_t i = 0; i < m; ++i) d += std::conj(basis(i, k)) * cols[j][i];
      for (std::size_t i = 0; i < m; ++i) cols[j][i] -= d * basis(i, k);
    }
  }
  return basis;
}

}  // namespace g1lab
