#include "sigenum/eig.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace sigenum {
namespace {

using cplx = std::complex<double>;

inline double conj_of(double x) { return x; }
inline cplx conj_of(cplx z) { return std::conj(z); }
inline double abs2(double x) { return x * x; }
inline double abs2(cplx z) { return std::norm(z); }

// Dot product of two contiguous rows with four independent accumulators.
double row_dot(const double* a, const double* b, int len) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  int k = 0;
  for (; k + 4 <= len; k += 4) {
    s0 += a[k] * b[k];
    s1 += a[k + 1] * b[k + 1];
    s2 += a[k + 2] * b[k + 2];
    s3 += a[k + 3] * b[k + 3];
  }
  for (; k < len; ++k) s0 += a[k] * b[k];
  return (s0 + s1) + (s2 + s3);
}

// Lower triangle of (1/len) Y Y' for a rows x len row-major matrix Y, mirrored
// into a full Hermitian matrix. `im` is empty for real Y.
void outer_gram(int rows, int len, const std::vector<double>& re, const std::vector<double>& im,
                std::vector<double>& out_re, std::vector<double>& out_im) {
  const auto r = static_cast<std::size_t>(rows);
  const auto l = static_cast<std::size_t>(len);
  const double scale = 1.0 / static_cast<double>(len);
  out_re.assign(r * r, 0.0);
  if (!im.empty()) out_im.assign(r * r, 0.0);
  for (std::size_t i = 0; i < r; ++i) {
    const double* ai = re.data() + i * l;
    for (std::size_t j = 0; j <= i; ++j) {
      const double* aj = re.data() + j * l;
      double v_re = row_dot(ai, aj, len);
      double v_im = 0.0;
      if (!im.empty()) {
        const double* bi = im.data() + i * l;
        const double* bj = im.data() + j * l;
        // (a_i + i b_i) conj(a_j + i b_j) = a_i a_j + b_i b_j + i (b_i a_j - a_i b_j)
        v_re += row_dot(bi, bj, len);
        v_im = row_dot(bi, aj, len) - row_dot(ai, bj, len);
      }
      out_re[i * r + j] = out_re[j * r + i] = v_re * scale;
      if (!im.empty()) {
        out_im[i * r + j] = v_im * scale;
        out_im[j * r + i] = -v_im * scale;
      }
    }
    if (!im.empty()) out_im[i * r + i] = 0.0;
  }
}

std::vector<double> transpose(const std::vector<double>& a, int rows, int cols) {
  std::vector<double> t(a.size());
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      t[static_cast<std::size_t>(j) * static_cast<std::size_t>(rows) +
        static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) +
                                         static_cast<std::size_t>(j)];
  return t;
}

// Householder reduction of a full Hermitian (or real symmetric) row-major
// matrix to tridiagonal form. Returns the diagonal and the moduli of the
// off-diagonal; the modulus form is unitarily similar to the complex one.
template <typename T>
void tridiagonalize(int n, std::vector<T> a, std::vector<double>& d, std::vector<double>& e) {
  const auto un = static_cast<std::size_t>(n);
  auto at = [&](int i, int j) -> T& {
    return a[static_cast<std::size_t>(i) * un + static_cast<std::size_t>(j)];
  };
  d.assign(un, 0.0);
  e.assign(un, 0.0);
  std::vector<T> v(un), p(un);

  for (int k = 0; k + 2 < n; ++k) {
    const T x0 = at(k + 1, k);
    double tail = 0.0;
    for (int i = k + 2; i < n; ++i) tail += abs2(at(i, k));
    if (tail == 0.0) {
      e[static_cast<std::size_t>(k)] = std::abs(x0);
      continue;
    }
    const double x0_abs = std::abs(x0);
    const double xnorm = std::sqrt(tail + x0_abs * x0_abs);
    const T phase = x0_abs == 0.0 ? T(1.0) : x0 / x0_abs;

    // v = x - alpha e1 with alpha = -phase |x|, so v'x is real and v'v = 2 v'x.
    v[static_cast<std::size_t>(k + 1)] = x0 + phase * xnorm;
    for (int i = k + 2; i < n; ++i) v[static_cast<std::size_t>(i)] = at(i, k);
    const double vnorm2 = 2.0 * xnorm * (xnorm + x0_abs);
    const double tau = 2.0 / vnorm2;

    // p = tau B v over the trailing block, then q = p - (tau/2)(v'p) v.
    T vp = T(0.0);
    for (int i = k + 1; i < n; ++i) {
      T s = T(0.0);
      const T* row = &at(i, k + 1);
      for (int j = k + 1; j < n; ++j) s += row[j - k - 1] * v[static_cast<std::size_t>(j)];
      p[static_cast<std::size_t>(i)] = tau * s;
      vp += conj_of(v[static_cast<std::size_t>(i)]) * p[static_cast<std::size_t>(i)];
    }
    const double half_k = 0.5 * tau * std::real(vp);
    for (int i = k + 1; i < n; ++i)
      p[static_cast<std::size_t>(i)] -= half_k * v[static_cast<std::size_t>(i)];

    // B -= v q' + q v'
    for (int i = k + 1; i < n; ++i) {
      const T vi = v[static_cast<std::size_t>(i)];
      const T qi = p[static_cast<std::size_t>(i)];
      T* row = &at(i, 0);
      for (int j = k + 1; j < n; ++j)
        row[j] -= vi * conj_of(p[static_cast<std::size_t>(j)]) +
                  qi * conj_of(v[static_cast<std::size_t>(j)]);
    }
    e[static_cast<std::size_t>(k)] = xnorm;
  }
  if (n >= 2) e[un - 2] = std::abs(at(n - 1, n - 2));
  for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = std::real(at(i, i));
}

std::vector<double> jacobi_values(const HermitianMatrix& m) {
  const int n = m.order();
  if (!m.is_complex()) return detail::jacobi_eigensystem(n, m.real_plane(), false).values;

  // [Re -Im; Im Re] carries every eigenvalue of M twice.
  const int n2 = 2 * n;
  const auto u2 = static_cast<std::size_t>(n2);
  std::vector<double> b(u2 * u2, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double re = m.re(i, j), im = m.im(i, j);
      const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
      const auto un = static_cast<std::size_t>(n);
      b[ui * u2 + uj] = re;
      b[ui * u2 + uj + un] = -im;
      b[(ui + un) * u2 + uj] = im;
      b[(ui + un) * u2 + uj + un] = re;
    }
  }
  auto doubled = detail::jacobi_eigensystem(n2, std::move(b), false).values;
  std::sort(doubled.begin(), doubled.end(), std::greater<>());

  double scale = 0.0;
  for (double l : doubled) scale = std::max(scale, std::abs(l));
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < doubled.size(); i += 2) {
    const double a = doubled[i], b2 = doubled[i + 1];
    if (std::abs(a - b2) > kPairingTolerance * std::max(scale, 1e-300))
      throw ConvergenceFailure("complex embedding produced unpaired eigenvalues " +
                               std::to_string(a) + " and " + std::to_string(b2));
    values.push_back(0.5 * (a + b2));
  }
  return values;
}

std::vector<double> tridiagonal_values(const HermitianMatrix& m) {
  const int n = m.order();
  std::vector<double> d, e;
  if (m.is_complex()) {
    std::vector<cplx> a(m.real_plane().size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = {m.real_plane()[i], m.imag_plane()[i]};
    tridiagonalize<cplx>(n, std::move(a), d, e);
  } else {
    tridiagonalize<double>(n, m.real_plane(), d, e);
  }
  return detail::tridiagonal_ql_eigenvalues(std::move(d), std::move(e));
}

}  // namespace

HermitianMatrix HermitianMatrix::from_real(int n, std::vector<double> entries) {
  if (n < 1 || entries.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw DomainError("matrix entries do not match order " + std::to_string(n));
  for (double v : entries)
    if (!std::isfinite(v)) throw NonFiniteInput("matrix entry is not finite");
  double asym = 0.0, norm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double a = entries[static_cast<std::size_t>(i * n + j)];
      const double b = entries[static_cast<std::size_t>(j * n + i)];
      asym += (a - b) * (a - b);
      norm += a * a;
    }
  if (std::sqrt(asym) > 1e-12 * std::sqrt(norm))
    throw DomainError("matrix is not symmetric");
  std::vector<double> re(entries.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      re[static_cast<std::size_t>(i * n + j)] = 0.5 * (entries[static_cast<std::size_t>(i * n + j)] +
                                                        entries[static_cast<std::size_t>(j * n + i)]);
  return HermitianMatrix(n, std::move(re), {});
}

HermitianMatrix HermitianMatrix::from_complex(int n, std::vector<cplx> entries) {
  if (n < 1 || entries.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw DomainError("matrix entries do not match order " + std::to_string(n));
  for (const cplx& v : entries)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw NonFiniteInput("matrix entry is not finite");
  double asym = 0.0, norm = 0.0;
  std::vector<double> re(entries.size()), im(entries.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cplx a = entries[static_cast<std::size_t>(i * n + j)];
      const cplx b = std::conj(entries[static_cast<std::size_t>(j * n + i)]);
      asym += std::norm(a - b);
      norm += std::norm(a);
      const cplx avg = 0.5 * (a + b);
      re[static_cast<std::size_t>(i * n + j)] = avg.real();
      im[static_cast<std::size_t>(i * n + j)] = avg.imag();
    }
  if (std::sqrt(asym) > 1e-12 * std::sqrt(norm))
    throw DomainError("matrix is not Hermitian");
  return HermitianMatrix(n, std::move(re), std::move(im));
}

double HermitianMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < n_; ++i) t += re(i, i);
  return t;
}

double HermitianMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : re_) s += v * v;
  for (double v : im_) s += v * v;
  return std::sqrt(s);
}

HermitianMatrix sample_covariance(const SnapshotMatrix& x) {
  std::vector<double> re, im;
  outer_gram(x.n(), x.m(), x.real_plane(), x.imag_plane(), re, im);
  return HermitianMatrix(x.n(), std::move(re), std::move(im));
}

HermitianMatrix gram_matrix(const SnapshotMatrix& x) {
  // With Y = X^T, (1/m) X'X = conj((1/m) Y Y').
  const auto yre = transpose(x.real_plane(), x.n(), x.m());
  const auto yim = x.is_complex() ? transpose(x.imag_plane(), x.n(), x.m()) : std::vector<double>{};
  std::vector<double> re, im;
  outer_gram(x.m(), x.n(), yre, yim, re, im);
  // outer_gram normalizes by the row length n; rescale to 1/m.
  const double rescale = static_cast<double>(x.n()) / static_cast<double>(x.m());
  for (double& v : re) v *= rescale;
  for (double& v : im) v *= -rescale;
  return HermitianMatrix(x.m(), std::move(re), std::move(im));
}

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& m, EigenMethod method) {
  std::vector<double> values =
      method == EigenMethod::kJacobi ? jacobi_values(m) : tridiagonal_values(m);
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

SampleSpectrum scm_spectrum(const SnapshotMatrix& x, EigenMethod method) {
  std::vector<double> values;
  if (x.m() < x.n()) {
    values = hermitian_eigenvalues(gram_matrix(x), method);
    values.resize(static_cast<std::size_t>(x.n()), 0.0);
  } else {
    values = hermitian_eigenvalues(sample_covariance(x), method);
  }
  return validate_spectrum(values, x.n(), x.m(), beta_of(x.field()));
}

namespace detail {

SymmetricEigensystem jacobi_eigensystem(int n, std::vector<double> a, bool want_vectors) {
  const auto un = static_cast<std::size_t>(n);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * un + j]; };

  std::vector<double> v;
  if (want_vectors) {
    v.assign(un * un, 0.0);
    for (std::size_t i = 0; i < un; ++i) v[i * un + i] = 1.0;
  }

  double frob = 0.0;
  for (double x : a) frob += x * x;
  frob = std::sqrt(frob);
  const double target = kJacobiTolerance * frob;

  for (int sweep = 0;; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < un; ++i)
      for (std::size_t j = i + 1; j < un; ++j) off += 2.0 * at(i, j) * at(i, j);
    if (std::sqrt(off) <= target) break;
    if (sweep == kJacobiMaxSweeps)
      throw ConvergenceFailure("Jacobi did not converge in " + std::to_string(kJacobiMaxSweeps) +
                               " sweeps (n = " + std::to_string(n) + ")");

    for (std::size_t p = 0; p + 1 < un; ++p) {
      for (std::size_t q = p + 1; q < un; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        at(p, p) -= t * apq;
        at(q, q) += t * apq;
        at(p, q) = at(q, p) = 0.0;
        for (std::size_t k = 0; k < un; ++k) {
          if (k == p || k == q) continue;
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = at(p, k) = c * akp - s * akq;
          at(k, q) = at(q, k) = s * akp + c * akq;
        }
        if (want_vectors) {
          for (std::size_t k = 0; k < un; ++k) {
            const double vkp = v[k * un + p], vkq = v[k * un + q];
            v[k * un + p] = c * vkp - s * vkq;
            v[k * un + q] = s * vkp + c * vkq;
          }
        }
      }
    }
  }

  SymmetricEigensystem out;
  out.values.resize(un);
  for (std::size_t i = 0; i < un; ++i) out.values[i] = at(i, i);
  out.vectors = std::move(v);
  return out;
}

std::vector<double> tridiagonal_ql_eigenvalues(std::vector<double> d, std::vector<double> e) {
  const int n = static_cast<int>(d.size());
  e.resize(d.size(), 0.0);
  if (n > 0) e[static_cast<std::size_t>(n - 1)] = 0.0;
  constexpr int kMaxIterations = 60;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  auto D = [&](int i) -> double& { return d[static_cast<std::size_t>(i)]; };
  auto E = [&](int i) -> double& { return e[static_cast<std::size_t>(i)]; };

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int mm;
    do {
      for (mm = l; mm < n - 1; ++mm) {
        const double dd = std::abs(D(mm)) + std::abs(D(mm + 1));
        if (std::abs(E(mm)) <= eps * dd) break;
      }
      if (mm == l) break;
      if (iter++ == kMaxIterations)
        throw ConvergenceFailure("tridiagonal QL did not converge for eigenvalue " +
                                 std::to_string(l));

      // Wilkinson-style shift from the leading 2 x 2 block.
      double g = (D(l + 1) - D(l)) / (2.0 * E(l));
      double r = std::hypot(g, 1.0);
      g = D(mm) - D(l) + E(l) / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      int i = mm - 1;
      bool underflow = false;
      for (; i >= l; --i) {
        double f = s * E(i);
        const double b = c * E(i);
        r = std::hypot(f, g);
        E(i + 1) = r;
        if (r == 0.0) {
          D(i + 1) -= p;
          E(mm) = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = D(i + 1) - p;
        r = (D(i) - g) * s + 2.0 * c * b;
        p = s * r;
        D(i + 1) = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      D(l) -= p;
      E(l) = g;
      E(mm) = 0.0;
    } while (true);
  }
  return d;
}

}  // namespace detail

}  // namespace sigenum
