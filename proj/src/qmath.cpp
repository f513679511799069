#include "qdarwin/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qdarwin {

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = 1.0;
  }
  return m;
}

ComplexMatrix ComplexMatrix::ones(int rows, int cols) {
  ComplexMatrix m(rows, cols);
  std::fill(m.data().begin(), m.data().end(), Complex{1.0, 0.0});
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      out(c, r) = std::conj((*this)(r, c));
    }
  }
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (int i = 0; i < std::min(rows_, cols_); ++i) {
    t += (*this)(i, i);
  }
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) {
    s += std::norm(z);
  }
  return std::sqrt(s);
}

double ComplexMatrix::hermiticity_violation() const {
  if (!is_square()) {
    return std::numeric_limits<double>::infinity();
  }
  double worst = 0.0;
  for (int r = 0; r < rows_; ++r) {
    for (int c = r; c < cols_; ++c) {
      worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    }
  }
  return worst;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matrix product: inner dimensions disagree");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (int r = 0; r < a.rows(); ++r) {
    for (int k = 0; k < a.cols(); ++k) {
      Complex ark = a(r, k);
      if (ark == Complex{0.0, 0.0}) {
        continue;
      }
      for (int c = 0; c < b.cols(); ++c) {
        out(r, c) += ark * b(k, c);
      }
    }
  }
  return out;
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (!matrix_.is_square() || matrix_.rows() == 0) {
    throw std::invalid_argument("density matrix must be square and non-empty");
  }
  double herm = matrix_.hermiticity_violation();
  if (herm > tol::hermitian) {
    throw std::invalid_argument("density matrix not Hermitian (violation " +
                                std::to_string(herm) + ")");
  }
  double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > tol::trace_one) {
    throw std::invalid_argument("density matrix trace " + std::to_string(tr) +
                                " differs from 1");
  }
}

DensityMatrix DensityMatrix::diagonal(const std::vector<double>& probabilities) {
  ComplexMatrix m(static_cast<int>(probabilities.size()),
                  static_cast<int>(probabilities.size()));
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    m(static_cast<int>(i), static_cast<int>(i)) = probabilities[i];
  }
  return DensityMatrix(std::move(m));
}

void validate_pure_state(const PureState& state) {
  if (state.dim <= 0 || static_cast<std::size_t>(state.dim) != state.amplitudes.size()) {
    throw std::invalid_argument("pure state dimension and amplitude count disagree");
  }
  double norm2 = 0.0;
  for (const auto& a : state.amplitudes) {
    norm2 += std::norm(a);
  }
  if (std::abs(norm2 - 1.0) > tol::unit_norm) {
    throw std::invalid_argument("pure state squared norm " + std::to_string(norm2) +
                                " differs from 1");
  }
}

namespace {

// One cyclic Jacobi pass infrastructure for Hermitian matrices. Rotations
// are unitary in the (p, q) plane with the phase of a_pq absorbed, so the
// working matrix stays Hermitian.
struct JacobiWork {
  ComplexMatrix a;
  ComplexMatrix v;
  bool want_vectors;
};

void jacobi_rotate(JacobiWork& w, int p, int q) {
  const int n = w.a.rows();
  Complex apq = w.a(p, q);
  double mag = std::abs(apq);
  if (mag == 0.0) {
    return;
  }
  Complex phase = apq / mag;
  double app = w.a(p, p).real();
  double aqq = w.a(q, q).real();

  double tau = (aqq - app) / (2.0 * mag);
  double t;  // tan(theta)
  if (tau >= 0.0) {
    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
  } else {
    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  }
  double c = 1.0 / std::sqrt(1.0 + t * t);
  double s = t * c;

  Complex su = s * phase;
  Complex su_conj = std::conj(su);

  // Right multiply by J: columns p and q change.
  for (int i = 0; i < n; ++i) {
    Complex aip = w.a(i, p);
    Complex aiq = w.a(i, q);
    w.a(i, p) = aip * c - aiq * su_conj;
    w.a(i, q) = aip * su + aiq * c;
  }
  // Left multiply by J^dag: rows p and q change.
  for (int j = 0; j < n; ++j) {
    Complex apj = w.a(p, j);
    Complex aqj = w.a(q, j);
    w.a(p, j) = c * apj - su * aqj;
    w.a(q, j) = su_conj * apj + c * aqj;
  }
  // Pin the rotated pair to exact values where the algebra says so.
  w.a(p, q) = 0.0;
  w.a(q, p) = 0.0;
  w.a(p, p) = Complex{w.a(p, p).real(), 0.0};
  w.a(q, q) = Complex{w.a(q, q).real(), 0.0};

  if (w.want_vectors) {
    for (int i = 0; i < n; ++i) {
      Complex vip = w.v(i, p);
      Complex viq = w.v(i, q);
      w.v(i, p) = vip * c - viq * su_conj;
      w.v(i, q) = vip * su + viq * c;
    }
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) {
      if (r != c) {
        s += std::norm(a(r, c));
      }
    }
  }
  return std::sqrt(s);
}

}  // namespace

EigenSystem eigen_hermitian(const ComplexMatrix& a, bool want_vectors) {
  if (!a.is_square() || a.rows() == 0) {
    throw std::invalid_argument("eigen_hermitian: matrix must be square and non-empty");
  }
  double herm = a.hermiticity_violation();
  if (herm > tol::hermitian) {
    throw std::invalid_argument("eigen_hermitian: matrix not Hermitian (violation " +
                                std::to_string(herm) + ")");
  }
  const int n = a.rows();
  JacobiWork w{a, want_vectors ? ComplexMatrix::identity(n) : ComplexMatrix(),
               want_vectors};
  // Symmetrize exactly so roundoff in the input cannot accumulate.
  for (int r = 0; r < n; ++r) {
    w.a(r, r) = Complex{w.a(r, r).real(), 0.0};
    for (int c = r + 1; c < n; ++c) {
      Complex avg = 0.5 * (w.a(r, c) + std::conj(w.a(c, r)));
      w.a(r, c) = avg;
      w.a(c, r) = std::conj(avg);
    }
  }

  const double scale = std::max(w.a.frobenius_norm(), 1e-300);
  const int max_sweeps = 60;
  int sweep = 0;
  while (off_diagonal_norm(w.a) > tol::jacobi_off * scale) {
    if (++sweep > max_sweeps) {
      throw NumericalError("Jacobi eigensolver failed to converge");
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        jacobi_rotate(w, p, q);
      }
    }
  }

  EigenSystem out;
  out.values.resize(n);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) {
    out.values[i] = w.a(i, i).real();
    order[i] = i;
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return out.values[x] > out.values[y]; });
  std::vector<double> sorted(n);
  for (int i = 0; i < n; ++i) {
    sorted[i] = out.values[order[i]];
  }
  out.values = std::move(sorted);
  if (want_vectors) {
    out.vectors = ComplexMatrix(n, n);
    for (int c = 0; c < n; ++c) {
      for (int r = 0; r < n; ++r) {
        out.vectors(r, c) = w.v(r, order[c]);
      }
    }
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const DensityMatrix& m) {
  return eigen_hermitian(m.matrix(), /*want_vectors=*/false).values;
}

double entropy_of_spectrum(const std::vector<double>& eigenvalues) {
  double h = 0.0;
  for (double lambda : eigenvalues) {
    if (lambda < tol::eigenvalue_clamp) {
      throw NumericalError("spectrum has eigenvalue " + std::to_string(lambda) +
                           " below clamp tolerance");
    }
    if (lambda > 0.0) {
      h -= lambda * std::log(lambda);
    }
  }
  return h;
}

double von_neumann_entropy(const DensityMatrix& m) {
  return entropy_of_spectrum(hermitian_eigenvalues(m));
}

DensityMatrix partial_trace(const PureState& state, const std::vector<int>& dims,
                            const std::vector<int>& keep) {
  validate_pure_state(state);
  long long total = 1;
  for (int d : dims) {
    if (d < 1) {
      throw std::invalid_argument("partial_trace: factor dimensions must be positive");
    }
    total *= d;
  }
  if (total != state.dim) {
    throw std::invalid_argument("partial_trace: product of dims differs from state dim");
  }
  if (keep.empty()) {
    throw std::invalid_argument("partial_trace: keep set must be non-empty");
  }
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw std::invalid_argument("partial_trace: duplicate keep index");
  }
  if (kept.front() < 0 || kept.back() >= static_cast<int>(dims.size())) {
    throw std::invalid_argument("partial_trace: keep index out of range");
  }

  std::vector<int> comp;
  {
    std::size_t ki = 0;
    for (int i = 0; i < static_cast<int>(dims.size()); ++i) {
      if (ki < kept.size() && kept[ki] == i) {
        ++ki;
      } else {
        comp.push_back(i);
      }
    }
  }

  std::vector<long long> stride(dims.size());
  long long acc = 1;
  for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
    stride[i] = acc;
    acc *= dims[i];
  }

  auto offsets_for = [&](const std::vector<int>& subset) {
    long long count = 1;
    for (int i : subset) {
      count *= dims[i];
    }
    std::vector<long long> offs(static_cast<std::size_t>(count), 0);
    long long repeat = 1;
    for (auto it = subset.rbegin(); it != subset.rend(); ++it) {
      int d = dims[*it];
      long long s = stride[*it];
      for (long long idx = 0; idx < count; ++idx) {
        long long digit = (idx / repeat) % d;
        offs[idx] += digit * s;
      }
      repeat *= d;
    }
    return offs;
  };

  std::vector<long long> keep_off = offsets_for(kept);
  std::vector<long long> comp_off = offsets_for(comp);

  const int k = static_cast<int>(keep_off.size());
  ComplexMatrix rho(k, k);
  for (int a = 0; a < k; ++a) {
    for (int b = a; b < k; ++b) {
      Complex sum = 0.0;
      for (long long c : comp_off) {
        sum += state.amplitudes[keep_off[a] + c] *
               std::conj(state.amplitudes[keep_off[b] + c]);
      }
      rho(a, b) = sum;
      rho(b, a) = std::conj(sum);
    }
  }
  return DensityMatrix(std::move(rho));
}

double entropy_of_bipartite_cut(const PureState& state, const std::vector<int>& dims,
                                const std::vector<int>& left_indices) {
  long long left_dim = 1;
  for (int i : left_indices) {
    if (i < 0 || i >= static_cast<int>(dims.size())) {
      throw std::invalid_argument("entropy_of_bipartite_cut: index out of range");
    }
    left_dim *= dims[i];
  }
  long long total = 1;
  for (int d : dims) {
    total *= d;
  }
  long long right_dim = total / std::max<long long>(left_dim, 1);

  std::vector<int> side;
  if (left_dim <= right_dim && !left_indices.empty()) {
    side = left_indices;
  } else {
    std::vector<int> sorted_left = left_indices;
    std::sort(sorted_left.begin(), sorted_left.end());
    std::size_t li = 0;
    for (int i = 0; i < static_cast<int>(dims.size()); ++i) {
      if (li < sorted_left.size() && sorted_left[li] == i) {
        ++li;
      } else {
        side.push_back(i);
      }
    }
    if (side.empty()) {
      return 0.0;  // cut around the whole universe: pure state
    }
  }
  return von_neumann_entropy(partial_trace(state, dims, side));
}

PureState haar_state(int dim, RngStream& rng) {
  if (dim < 1) {
    throw std::invalid_argument("haar_state: dim must be >= 1");
  }
  PureState psi;
  psi.dim = dim;
  psi.amplitudes.resize(dim);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& a : psi.amplitudes) {
      a = rng.next_complex_normal();
      norm2 += std::norm(a);
    }
  } while (norm2 == 0.0);
  double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : psi.amplitudes) {
    a *= inv;
  }
  return psi;
}

namespace {

// Asymptotic tails, accurate to full double precision once x >= 12.
double digamma_asymptotic(double x) {
  double inv = 1.0 / x;
  double inv2 = inv * inv;
  double series = inv2 * (1.0 / 12.0 -
                  inv2 * (1.0 / 120.0 -
                  inv2 * (1.0 / 252.0 -
                  inv2 * (1.0 / 240.0 -
                  inv2 * (1.0 / 132.0 -
                  inv2 * (691.0 / 32760.0 -
                  inv2 * (1.0 / 12.0)))))));
  return std::log(x) - 0.5 * inv - series;
}

double trigamma_asymptotic(double x) {
  double inv = 1.0 / x;
  double inv2 = inv * inv;
  double series = inv * (1.0 +
                  inv * (0.5 +
                  inv * (1.0 / 6.0 -
                  inv2 * (1.0 / 30.0 -
                  inv2 * (1.0 / 42.0 -
                  inv2 * (1.0 / 30.0 -
                  inv2 * (5.0 / 66.0 -
                  inv2 * (691.0 / 2730.0))))))));
  return series;
}

}  // namespace

double digamma(double x) {
  if (!(x > 0.0)) {
    throw std::invalid_argument("digamma: argument must be positive");
  }
  double shift = 0.0;
  while (x < 12.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  return shift + digamma_asymptotic(x);
}

double trigamma(double x) {
  if (!(x > 0.0)) {
    throw std::invalid_argument("trigamma: argument must be positive");
  }
  double shift = 0.0;
  while (x < 12.0) {
    shift += 1.0 / (x * x);
    x += 1.0;
  }
  return shift + trigamma_asymptotic(x);
}

}  // namespace qdarwin
