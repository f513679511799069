#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qdarwin/rng.hpp"

namespace qdarwin {

using Complex = std::complex<double>;

/// A computation left its numerical tolerance envelope (e.g. a density
/// matrix with an eigenvalue well below zero).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A requested problem size exceeds a desk-scale guard.
struct DeskScaleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace tol {
inline constexpr double hermitian = 1e-12;        // elementwise |A - A^dag|
inline constexpr double trace_one = 1e-10;        // |tr(rho) - 1|
inline constexpr double eigenvalue_clamp = -1e-10;  // clamp floor before logs
inline constexpr double unit_norm = 1e-12;        // | ||psi||^2 - 1 |
inline constexpr double jacobi_off = 1e-13;       // off-diag Frobenius / ||A||
}  // namespace tol

/// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

  static ComplexMatrix identity(int n);
  static ComplexMatrix ones(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Complex& operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }

  std::vector<Complex>& data() { return data_; }
  const std::vector<Complex>& data() const { return data_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  double frobenius_norm() const;
  /// max over (i, j) of |a_ij - conj(a_ji)|; 0 for empty matrices.
  double hermiticity_violation() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// Small dense Hermitian matrix with unit trace. Validated at construction:
/// Hermitian within tol::hermitian elementwise, trace within tol::trace_one
/// of one. Eigenvalue positivity is enforced where spectra are computed.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix matrix);

  static DensityMatrix diagonal(const std::vector<double>& probabilities);

  int dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

/// Pure state vector; squared norm must be 1 within tol::unit_norm.
struct PureState {
  int dim = 0;
  std::vector<Complex> amplitudes;
};

void validate_pure_state(const PureState& state);

struct EigenSystem {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column i pairs with values[i]
};

/// Eigenvalues of a Hermitian matrix, descending. Cyclic Jacobi; intended
/// for the small (<= ~128 dim) matrices this code works with.
std::vector<double> hermitian_eigenvalues(const DensityMatrix& m);

/// Companion variant with eigenvectors; accepts any Hermitian matrix.
EigenSystem eigen_hermitian(const ComplexMatrix& a, bool want_vectors = true);

/// Von Neumann entropy -tr(rho log rho) in nats. Eigenvalues in
/// [tol::eigenvalue_clamp, 0] are clamped to zero; more negative ones
/// raise NumericalError. 0*log(0) counts as 0.
double von_neumann_entropy(const DensityMatrix& m);

/// Entropy of a nonnegative spectrum (clamping rule as above).
double entropy_of_spectrum(const std::vector<double>& eigenvalues);

/// Reduced density matrix of a pure state over the kept subsystems.
/// `dims` are the tensor factor dimensions in order; their product must
/// equal state.dim. `keep` lists factor indices (any order, no duplicates);
/// it may be the full set but not empty.
DensityMatrix partial_trace(const PureState& state, const std::vector<int>& dims,
                            const std::vector<int>& keep);

/// Entropy across the cut (left_indices | complement), in nats. Computed
/// from the Gram matrix of the smaller side; both sides agree for pure
/// states.
double entropy_of_bipartite_cut(const PureState& state, const std::vector<int>& dims,
                                const std::vector<int>& left_indices);

/// Haar-distributed random pure state: normalized vector of complex
/// standard normals.
PureState haar_state(int dim, RngStream& rng);

/// Digamma function for x > 0.
double digamma(double x);

/// Trigamma function for x > 0.
double trigamma(double x);

/// Euler-Mascheroni constant.
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

}  // namespace qdarwin
