#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace bwave {

using Index = Eigen::Index;
using SparseMatrix = Eigen::SparseMatrix<double>;

/// Coefficient vector of a differential form of fixed degree in a domain basis.
struct Cochain {
  int degree = 0;
  Eigen::VectorXd coefficients;
};

/// Bookkeeping for the real trigonometric basis of band-limited forms on the
/// unit flat torus T^q. Scalar functions are indexed by a mode
/// representative m (either 0 or with first nonzero component positive) and
/// a trig slot: slot 0 is sqrt(2) cos(2 pi m.x), slot 1 is sqrt(2) sin(2 pi m.x).
/// The zero mode carries only the constant 1 in slot 0.
struct FourierLayout {
  int q = 1;
  int max_frequency = 1;
  std::vector<std::vector<int>> modes;            // representatives, modes[0] == 0
  std::vector<Index> mode_offset;                 // scalar function offset per mode
  std::vector<std::vector<unsigned>> subsets;     // per degree: axis bitmasks, lexicographic
  Index functions = 0;                            // (2M+1)^q

  /// Position of (mode, trig, subset) inside the degree-k cochain space.
  Index index(int degree, std::size_t mode, int trig, std::size_t subset_pos) const {
    return (mode_offset[mode] + trig) * static_cast<Index>(subsets[degree].size()) +
           static_cast<Index>(subset_pos);
  }
  std::size_t subset_position(int degree, unsigned mask) const;
  std::optional<std::size_t> find_mode(const std::vector<int>& m) const;
  double wavenumber(std::size_t mode) const;  // 2 pi |m|
  /// Value of the scalar basis function (mode, trig) at point x.
  double basis_value(std::size_t mode, int trig, const double* x) const;
};

/// One connected component of the Dirac operator with its eigenpairs.
struct EigenBlock {
  std::vector<Index> indices;  // global graded indices, ascending
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;     // columns are orthonormal eigenvectors in block coordinates
};

/// A finite graded cochain complex with the symmetric Dirac operator
/// D = d + d^T and its eigendecomposition.
///
/// The graded space stacks degrees 0..top; global index = offset(k) + local.
/// D is split into connected components of its sparsity pattern and each
/// component is diagonalized with cyclic Jacobi. A built domain is
/// immutable and may be shared across threads.
class SpectralDomain {
 public:
  SpectralDomain(int ambient_dimension, std::vector<SparseMatrix> d, bool integer_valued,
                 std::optional<FourierLayout> layout = std::nullopt);

  int ambient_dimension() const { return ambient_dimension_; }
  int top_degree() const { return static_cast<int>(grading_.size()) - 1; }
  const std::vector<Index>& grading() const { return grading_; }
  Index offset(int degree) const { return offsets_[degree]; }
  Index dimension() const { return offsets_.back(); }
  bool integer_valued() const { return integer_valued_; }

  /// Exterior derivative from degree k to k+1 (grading[k+1] x grading[k]).
  const SparseMatrix& d(int degree) const { return d_.at(static_cast<std::size_t>(degree)); }
  const SparseMatrix& graded_d() const { return graded_d_; }
  const SparseMatrix& dirac() const { return dirac_; }
  const std::vector<EigenBlock>& blocks() const { return blocks_; }
  const FourierLayout* fourier_layout() const { return layout_ ? &*layout_ : nullptr; }

  /// Degree of a global graded index.
  int degree_of(Index global) const;

  std::vector<double> eigenvalues() const;

  Eigen::VectorXd embed(const Cochain& c) const;
  Cochain extract(const Eigen::VectorXd& graded, int degree) const;
  Cochain zero_cochain(int degree) const;

  Eigen::VectorXd apply_d(const Eigen::VectorXd& graded) const { return graded_d_ * graded; }
  Eigen::VectorXd apply_d_adjoint(const Eigen::VectorXd& graded) const;
  Eigen::VectorXd apply_dirac(const Eigen::VectorXd& graded) const { return dirac_ * graded; }
  Eigen::VectorXd apply_laplacian(const Eigen::VectorXd& graded) const;

  /// Largest per-pair residual ||D v - lambda v|| over all eigenpairs.
  double max_eigen_residual() const;
  /// max |d_{k+1} d_k| over all degrees.
  double max_dd_entry() const;

 private:
  int ambient_dimension_;
  std::vector<Index> grading_;
  std::vector<Index> offsets_;
  std::vector<SparseMatrix> d_;
  SparseMatrix graded_d_;
  SparseMatrix dirac_;
  std::vector<EigenBlock> blocks_;
  bool integer_valued_;
  std::optional<FourierLayout> layout_;
};

/// f(D) for a scalar function f, with f evaluated once per eigenvalue.
class SpectralOperator {
 public:
  SpectralOperator(const SpectralDomain& domain, const std::function<double(double)>& f);

  const SpectralDomain& domain() const { return *domain_; }
  Eigen::VectorXd apply(const Eigen::VectorXd& graded) const;
  /// Spectral norm: max |f(lambda)|.
  double norm() const;
  std::vector<double> eigenvalues() const;
  Eigen::MatrixXd dense() const;
  const std::vector<Eigen::VectorXd>& block_values() const { return values_; }

 private:
  const SpectralDomain* domain_;
  std::vector<Eigen::VectorXd> values_;
};

}  // namespace bwave
