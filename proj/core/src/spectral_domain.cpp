#include "bwave/spectral_domain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "bwave/jacobi_eigen.hpp"

namespace bwave {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(Index n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), Index{0});
  }
  Index find(Index x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
  }

 private:
  std::vector<Index> parent_;
};

}  // namespace

std::size_t FourierLayout::subset_position(int degree, unsigned mask) const {
  const auto& s = subsets.at(static_cast<std::size_t>(degree));
  auto it = std::find(s.begin(), s.end(), mask);
  if (it == s.end()) throw std::out_of_range("subset not present in degree");
  return static_cast<std::size_t>(it - s.begin());
}

std::optional<std::size_t> FourierLayout::find_mode(const std::vector<int>& m) const {
  auto it = std::lower_bound(modes.begin(), modes.end(), m);
  if (it == modes.end() || *it != m) return std::nullopt;
  return static_cast<std::size_t>(it - modes.begin());
}

double FourierLayout::wavenumber(std::size_t mode) const {
  double s = 0.0;
  for (int c : modes[mode]) s += static_cast<double>(c) * c;
  return 2.0 * M_PI * std::sqrt(s);
}

double FourierLayout::basis_value(std::size_t mode, int trig, const double* x) const {
  if (mode == 0) return 1.0;
  double phase = 0.0;
  for (int i = 0; i < q; ++i) phase += modes[mode][static_cast<std::size_t>(i)] * x[i];
  phase *= 2.0 * M_PI;
  return std::sqrt(2.0) * (trig == 0 ? std::cos(phase) : std::sin(phase));
}

SpectralDomain::SpectralDomain(int ambient_dimension, std::vector<SparseMatrix> d, bool integer_valued,
                               std::optional<FourierLayout> layout)
    : ambient_dimension_(ambient_dimension),
      d_(std::move(d)),
      integer_valued_(integer_valued),
      layout_(std::move(layout)) {
  if (ambient_dimension_ < 0) throw std::invalid_argument("ambient dimension must be >= 0");
  if (d_.empty()) throw std::invalid_argument("a spectral domain needs at least one exterior derivative");
  grading_.push_back(d_.front().cols());
  for (std::size_t k = 0; k < d_.size(); ++k) {
    if (d_[k].cols() != grading_.back())
      throw std::invalid_argument("exterior derivative " + std::to_string(k) + " has mismatched column count");
    grading_.push_back(d_[k].rows());
  }
  offsets_.assign(grading_.size() + 1, 0);
  for (std::size_t k = 0; k < grading_.size(); ++k) offsets_[k + 1] = offsets_[k] + grading_[k];
  const Index n = offsets_.back();

  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t k = 0; k < d_.size(); ++k) {
    d_[k].makeCompressed();
    const Index row0 = offsets_[k + 1];
    const Index col0 = offsets_[k];
    for (Index c = 0; c < d_[k].outerSize(); ++c)
      for (SparseMatrix::InnerIterator it(d_[k], c); it; ++it)
        triplets.emplace_back(row0 + it.row(), col0 + it.col(), it.value());
  }
  graded_d_.resize(n, n);
  graded_d_.setFromTriplets(triplets.begin(), triplets.end());
  graded_d_.prune(0.0);
  SparseMatrix dt = graded_d_.transpose();
  dirac_ = graded_d_ + dt;

  const double dd = max_dd_entry();
  double scale = 0.0;
  for (const auto& m : d_)
    for (Index c = 0; c < m.outerSize(); ++c)
      for (SparseMatrix::InnerIterator it(m, c); it; ++it) scale = std::max(scale, std::abs(it.value()));
  const double allowed = integer_valued_ ? 0.0 : 1e-12 * std::max(1.0, scale * scale);
  if (dd > allowed) throw std::logic_error("exterior derivative does not square to zero: " + std::to_string(dd));

  DisjointSets sets(n);
  for (Index c = 0; c < dirac_.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(dirac_, c); it; ++it) sets.unite(it.row(), it.col());

  std::vector<Index> block_of(static_cast<std::size_t>(n), -1);
  std::vector<Index> local_of(static_cast<std::size_t>(n), -1);
  for (Index i = 0; i < n; ++i) {
    const Index root = sets.find(i);
    if (block_of[root] < 0) {
      block_of[root] = static_cast<Index>(blocks_.size());
      blocks_.emplace_back();
    }
    auto& blk = blocks_[static_cast<std::size_t>(block_of[root])];
    local_of[i] = static_cast<Index>(blk.indices.size());
    blk.indices.push_back(i);
  }
  for (auto& blk : blocks_) {
    const Index m = static_cast<Index>(blk.indices.size());
    Eigen::MatrixXd local = Eigen::MatrixXd::Zero(m, m);
    for (Index j = 0; j < m; ++j) {
      const Index col = blk.indices[static_cast<std::size_t>(j)];
      for (SparseMatrix::InnerIterator it(dirac_, col); it; ++it) local(local_of[it.row()], j) = it.value();
    }
    SymmetricEigen eig = jacobi_eigen(std::move(local));
    blk.values = std::move(eig.values);
    blk.vectors = std::move(eig.vectors);
  }
}

int SpectralDomain::degree_of(Index global) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), global);
  return static_cast<int>(it - offsets_.begin()) - 1;
}

std::vector<double> SpectralDomain::eigenvalues() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(dimension()));
  for (const auto& b : blocks_)
    for (Index j = 0; j < b.values.size(); ++j) out.push_back(b.values(j));
  std::sort(out.begin(), out.end());
  return out;
}

Eigen::VectorXd SpectralDomain::embed(const Cochain& c) const {
  if (c.degree < 0 || c.degree > top_degree())
    throw std::invalid_argument("cochain degree " + std::to_string(c.degree) + " outside the complex");
  if (c.coefficients.size() != grading_[static_cast<std::size_t>(c.degree)])
    throw std::invalid_argument("cochain length does not match the grading of its degree");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dimension());
  out.segment(offset(c.degree), c.coefficients.size()) = c.coefficients;
  return out;
}

Cochain SpectralDomain::extract(const Eigen::VectorXd& graded, int degree) const {
  if (degree < 0 || degree > top_degree()) throw std::invalid_argument("degree outside the complex");
  return Cochain{degree, graded.segment(offset(degree), grading_[static_cast<std::size_t>(degree)])};
}

Cochain SpectralDomain::zero_cochain(int degree) const {
  if (degree < 0 || degree > top_degree()) throw std::invalid_argument("degree outside the complex");
  return Cochain{degree, Eigen::VectorXd::Zero(grading_[static_cast<std::size_t>(degree)])};
}

Eigen::VectorXd SpectralDomain::apply_d_adjoint(const Eigen::VectorXd& graded) const {
  return graded_d_.transpose() * graded;
}

Eigen::VectorXd SpectralDomain::apply_laplacian(const Eigen::VectorXd& graded) const {
  Eigen::VectorXd du = graded_d_ * graded;
  Eigen::VectorXd dsu = graded_d_.transpose() * graded;
  return Eigen::VectorXd(graded_d_.transpose() * du) + Eigen::VectorXd(graded_d_ * dsu);
}

double SpectralDomain::max_eigen_residual() const {
  double worst = 0.0;
  for (const auto& b : blocks_) {
    const Index m = static_cast<Index>(b.indices.size());
    for (Index j = 0; j < m; ++j) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(dimension());
      for (Index i = 0; i < m; ++i) v(b.indices[static_cast<std::size_t>(i)]) = b.vectors(i, j);
      worst = std::max(worst, (dirac_ * v - b.values(j) * v).norm());
    }
  }
  return worst;
}

double SpectralDomain::max_dd_entry() const {
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < d_.size(); ++k) {
    SparseMatrix dd = d_[k + 1] * d_[k];
    for (Index c = 0; c < dd.outerSize(); ++c)
      for (SparseMatrix::InnerIterator it(dd, c); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

SpectralOperator::SpectralOperator(const SpectralDomain& domain, const std::function<double(double)>& f)
    : domain_(&domain) {
  values_.reserve(domain.blocks().size());
  for (const auto& b : domain.blocks()) values_.push_back(b.values.unaryExpr(f));
}

Eigen::VectorXd SpectralOperator::apply(const Eigen::VectorXd& graded) const {
  if (graded.size() != domain_->dimension()) throw std::invalid_argument("vector length does not match domain");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(graded.size());
  const auto& blocks = domain_->blocks();
  Eigen::VectorXd local;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& blk = blocks[b];
    const Index m = static_cast<Index>(blk.indices.size());
    local.resize(m);
    for (Index i = 0; i < m; ++i) local(i) = graded(blk.indices[static_cast<std::size_t>(i)]);
    if (local.isZero(0.0)) continue;
    Eigen::VectorXd coeffs = blk.vectors.transpose() * local;
    coeffs.array() *= values_[b].array();
    Eigen::VectorXd mapped = blk.vectors * coeffs;
    for (Index i = 0; i < m; ++i) out(blk.indices[static_cast<std::size_t>(i)]) = mapped(i);
  }
  return out;
}

double SpectralOperator::norm() const {
  double n = 0.0;
  for (const auto& v : values_)
    if (v.size() > 0) n = std::max(n, v.cwiseAbs().maxCoeff());
  return n;
}

std::vector<double> SpectralOperator::eigenvalues() const {
  std::vector<double> out;
  for (const auto& v : values_)
    for (Index j = 0; j < v.size(); ++j) out.push_back(v(j));
  std::sort(out.begin(), out.end());
  return out;
}

Eigen::MatrixXd SpectralOperator::dense() const {
  const Index n = domain_->dimension();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  const auto& blocks = domain_->blocks();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& blk = blocks[b];
    Eigen::MatrixXd local = blk.vectors * values_[b].asDiagonal() * blk.vectors.transpose();
    const Index m = static_cast<Index>(blk.indices.size());
    for (Index j = 0; j < m; ++j)
      for (Index i = 0; i < m; ++i)
        out(blk.indices[static_cast<std::size_t>(i)], blk.indices[static_cast<std::size_t>(j)]) = local(i, j);
  }
  return out;
}

}  // namespace bwave
