#include "bwave/specops.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "bwave/besselfn.hpp"
#include "bwave/errors.hpp"
#include "bwave/jacobi_eigen.hpp"
#include "json.hpp"

namespace bwave {
namespace {

int resolve_q(const SpectralDomain& domain, std::optional<int> bessel_q) {
  const int q = bessel_q.value_or(domain.ambient_dimension());
  if (q < 1) throw std::invalid_argument("Bessel dimension parameter q must be >= 1");
  return q;
}

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("deformation parameter t must be finite and >= 0");
}

std::vector<unsigned> subsets_of_size(int q, int k) {
  std::vector<unsigned> out;
  for (unsigned mask = 0; mask < (1u << q); ++mask)
    if (std::popcount(mask) == k) out.push_back(mask);
  // Lexicographic order of the sorted element lists.
  std::sort(out.begin(), out.end(), [](unsigned a, unsigned b) {
    for (int i = 0; i < 32; ++i) {
      const bool ia = a & (1u << i), ib = b & (1u << i);
      if (ia != ib) return ia;
    }
    return false;
  });
  return out;
}

bool is_representative(const std::vector<int>& m) {
  for (int c : m)
    if (c != 0) return c > 0;
  return true;
}

double small_determinant(const std::vector<std::vector<double>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1.0;
  if (n == 1) return a[0][0];
  double det = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<double>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<double> row;
      for (std::size_t cc = 0; cc < n; ++cc)
        if (cc != c) row.push_back(a[r][cc]);
      minor.push_back(std::move(row));
    }
    det += ((c % 2) ? -1.0 : 1.0) * a[0][c] * small_determinant(minor);
  }
  return det;
}

std::vector<int> mask_elements(unsigned mask) {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i)
    if (mask & (1u << i)) out.push_back(i);
  return out;
}

/// Spectrum of g(D) on degree-k forms, block by block.
std::vector<double> restricted_spectrum(const SpectralDomain& domain, const std::function<double(double)>& g,
                                        int degree) {
  std::vector<double> out;
  for (const auto& blk : domain.blocks()) {
    std::vector<Index> rows;
    for (std::size_t i = 0; i < blk.indices.size(); ++i)
      if (domain.degree_of(blk.indices[i]) == degree) rows.push_back(static_cast<Index>(i));
    if (rows.empty()) continue;
    Eigen::MatrixXd vk(static_cast<Index>(rows.size()), blk.vectors.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) vk.row(static_cast<Index>(r)) = blk.vectors.row(rows[r]);
    Eigen::VectorXd gv = blk.values.unaryExpr(g);
    Eigen::MatrixXd m = vk * gv.asDiagonal() * vk.transpose();
    SymmetricEigen eig = jacobi_eigen(0.5 * (m + m.transpose()));
    for (Index j = 0; j < eig.values.size(); ++j) out.push_back(eig.values(j));
  }
  std::sort(out.begin(), out.end());
  return out;
}

double default_tolerance(double largest) { return std::max(1e-8 * largest, 1e-24); }

}  // namespace

SpectralDomain build_circle_domain(int max_frequency) { return build_torus_domain(1, max_frequency); }

SpectralDomain build_torus_domain(int q, int max_frequency, Index max_dimension) {
  if (q < 1 || q > 3) throw std::invalid_argument("torus dimension must be 1, 2 or 3");
  if (max_frequency < 1) throw std::invalid_argument("max frequency must be >= 1");
  const int side = 2 * max_frequency + 1;
  long long functions = 1;
  for (int i = 0; i < q; ++i) functions *= side;
  const long long total = functions * (1LL << q);
  if (total > max_dimension)
    throw SizeError("torus domain dimension " + std::to_string(total) + " exceeds cap " +
                        std::to_string(max_dimension) + " (q=" + std::to_string(q) +
                        ", M=" + std::to_string(max_frequency) + ")",
                    total);

  FourierLayout layout;
  layout.q = q;
  layout.max_frequency = max_frequency;
  std::vector<int> m(static_cast<std::size_t>(q), -max_frequency);
  for (long long count = 0; count < functions; ++count) {
    if (is_representative(m)) layout.modes.push_back(m);
    for (int i = q - 1; i >= 0; --i) {
      if (++m[static_cast<std::size_t>(i)] <= max_frequency) break;
      m[static_cast<std::size_t>(i)] = -max_frequency;
    }
  }
  std::sort(layout.modes.begin(), layout.modes.end());
  Index off = 0;
  for (std::size_t i = 0; i < layout.modes.size(); ++i) {
    layout.mode_offset.push_back(off);
    off += (i == 0) ? 1 : 2;
  }
  layout.functions = off;
  for (int k = 0; k <= q; ++k) layout.subsets.push_back(subsets_of_size(q, k));

  std::vector<SparseMatrix> d;
  for (int k = 0; k < q; ++k) {
    const Index rows = layout.functions * static_cast<Index>(layout.subsets[static_cast<std::size_t>(k + 1)].size());
    const Index cols = layout.functions * static_cast<Index>(layout.subsets[static_cast<std::size_t>(k)].size());
    std::vector<Eigen::Triplet<double>> triplets;
    for (std::size_t mode = 1; mode < layout.modes.size(); ++mode) {
      const auto& mv = layout.modes[mode];
      for (int trig = 0; trig < 2; ++trig) {
        for (std::size_t pos = 0; pos < layout.subsets[static_cast<std::size_t>(k)].size(); ++pos) {
          const unsigned mask = layout.subsets[static_cast<std::size_t>(k)][pos];
          for (int j = 0; j < q; ++j) {
            if ((mask & (1u << j)) || mv[static_cast<std::size_t>(j)] == 0) continue;
            const unsigned target = mask | (1u << j);
            const double sign = (std::popcount(mask & ((1u << j) - 1u)) % 2) ? -1.0 : 1.0;
            const double freq = 2.0 * M_PI * mv[static_cast<std::size_t>(j)];
            // d/dx_j cos = -freq sin, d/dx_j sin = freq cos
            const int out_trig = 1 - trig;
            const double value = sign * (trig == 0 ? -freq : freq);
            triplets.emplace_back(layout.index(k + 1, mode, out_trig, layout.subset_position(k + 1, target)),
                                  layout.index(k, mode, trig, pos), value);
          }
        }
      }
    }
    SparseMatrix dk(rows, cols);
    dk.setFromTriplets(triplets.begin(), triplets.end());
    d.push_back(std::move(dk));
  }
  return SpectralDomain(q, std::move(d), false, std::move(layout));
}

SpectralDomain build_simplicial_domain(const SimplicialComplex& complex) {
  const int top = complex.dimension();
  if (top < 0) throw std::invalid_argument("empty simplicial complex");
  std::vector<SparseMatrix> d;
  for (int k = 0; k < std::max(top, 1); ++k) {
    const auto& lower = complex.simplices(k);
    const auto& upper = complex.simplices(k + 1);
    std::map<std::vector<int>, Index> index_of;
    for (std::size_t i = 0; i < lower.size(); ++i) index_of[lower[i]] = static_cast<Index>(i);
    std::vector<Eigen::Triplet<double>> triplets;
    for (std::size_t r = 0; r < upper.size(); ++r) {
      const auto& s = upper[r];
      for (std::size_t omit = 0; omit < s.size(); ++omit) {
        std::vector<int> face;
        for (std::size_t i = 0; i < s.size(); ++i)
          if (i != omit) face.push_back(s[i]);
        triplets.emplace_back(static_cast<Index>(r), index_of.at(face), (omit % 2) ? -1.0 : 1.0);
      }
    }
    SparseMatrix dk(static_cast<Index>(upper.size()), static_cast<Index>(lower.size()));
    dk.setFromTriplets(triplets.begin(), triplets.end());
    d.push_back(std::move(dk));
  }
  return SpectralDomain(top, std::move(d), true);
}

Eigen::VectorXd functional_calculus(const SpectralDomain& domain, const std::function<double(double)>& f,
                                    const Eigen::VectorXd& graded) {
  return SpectralOperator(domain, f).apply(graded);
}

Cochain functional_calculus(const SpectralDomain& domain, const std::function<double(double)>& f,
                            const Cochain& u) {
  SpectralOperator op(domain, f);
  const auto& blocks = domain.blocks();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (Index j = 0; j < blocks[b].values.size(); ++j) {
      const double lam = blocks[b].values(j);
      const double fp = op.block_values()[b](j);
      const double fm = f(-lam);
      if (std::abs(fp - fm) > 1e-12 * std::max({1.0, std::abs(fp), std::abs(fm)}))
        throw std::invalid_argument("functional calculus on a cochain needs f even on the spectrum");
    }
  }
  return domain.extract(op.apply(domain.embed(u)), u.degree);
}

Cochain deformed_d(const SpectralDomain& domain, double t, const Cochain& u, std::optional<int> bessel_q) {
  require_time(t);
  if (u.degree >= domain.top_degree())
    throw std::invalid_argument("deformed_d: input of top degree " + std::to_string(u.degree) + " has no image");
  const int n = resolve_q(domain, bessel_q) + 2;
  if (t == 0.0) {
    (void)domain.embed(u);
    return domain.zero_cochain(u.degree + 1);
  }
  SpectralOperator op(domain, [t, n](double lam) { return t * phi(n, t * lam); });
  return domain.extract(op.apply(domain.apply_d(domain.embed(u))), u.degree + 1);
}

Cochain deformed_d_adjoint(const SpectralDomain& domain, double t, const Cochain& w, std::optional<int> bessel_q) {
  require_time(t);
  if (w.degree <= 0) throw std::invalid_argument("deformed_d_adjoint: degree-0 input has no image");
  const int n = resolve_q(domain, bessel_q) + 2;
  if (t == 0.0) {
    (void)domain.embed(w);
    return domain.zero_cochain(w.degree - 1);
  }
  SpectralOperator op(domain, [t, n](double lam) { return t * phi(n, t * lam); });
  return domain.extract(op.apply(domain.apply_d_adjoint(domain.embed(w))), w.degree - 1);
}

SpectralOperator deformed_dirac(const SpectralDomain& domain, double t, std::optional<int> bessel_q) {
  require_time(t);
  const int n = resolve_q(domain, bessel_q) + 2;
  return SpectralOperator(domain, [t, n](double lam) { return psi(n, t * lam); });
}

SpectralOperator deformed_laplacian(const SpectralDomain& domain, double t, std::optional<int> bessel_q) {
  require_time(t);
  const int n = resolve_q(domain, bessel_q) + 2;
  return SpectralOperator(domain, [t, n](double lam) {
    const double p = psi(n, t * lam);
    return p * p;
  });
}

std::vector<double> deformed_laplacian_spectrum(const SpectralDomain& domain, double t, int degree,
                                                std::optional<int> bessel_q) {
  require_time(t);
  const int n = resolve_q(domain, bessel_q) + 2;
  return restricted_spectrum(
      domain,
      [t, n](double lam) {
        const double p = psi(n, t * lam);
        return p * p;
      },
      degree);
}

std::vector<double> laplacian_spectrum(const SpectralDomain& domain, int degree) {
  return restricted_spectrum(domain, [](double lam) { return lam * lam; }, degree);
}

int count_kernel(const std::vector<double>& spectrum, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("kernel tolerance must be positive");
  int count = 0;
  for (double v : spectrum) {
    if (v > tol / 10.0 && v < tol * 10.0)
      throw SpectralGapError("eigenvalue " + std::to_string(v) + " lies within a factor 10 of the kernel tolerance " +
                                 std::to_string(tol),
                             v);
    if (v <= tol) ++count;
  }
  return count;
}

int betti(const SpectralDomain& domain, double t, int degree, std::optional<double> tol, std::optional<int> bessel_q) {
  if (degree < 0 || degree > domain.top_degree()) throw std::invalid_argument("degree outside the complex");
  const double threshold = tol ? *tol : default_tolerance(deformed_laplacian(domain, t, bessel_q).norm());
  return count_kernel(deformed_laplacian_spectrum(domain, t, degree, bessel_q), threshold);
}

std::vector<int> betti_numbers(const SpectralDomain& domain, double t, std::optional<double> tol,
                               std::optional<int> bessel_q) {
  const double threshold = tol ? *tol : default_tolerance(deformed_laplacian(domain, t, bessel_q).norm());
  std::vector<int> out;
  for (int k = 0; k <= domain.top_degree(); ++k)
    out.push_back(count_kernel(deformed_laplacian_spectrum(domain, t, k, bessel_q), threshold));
  return out;
}

std::vector<int> harmonic_betti_numbers(const SpectralDomain& domain, std::optional<double> tol) {
  double largest = 0.0;
  for (double v : domain.eigenvalues()) largest = std::max(largest, v * v);
  const double threshold = tol ? *tol : default_tolerance(largest);
  std::vector<int> out;
  for (int k = 0; k <= domain.top_degree(); ++k) out.push_back(count_kernel(laplacian_spectrum(domain, k), threshold));
  return out;
}

Eigen::MatrixXd deformed_d_matrix(const SpectralDomain& domain, double t, std::optional<int> bessel_q) {
  require_time(t);
  if (domain.dimension() > 6000)
    throw SizeError("dense d_t requested for a domain of dimension " + std::to_string(domain.dimension()),
                    domain.dimension());
  const int n = resolve_q(domain, bessel_q) + 2;
  SpectralOperator op(domain, [t, n](double lam) { return t * phi(n, t * lam); });
  Eigen::MatrixXd g = op.dense();
  return g * domain.graded_d();
}

double symmetry_commutator(const SpectralDomain& domain, const SparseMatrix& u, double t,
                           std::optional<int> bessel_q) {
  if (u.rows() != domain.dimension() || u.cols() != domain.dimension())
    throw std::invalid_argument("symmetry operator must act on the full graded space");
  const SparseMatrix& d = domain.graded_d();
  SparseMatrix pre = u * d - d * u;
  const double measured = pre.norm();
  if (!(measured < 1e-10))
    throw PreconditionError("operator does not commute with d: ||Ud - dU|| = " + std::to_string(measured), measured);
  Eigen::MatrixXd dt = deformed_d_matrix(domain, t, bessel_q);
  Eigen::MatrixXd c = u * dt - dt * u;
  return c.norm();
}

SparseMatrix torus_isometry(const SpectralDomain& domain, const std::vector<int>& linear_part,
                            const std::vector<double>& shift) {
  const FourierLayout* layout = domain.fourier_layout();
  if (!layout) throw std::invalid_argument("torus_isometry needs a Fourier (torus) domain");
  const int q = layout->q;
  if (linear_part.size() != static_cast<std::size_t>(q * q) || shift.size() != static_cast<std::size_t>(q))
    throw std::invalid_argument("isometry must be q x q with a length-q shift");
  auto a = [&](int i, int j) { return linear_part[static_cast<std::size_t>(i * q + j)]; };
  for (int i = 0; i < q; ++i) {
    int nonzero = 0;
    for (int j = 0; j < q; ++j) {
      if (a(i, j) != 0 && std::abs(a(i, j)) != 1) throw std::invalid_argument("linear part must be a signed permutation");
      nonzero += a(i, j) != 0;
    }
    if (nonzero != 1) throw std::invalid_argument("linear part must be a signed permutation");
  }

  std::vector<Eigen::Triplet<double>> triplets;
  for (int k = 0; k <= q; ++k) {
    const auto& subsets = layout->subsets[static_cast<std::size_t>(k)];
    // Pullback of dx_I: sum_J det(A[I, J]) dx_J.
    std::vector<std::vector<double>> form_map(subsets.size(), std::vector<double>(subsets.size(), 0.0));
    for (std::size_t pi = 0; pi < subsets.size(); ++pi) {
      const auto rows = mask_elements(subsets[pi]);
      for (std::size_t pj = 0; pj < subsets.size(); ++pj) {
        const auto cols = mask_elements(subsets[pj]);
        std::vector<std::vector<double>> sub(rows.size(), std::vector<double>(cols.size()));
        for (std::size_t r = 0; r < rows.size(); ++r)
          for (std::size_t c = 0; c < cols.size(); ++c) sub[r][c] = a(rows[r], cols[c]);
        form_map[pi][pj] = small_determinant(sub);
      }
    }
    for (std::size_t mode = 0; mode < layout->modes.size(); ++mode) {
      const auto& m = layout->modes[mode];
      std::vector<int> image(static_cast<std::size_t>(q), 0);
      double phase = 0.0;
      for (int j = 0; j < q; ++j)
        for (int i = 0; i < q; ++i) image[static_cast<std::size_t>(j)] += a(i, j) * m[static_cast<std::size_t>(i)];
      for (int i = 0; i < q; ++i) phase += m[static_cast<std::size_t>(i)] * shift[static_cast<std::size_t>(i)];
      phase *= 2.0 * M_PI;
      double sin_sign = 1.0;
      if (!is_representative(image)) {
        for (int& c : image) c = -c;
        sin_sign = -1.0;
      }
      const auto target = layout->find_mode(image);
      if (!target) throw std::invalid_argument("isometry maps a mode outside the band");
      const int trigs = mode == 0 ? 1 : 2;
      for (int trig = 0; trig < trigs; ++trig) {
        // cos(th + ph) = cos ph cos th - sin ph sin th ; sin(th + ph) = sin ph cos th + cos ph sin th
        double to_cos = 1.0, to_sin = 0.0;
        if (mode != 0) {
          to_cos = trig == 0 ? std::cos(phase) : std::sin(phase);
          to_sin = (trig == 0 ? -std::sin(phase) : std::cos(phase)) * sin_sign;
        }
        for (std::size_t pi = 0; pi < subsets.size(); ++pi) {
          const Index col = domain.offset(k) + layout->index(k, mode, trig, pi);
          for (std::size_t pj = 0; pj < subsets.size(); ++pj) {
            const double w = form_map[pi][pj];
            if (w == 0.0) continue;
            if (to_cos != 0.0)
              triplets.emplace_back(domain.offset(k) + layout->index(k, *target, 0, pj), col, w * to_cos);
            if (to_sin != 0.0 && *target != 0)
              triplets.emplace_back(domain.offset(k) + layout->index(k, *target, 1, pj), col, w * to_sin);
          }
        }
      }
    }
  }
  SparseMatrix u(domain.dimension(), domain.dimension());
  u.setFromTriplets(triplets.begin(), triplets.end());
  return u;
}

DiscreteWaveMap::DiscreteWaveMap(const SpectralDomain& domain, double h, std::optional<int> bessel_q)
    : dirac_(deformed_dirac(domain, h, bessel_q)) {
  const double norm = dirac_.norm();
  if (!(norm < 1.0))
    throw PreconditionError("discrete wave map needs ||D_h|| < 1, measured " + std::to_string(norm), norm);
}

WaveState DiscreteWaveMap::step(const WaveState& state) const {
  return WaveState{dirac_.apply(state.u) - state.v, state.u};
}

double DiscreteWaveMap::orbit_norm_squared_bound(const WaveState& state) const {
  const auto& blocks = dirac_.domain().blocks();
  double bound = 0.0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& blk = blocks[b];
    const Index m = static_cast<Index>(blk.indices.size());
    Eigen::VectorXd lu(m), lv(m);
    for (Index i = 0; i < m; ++i) {
      lu(i) = state.u(blk.indices[static_cast<std::size_t>(i)]);
      lv(i) = state.v(blk.indices[static_cast<std::size_t>(i)]);
    }
    const Eigen::VectorXd cu = blk.vectors.transpose() * lu;
    const Eigen::VectorXd cv = blk.vectors.transpose() * lv;
    for (Index j = 0; j < m; ++j) {
      const double a = dirac_.block_values()[b](j);
      const double invariant = cu(j) * cu(j) - a * cu(j) * cv(j) + cv(j) * cv(j);
      bound += invariant / (1.0 - std::abs(a) / 2.0);
    }
  }
  return bound;
}

WaveState discrete_wave_step(const SpectralDomain& domain, double h, const WaveState& state,
                             std::optional<int> bessel_q) {
  return DiscreteWaveMap(domain, h, bessel_q).step(state);
}

std::string spectrum_json(const SpectralDomain& domain, std::optional<double> t, std::optional<int> bessel_q) {
  nlohmann::json out = nlohmann::json::array();
  for (int k = 0; k <= domain.top_degree(); ++k) {
    const auto values = t ? deformed_laplacian_spectrum(domain, *t, k, bessel_q) : laplacian_spectrum(domain, k);
    out.push_back({{"degree", k}, {"eigenvalues", values}});
  }
  return out.dump(2);
}

}  // namespace bwave
