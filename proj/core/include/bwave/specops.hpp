#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bwave/simplicial.hpp"
#include "bwave/spectral_domain.hpp"

namespace bwave {

/// Band-limited forms on the unit circle: modes |k| <= max_frequency.
SpectralDomain build_circle_domain(int max_frequency);

/// Band-limited forms Lambda^0..Lambda^q on the unit flat torus T^q,
/// modes m in {-M..M}^q. q in {1,2,3}. Throws SizeError when the graded
/// dimension exceeds max_dimension.
SpectralDomain build_torus_domain(int q, int max_frequency, Index max_dimension = 600000);

/// Signed incidence matrices with sign (-1)^(position of the omitted vertex).
SpectralDomain build_simplicial_domain(const SimplicialComplex& complex);

/// sum_j f(lambda_j) <v_j, u> v_j on a graded vector.
Eigen::VectorXd functional_calculus(const SpectralDomain& domain, const std::function<double(double)>& f,
                                    const Eigen::VectorXd& graded);

/// Same for a cochain. f must be even on the spectrum of D, so the result
/// keeps the degree; throws std::invalid_argument otherwise.
Cochain functional_calculus(const SpectralDomain& domain, const std::function<double(double)>& f,
                            const Cochain& u);

/// d_t u = t phi_{q+2}(tD) d u. bessel_q defaults to the ambient dimension.
Cochain deformed_d(const SpectralDomain& domain, double t, const Cochain& u,
                   std::optional<int> bessel_q = std::nullopt);

/// d_t^* w = t phi_{q+2}(tD) d^* w.
Cochain deformed_d_adjoint(const SpectralDomain& domain, double t, const Cochain& w,
                           std::optional<int> bessel_q = std::nullopt);

/// D_t = psi_{q+2}(tD).
SpectralOperator deformed_dirac(const SpectralDomain& domain, double t, std::optional<int> bessel_q = std::nullopt);

/// L_t = D_t^2 = psi_{q+2}(tD)^2.
SpectralOperator deformed_laplacian(const SpectralDomain& domain, double t,
                                    std::optional<int> bessel_q = std::nullopt);

/// Spectrum of L_t restricted to degree-k forms (ascending).
std::vector<double> deformed_laplacian_spectrum(const SpectralDomain& domain, double t, int degree,
                                                std::optional<int> bessel_q = std::nullopt);

/// Spectrum of the classical Hodge Laplacian L = D^2 on degree-k forms.
std::vector<double> laplacian_spectrum(const SpectralDomain& domain, int degree);

/// Kernel dimension of L_t on degree-k forms. The default tolerance is
/// 1e-8 times the largest eigenvalue of L_t, floored at 1e-24. Throws
/// SpectralGapError if an eigenvalue lies within a factor 10 of tol.
int betti(const SpectralDomain& domain, double t, int degree, std::optional<double> tol = std::nullopt,
          std::optional<int> bessel_q = std::nullopt);
std::vector<int> betti_numbers(const SpectralDomain& domain, double t, std::optional<double> tol = std::nullopt,
                               std::optional<int> bessel_q = std::nullopt);

/// Classical Betti numbers from the kernel of L.
std::vector<int> harmonic_betti_numbers(const SpectralDomain& domain, std::optional<double> tol = std::nullopt);

/// Count of eigenvalues at most tol, with the factor-10 gap check.
int count_kernel(const std::vector<double>& spectrum, double tol);

/// Dense matrix of d_t on the graded space.
Eigen::MatrixXd deformed_d_matrix(const SpectralDomain& domain, double t, std::optional<int> bessel_q = std::nullopt);

/// Frobenius norm of U d_t - d_t U. Requires ||U d - d U||_F < 1e-10 first
/// (PreconditionError carries the measured value).
double symmetry_commutator(const SpectralDomain& domain, const SparseMatrix& u, double t,
                           std::optional<int> bessel_q = std::nullopt);

/// Pullback of forms by the torus isometry p -> A p + shift, with A a signed
/// permutation matrix (row-major, q x q). Orthogonal and commutes with d.
SparseMatrix torus_isometry(const SpectralDomain& domain, const std::vector<int>& linear_part,
                            const std::vector<double>& shift);

struct WaveState {
  Eigen::VectorXd u;
  Eigen::VectorXd v;
};

/// T(u, v) = (D_h u - v, u). Requires ||D_h|| < 1.
class DiscreteWaveMap {
 public:
  DiscreteWaveMap(const SpectralDomain& domain, double h, std::optional<int> bessel_q = std::nullopt);

  WaveState step(const WaveState& state) const;
  double operator_norm() const { return dirac_.norm(); }
  const SpectralOperator& deformed_dirac_operator() const { return dirac_; }

  /// Upper bound on ||(u, v)||^2 along the orbit from the per-eigenmode
  /// invariant x^2 - a x y + y^2 of the 2x2 companion map.
  double orbit_norm_squared_bound(const WaveState& state) const;

 private:
  SpectralOperator dirac_;
};

WaveState discrete_wave_step(const SpectralDomain& domain, double h, const WaveState& state,
                             std::optional<int> bessel_q = std::nullopt);

/// {"degree": k, "eigenvalues": [...]} per degree, for the Hodge Laplacian
/// (or L_t when t is given).
std::string spectrum_json(const SpectralDomain& domain, std::optional<double> t = std::nullopt,
                          std::optional<int> bessel_q = std::nullopt);

}  // namespace bwave
