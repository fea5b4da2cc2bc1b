// Copyright (C) 2026 The swcyl authors. MIT License.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"

namespace swcyl::kernel {

/// Product grid {alpha_k = 2 pi k / K} x {j_l = -J + l dj}.
struct CylinderGrid
{
  int K = 512;
  double j_max = 40.0;
  double dj = 0.05;
  double taper = 0.2;  // fraction of [0, J] over which the raised-cosine taper acts

  [[nodiscard]] int nj() const { return static_cast<int>(std::lround(2.0 * j_max / dj)) + 1; }
  [[nodiscard]] double alpha(int k) const { return two_pi * k / K; }
  [[nodiscard]] double j(int l) const { return -j_max + l * dj; }

  [[nodiscard]] std::vector<double> js() const
  {
    std::vector<double> v(nj());
    for (int l = 0; l < nj(); ++l) v[l] = j(l);
    return v;
  }

  void validate() const
  {
    if (K < 1 || !(j_max > 0.0) || !(dj > 0.0) || taper < 0.0 || taper >= 1.0)
      throw std::invalid_argument("CylinderGrid: K >= 1, j_max > 0, dj > 0, taper in [0,1) required");
    const double steps = 2.0 * j_max / dj;
    if (std::abs(steps - std::round(steps)) > 1e-9)
      throw std::invalid_argument("CylinderGrid: 2 j_max must be a multiple of dj");
  }

  bool operator==(const CylinderGrid & o) const
  {
    return K == o.K && std::abs(j_max - o.j_max) < 1e-12 && std::abs(dj - o.dj) < 1e-12 &&
           std::abs(taper - o.taper) < 1e-12;
  }

  [[nodiscard]] std::string describe() const
  {
    std::ostringstream os;
    os << "{K=" << K << ", j_max=" << j_max << ", dj=" << dj << ", taper=" << taper << "}";
    return os.str();
  }
};

/// 1 on |j| <= (1 - frac) J, raised cosine down to 0 at |j| = J.
inline double taper_factor(double j, double J, double frac)
{
  if (frac <= 0.0) return 1.0;
  const double x = std::abs(j) / J, x0 = 1.0 - frac;
  if (x <= x0) return 1.0;
  const double t = std::min(1.0, (x - x0) / frac);
  return 0.5 * (1.0 + std::cos(pi * t));
}

/// Trapezoid weights times the taper.
inline Eigen::VectorXd j_weights(const CylinderGrid & g)
{
  const int n = g.nj();
  Eigen::VectorXd w(n);
  for (int l = 0; l < n; ++l) {
    double base = g.dj;
    if (l == 0 || l == n - 1) base *= 0.5;
    w(l) = base * taper_factor(g.j(l), g.j_max, g.taper);
  }
  return w;
}

/// Tapered trapezoid inner product plus the integral of what the taper and the
/// truncation removed, estimated from an asymptotic model fitted on the outer
/// window of each side:
///   F(j) ~ sum_{k<3} j^{-(p + k/2)} (A_k e^{2ij} + B_k e^{-2ij}),  |j| -> inf.
/// p is the leading decay power of the function. Products with p_F + p_H <= 1
/// have a divergent non-oscillatory tail and are reported as such.
class TailCorrectedRule
{
public:
  explicit TailCorrectedRule(CylinderGrid g, double fit_from = 0.7, double far = 4.0)
      : grid_(g), fit_from_(fit_from), far_(far), w_(j_weights(g))
  {
    for (int l = 0; l < g.nj(); ++l) {
      if (g.j(l) >= fit_from * g.j_max) pos_.push_back(l);
      if (g.j(l) <= -fit_from * g.j_max) neg_.push_back(l);
    }
  }

  struct Result
  {
    cplx raw;
    cplx corrected;
    bool divergent_tail = false;
    double fit_residual = 0.0;  // relative least-squares misfit on the windows
  };

  [[nodiscard]] const Eigen::VectorXd & weights() const { return w_; }

  /// integral F(j) H(j) dj over R.
  [[nodiscard]] Result product_integral(const Eigen::VectorXcd & F, double pF, const Eigen::VectorXcd & H,
                                        double pH) const
  {
    Result r;
    r.raw = (w_.cast<cplx>().array() * F.array() * H.array()).sum();
    if (pF + pH <= 1.0 + 1e-9) {
      r.divergent_tail = true;
      r.corrected = r.raw;
      return r;
    }
    double misfit = 0.0;
    const auto fp = fit(F, pF, pos_, false, misfit);
    const auto fn = fit(F, pF, neg_, true, misfit);
    const auto hp = fit(H, pH, pos_, false, misfit);
    const auto hn = fit(H, pH, neg_, true, misfit);
    const Eigen::MatrixXcd T = tail_matrix(pF, pH);
    r.corrected = r.raw + (fp.transpose() * T * hp)(0, 0) + (fn.transpose() * T * hn)(0, 0);
    r.fit_residual = misfit;
    return r;
  }

private:
  static constexpr int terms = 3;
  static constexpr double omega[2] = {2.0, -2.0};

  static Eigen::MatrixXcd basis(const std::vector<double> & x, double p)
  {
    Eigen::MatrixXcd B(x.size(), 2 * terms);
    for (std::size_t i = 0; i < x.size(); ++i)
      for (int k = 0; k < terms; ++k)
        for (int o = 0; o < 2; ++o)
          B(i, 2 * k + o) = std::pow(x[i], -(p + 0.5 * k)) * std::polar(1.0, omega[o] * x[i]);
    return B;
  }

  Eigen::VectorXcd fit(const Eigen::VectorXcd & F, double p, const std::vector<int> & idx, bool mirrored,
                       double & misfit) const
  {
    std::vector<double> x;
    Eigen::VectorXcd y(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const double j = grid_.j(idx[i]);
      x.push_back(mirrored ? -j : j);
      y(i) = F(idx[i]);
    }
    const Eigen::MatrixXcd B = basis(x, p);
    Eigen::VectorXcd c = B.completeOrthogonalDecomposition().solve(y);
    const double ny = y.norm();
    if (ny > 0.0) misfit = std::max(misfit, (B * c - y).norm() / ny);
    return c;
  }

  /// T_ab = int_{(1-taper)J}^{inf} (1 - w(j)/dj) b_a(j) b_b(j) dj with w the tapered weight,
  /// by fine trapezoid up to far*J and the asymptotic expansion beyond.
  [[nodiscard]] Eigen::MatrixXcd tail_matrix(double pa, double pb) const
  {
    const double J = grid_.j_max, lo = (1.0 - grid_.taper) * J, X = far_ * J;
    const double h = grid_.dj / 8.0;
    const int n = static_cast<int>(std::ceil((X - lo) / h));
    std::vector<double> x(n + 1);
    Eigen::VectorXd om(n + 1);
    for (int i = 0; i <= n; ++i) {
      x[i] = lo + (X - lo) * i / n;
      om(i) = (x[i] < J ? 1.0 - taper_factor(x[i], J, grid_.taper) : 1.0) * ((X - lo) / n);
      if (i == 0 || i == n) om(i) *= 0.5;
    }
    const Eigen::MatrixXcd A = basis(x, pa), B = basis(x, pb);
    Eigen::MatrixXcd T = A.transpose() * om.cast<cplx>().asDiagonal() * B;
    for (int a = 0; a < 2 * terms; ++a) {
      for (int b = 0; b < 2 * terms; ++b) {
        const double p = pa + 0.5 * (a / 2) + pb + 0.5 * (b / 2);
        const double o = omega[a % 2] + omega[b % 2];
        if (o == 0.0) {
          T(a, b) += std::pow(X, 1.0 - p) / (p - 1.0);
        } else {
          const cplx io(0.0, 1.0 / o);
          const cplx s = 1.0 + I * p / (o * X) - p * (p + 1.0) / (o * o * X * X);
          T(a, b) += std::polar(1.0, o * X) * std::pow(X, -p) * io * s;
        }
      }
    }
    return T;
  }

  CylinderGrid grid_;
  double fit_from_, far_;
  Eigen::VectorXd w_;
  std::vector<int> pos_, neg_;
};

}  // namespace swcyl::kernel
