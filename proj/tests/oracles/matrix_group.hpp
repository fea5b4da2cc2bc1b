// Copyright (C) 2026 The swcyl authors. MIT License.

#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

// 4x4 matrix realization of the algebra [J, P1] = P2, [J, P2] = -P1, [P1, P2] = I
// (I central). g = exp(eta I) exp(a.P) exp(phi J) is evaluated with the matrix
// exponential, so group products can be compared entrywise.
namespace oracle {

inline Eigen::Matrix4d unit(int r, int c)
{
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(r, c) = 1.0;
  return m;
}

inline Eigen::Matrix4d gen_J() { return unit(1, 0) - unit(0, 1); }
inline Eigen::Matrix4d gen_P1() { return unit(0, 3) + 0.5 * unit(2, 1); }
inline Eigen::Matrix4d gen_P2() { return unit(1, 3) - 0.5 * unit(2, 0); }
inline Eigen::Matrix4d gen_I() { return unit(2, 3); }

inline Eigen::Matrix4d group_matrix(double eta, double a1, double a2, double phi)
{
  const Eigen::Matrix4d E = (eta * gen_I()).exp();
  const Eigen::Matrix4d T = (a1 * gen_P1() + a2 * gen_P2()).exp();
  const Eigen::Matrix4d R = (phi * gen_J()).exp();
  return E * T * R;
}

}  // namespace oracle
