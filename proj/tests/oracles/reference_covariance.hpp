#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace oracle {

// Covariance of the seven tree values entered by hand from closed forms,
// with the center's row and column negated.
inline Eigen::Matrix<double, 7, 7> hand_entered_B() {
  const double a = 5.0 / 6, b = 2 * std::sqrt(2.0) / 3, c = 1 / std::sqrt(2.0), d = 7.0 / 12;
  Eigen::Matrix<double, 7, 7> B;
  B << 1, a, b, -a, c, d, d,
       a, 1, b, -a, c, d, d,
       b, b, 1, -b, a, c, c,
      -a, -a, -b, 1, -b, -a, -a,
       c, c, a, -b, 1, b, b,
       d, d, c, -a, b, 1, a,
       d, d, c, -a, b, a, 1;
  return B;
}

}  // namespace oracle
