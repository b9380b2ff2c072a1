#pragma once

#include <complex>
#include <Eigen/Dense>

namespace crib {

using Real = double;
using Complex = std::complex<Real>;

using VectorXr = Eigen::VectorXd;
using VectorXc = Eigen::VectorXcd;
using MatrixXr = Eigen::MatrixXd;
using MatrixXc = Eigen::MatrixXcd;
using ArrayXr = Eigen::ArrayXd;
using ArrayXc = Eigen::ArrayXcd;

inline constexpr Real kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

}  // namespace crib
