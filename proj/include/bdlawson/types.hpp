#pragma once

#include <complex>

#include <Eigen/Dense>

namespace bdlawson {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Unit roundoff of binary64, 2^-52.
inline constexpr double kMachineEps = 2.220446049250313e-16;

}  // namespace bdlawson
