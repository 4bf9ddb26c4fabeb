#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace qcw {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Seed = std::uint64_t;

/// Threading policy for the data-parallel kernels. `serial` runs the same
/// arithmetic on one thread; results are bitwise identical either way.
enum class Exec { serial, parallel };

} // namespace qcw
