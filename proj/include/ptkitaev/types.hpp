/*
 * types.hpp — shared linear-algebra aliases.
 *
 * All chain Hamiltonians are dense 2N×2N complex matrices (Bogoliubov-de
 * Gennes doubling); at the sizes this library targets (2N ≲ 1000) dense
 * storage and O(dim³) eigensolves are the right tool.
 */

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace ptkitaev {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

} // namespace ptkitaev
