#pragma once

#include "qdot/model.hpp"

namespace qdot {

// Two-qubit density matrix in the product basis (|00>, |01>, |10>, |11>).
using DensityMatrix4 = Eigen::Matrix4cd;

// Isometric embedding |0> -> |00>, |1> -> (|01> + |10>)/sqrt(2),
// |2> -> |11>. Trace and spectrum preserved; the antisymmetric combination
// (|01> - |10>)/sqrt(2) stays unpopulated.
DensityMatrix4 embed_two_qubit(const DensityMatrix3& rho3);

// Transposes the second-qubit indices; Hermitian, unit trace, possibly
// indefinite output. Involution.
DensityMatrix4 partial_transpose(const DensityMatrix4& rho4);

// max(0, -2 * sum of negative partial-transpose eigenvalues), clamped to
// [0, 1]. Eigenvalues above -1e-12 do not count as negative.
double negativity(const DensityMatrix4& rho4);

// Wootters concurrence from the spin-flipped matrix rho~; the product
// spectrum is evaluated through the Hermitian form sqrt(rho) rho~ sqrt(rho),
// eigenvalues clamped at 0 before the square roots.
double concurrence(const DensityMatrix4& rho4);

}  // namespace qdot
