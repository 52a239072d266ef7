#pragma once

#include "dicke3/basis.hpp"
#include "dicke3/model.hpp"
#include "dicke3/operators.hpp"

#include <Eigen/Dense>

namespace dicke3 {

/// U_jk(alpha) = exp(-alpha K_jk) with K_jk = A_jk - A_kj.
struct RotationSpec {
    int j{1};
    int k{2};
    double alpha{0.0};
};

/// Level pair of the decoupling rotation: Xi (3,1), Lambda (1,2), V (3,2).
LevelPair rotation_pair(Configuration cfg);

/// Decoupling angle for (cfg, branch); principal arctan branch:
///   Xi      atan(mu23/mu12),  -atan(mu12/mu23)
///   Lambda  atan(mu13/mu23),  -atan(mu23/mu13)
///   V       atan(mu13/mu12),  -atan(mu12/mu13)
/// A zero denominator gives +-pi/2. Throws UndefinedAngle if both vanish.
double decoupling_angle(const ModelConfig& m, Branch branch);

RotationSpec decoupling_rotation(const ModelConfig& m, Branch branch);

/// K_jk as a real antisymmetric operator. Throws InvalidConfig for j == k.
OperatorMatrix generator_K(const BasisSet& b, int j, int k);

/// exp(-alpha K_jk) on the atomic factor (dimension (Na+1)(Na+2)/2).
Eigen::MatrixXd atomic_rotation(const RotationSpec& spec, int Na);

/// exp(-alpha K_jk) on the whole basis (identity on the photon factor).
OperatorMatrix rotation_matrix(const RotationSpec& spec, const BasisSet& b);

/// U A_lm U^T from the closed-form adjoint action.
OperatorMatrix transform_generator_closed_form(const RotationSpec& spec, int l, int m, const BasisSet& b);

/// U X U^T using the matrix exponential.
OperatorMatrix transform_exact(const RotationSpec& spec, const OperatorMatrix& x, const BasisSet& b);

/// Applies U to every photon block of a state vector on a full basis.
Eigen::VectorXcd rotate_amplitudes(const RotationSpec& spec, const BasisSet& b, const Eigen::VectorXcd& amplitudes);

/// exp(A) by Taylor series with scaling and squaring.
Eigen::MatrixXd expm(const Eigen::MatrixXd& a);

}  // namespace dicke3
