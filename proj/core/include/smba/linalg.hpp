#pragma once

#include <Eigen/Dense>

namespace smba {

using Index = Eigen::Index;

/// Element of the decision space X = R^n.
using Vector = Eigen::VectorXd;

/// Element of the constraint space Y, flattened. Matrix-valued spaces (S^m)
/// are stored column-major with m*m entries, so the trace inner product is
/// the plain dot product of the flattened vectors.
using YVector = Eigen::VectorXd;

using Matrix = Eigen::MatrixXd;

}  // namespace smba
