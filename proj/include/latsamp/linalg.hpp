#pragma once

#include <Eigen/Dense>

namespace latsamp {

// Catalog lattices live in at most 8 dimensions; the A_n embeddings use one
// extra coordinate. Fixed maximum sizes keep every vector on the stack, which
// matters in the decode loop.
inline constexpr int kMaxNativeDim = 9;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxNativeDim, 1>;
using IVec = Eigen::Matrix<long, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxNativeDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                          kMaxNativeDim, kMaxNativeDim>;

}  // namespace latsamp
