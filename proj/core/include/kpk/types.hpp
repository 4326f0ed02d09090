#ifndef KPK_TYPES_HPP
#define KPK_TYPES_HPP

#include <vector>

#include <Eigen/Dense>

namespace kpk {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// n x k matrix of nonnegative MM weights; column j holds the convex-combination
// coefficients of the implicit centroid j.
using WeightMatrix = Eigen::MatrixXd;

// n x k matrix of squared feature-space distances from points to centroids.
using DistanceMatrix = Eigen::MatrixXd;

using Labels = std::vector<int>;

// n x p observations, one row per point. `labels` is empty when no ground
// truth is known.
struct Dataset {
    Matrix x;
    Labels labels;

    Eigen::Index size() const { return x.rows(); }
    Eigen::Index dim() const { return x.cols(); }
    bool has_labels() const { return !labels.empty(); }
};

}  // namespace kpk

#endif  // KPK_TYPES_HPP
