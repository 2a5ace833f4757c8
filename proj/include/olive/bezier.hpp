#pragma once

#include <vector>

#include "olive/mesh.hpp"

namespace olive {

// Bezier curve of degree len(control_points) - 1. Branches default to
// degree 5 (six control points).
struct BezierCurve {
    std::vector<Vec3> control_points;

    [[nodiscard]] int degree() const {
        return static_cast<int>(control_points.size()) - 1;
    }
};

// Bernstein-basis evaluation: B(t) = sum_i C(n,i) (1-t)^(n-i) t^i P_i.
// Throws ParamError for t outside [0,1] or fewer than two control points.
Vec3 bezier_point(const BezierCurve& curve, double t);

// Derivative B'(t); used for tangent frames along branches.
Vec3 bezier_tangent(const BezierCurve& curve, double t);

// Rotation-minimizing frames (double-reflection) at the given parameters,
// which must be non-decreasing. Columns are (side, up, tangent).
std::vector<Eigen::Matrix3d> rmf_frames(const BezierCurve& curve,
                                        const std::vector<double>& ts);

} // namespace olive
