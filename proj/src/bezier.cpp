#include "olive/bezier.hpp"

#include <cmath>

#include "olive/errors.hpp"

namespace olive {

namespace {

void check_curve(const BezierCurve& curve, double t) {
    if (curve.control_points.size() < 2)
        throw ParamError("bezier curve needs at least 2 control points");
    if (!(t >= 0.0 && t <= 1.0))
        throw ParamError("bezier parameter t must lie in [0,1]");
}

// Bernstein weights by the incremental binomial recurrence.
void bernstein_weights(int n, double t, std::vector<double>& w) {
    w.assign(static_cast<std::size_t>(n) + 1, 0.0);
    const double s = 1.0 - t;
    double binom = 1.0;
    for (int i = 0; i <= n; ++i) {
        w[static_cast<std::size_t>(i)] =
            binom * std::pow(s, n - i) * std::pow(t, i);
        binom *= static_cast<double>(n - i) / static_cast<double>(i + 1);
    }
}

} // namespace

Vec3 bezier_point(const BezierCurve& curve, double t) {
    check_curve(curve, t);
    const int n = curve.degree();
    std::vector<double> w;
    bernstein_weights(n, t, w);
    Vec3 p = Vec3::Zero();
    for (int i = 0; i <= n; ++i)
        p += w[static_cast<std::size_t>(i)] * curve.control_points[static_cast<std::size_t>(i)];
    return p;
}

Vec3 bezier_tangent(const BezierCurve& curve, double t) {
    check_curve(curve, t);
    const int n = curve.degree();
    if (n == 0) return Vec3::Zero();
    std::vector<double> w;
    bernstein_weights(n - 1, t, w);
    Vec3 d = Vec3::Zero();
    for (int i = 0; i < n; ++i)
        d += w[static_cast<std::size_t>(i)] *
             (curve.control_points[static_cast<std::size_t>(i) + 1] -
              curve.control_points[static_cast<std::size_t>(i)]);
    return static_cast<double>(n) * d;
}

std::vector<Eigen::Matrix3d> rmf_frames(const BezierCurve& curve,
                                        const std::vector<double>& ts) {
    std::vector<Eigen::Matrix3d> frames;
    frames.reserve(ts.size());
    if (ts.empty()) return frames;

    auto tangent_at = [&](double t) -> Vec3 {
        Vec3 d = bezier_tangent(curve, t);
        if (d.squaredNorm() < 1e-24) {
            // Flat spot; fall back to the chord direction.
            d = curve.control_points.back() - curve.control_points.front();
        }
        const double len = d.norm();
        if (len < 1e-12) throw GeometryError("degenerate bezier curve");
        return d / len;
    };

    // Initial frame: pick the world axis least aligned with the tangent.
    Vec3 t0 = tangent_at(ts.front());
    int least = 0;
    t0.cwiseAbs().minCoeff(&least);
    Vec3 up = Vec3::Unit(least);
    Vec3 side = up.cross(t0).normalized();
    up = t0.cross(side);

    Eigen::Matrix3d frame;
    frame.col(0) = side;
    frame.col(1) = up;
    frame.col(2) = t0;
    frames.push_back(frame);

    // Double-reflection transport of the side vector.
    Vec3 x_prev = bezier_point(curve, ts.front());
    Vec3 t_prev = t0;
    Vec3 s_prev = side;
    for (std::size_t i = 1; i < ts.size(); ++i) {
        const Vec3 x = bezier_point(curve, ts[i]);
        const Vec3 tan = tangent_at(ts[i]);
        const Vec3 v1 = x - x_prev;
        const double c1 = v1.squaredNorm();
        Vec3 s;
        if (c1 < 1e-20) {
            s = s_prev;
        } else {
            const Vec3 sL = s_prev - (2.0 / c1) * v1.dot(s_prev) * v1;
            const Vec3 tL = t_prev - (2.0 / c1) * v1.dot(t_prev) * v1;
            const Vec3 v2 = tan - tL;
            const double c2 = v2.squaredNorm();
            s = c2 < 1e-20 ? sL : Vec3(sL - (2.0 / c2) * v2.dot(sL) * v2);
        }
        s = (s - s.dot(tan) * tan).normalized();
        Eigen::Matrix3d f;
        f.col(0) = s;
        f.col(1) = tan.cross(s);
        f.col(2) = tan;
        frames.push_back(f);
        x_prev = x;
        t_prev = tan;
        s_prev = s;
    }
    return frames;
}

} // namespace olive
