#include "olive/branch_geometry.hpp"

#include <cmath>

#include "olive/errors.hpp"
#include "olive/rng.hpp"

namespace olive {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegToRad = kPi / 180.0;

} // namespace

void validate(const LeafParams& params) {
    if (!(params.length > params.width && params.width > 0.0))
        throw ParamError("leaf requires length > width > 0");
    if (params.segments < 2) throw ParamError("leaf needs at least 2 segments");
}

TriMesh tessellate_branch(const BezierCurve& curve, double radius_base,
                          double radius_tip, int rings, int sides,
                          double prune_t) {
    if (!(radius_base >= radius_tip && radius_tip > 0.0))
        throw ParamError("tube requires radius_base >= radius_tip > 0");
    if (rings < 2) throw ParamError("tube needs at least 2 rings");
    if (sides < 3) throw ParamError("tube needs at least 3 sides");
    if (!(prune_t > 0.0 && prune_t <= 1.0))
        throw ParamError("prune_t must lie in (0,1]");
    if (curve.control_points.size() < 2)
        throw ParamError("bezier curve needs at least 2 control points");

    double spread = 0.0;
    for (const Vec3& p : curve.control_points)
        spread += (p - curve.control_points.front()).norm();
    if (spread < 1e-12)
        throw GeometryError("degenerate curve: all control points coincide");

    std::vector<double> ts(static_cast<std::size_t>(rings));
    for (int i = 0; i < rings; ++i)
        ts[static_cast<std::size_t>(i)] =
            prune_t * static_cast<double>(i) / (rings - 1);
    const std::vector<Eigen::Matrix3d> frames = rmf_frames(curve, ts);

    TriMesh mesh;
    mesh.material_id = "branch";
    mesh.closed = true;

    for (int i = 0; i < rings; ++i) {
        const double f = static_cast<double>(i) / (rings - 1);
        const double radius = radius_base + f * (radius_tip - radius_base);
        const Vec3 center = bezier_point(curve, ts[static_cast<std::size_t>(i)]);
        const Eigen::Matrix3d& frame = frames[static_cast<std::size_t>(i)];
        for (int j = 0; j < sides; ++j) {
            const double ang = 2.0 * kPi * static_cast<double>(j) / sides;
            const Vec3 radial =
                std::cos(ang) * frame.col(0) + std::sin(ang) * frame.col(1);
            mesh.vertices.push_back(center + radius * radial);
            mesh.normals.push_back(radial);
            mesh.uvs.emplace_back(static_cast<double>(j) / sides, f);
        }
    }

    const auto ring = [sides](int i, int j) -> std::uint32_t {
        return static_cast<std::uint32_t>(i * sides + (j % sides));
    };
    for (int i = 0; i + 1 < rings; ++i) {
        for (int j = 0; j < sides; ++j) {
            const std::uint32_t a = ring(i, j);
            const std::uint32_t b = ring(i, j + 1);
            const std::uint32_t c = ring(i + 1, j + 1);
            const std::uint32_t d = ring(i + 1, j);
            mesh.triangles.push_back({a, b, c});
            mesh.triangles.push_back({a, c, d});
        }
    }
    // End caps: fans anchored at each ring's first vertex, no extra vertices.
    for (int j = 1; j + 1 < sides; ++j)
        mesh.triangles.push_back({ring(0, 0), ring(0, j + 1), ring(0, j)});
    for (int j = 1; j + 1 < sides; ++j)
        mesh.triangles.push_back(
            {ring(rings - 1, 0), ring(rings - 1, j), ring(rings - 1, j + 1)});

    recompute_normals(mesh);
    return mesh;
}

TriMesh make_leaf(const LeafParams& params, std::uint64_t rng_seed) {
    validate(params);
    Rng rng = Rng(rng_seed).child(0x1eaf);

    // In-plane jitter only: curl = 0 must stay exactly planar for any seed.
    const double length = params.length * rng.uniform(0.97, 1.03);
    const double width = params.width * rng.uniform(0.95, 1.05);
    const double peak = rng.uniform(0.32, 0.42); // widest point along the blade

    const int segs = std::min(params.segments, 14); // 4*segs - 4 <= 52 triangles
    TriMesh mesh;
    mesh.material_id = "leaf";
    mesh.closed = false;

    // Half-width profile: smooth lanceolate arc, zero at both tips.
    const auto half_width = [&](double t) {
        const double rise = t < peak ? t / peak : (1.0 - t) / (1.0 - peak);
        return 0.5 * width * std::sin(0.5 * kPi * std::max(0.0, rise));
    };
    const auto lift = [&](double t) { return params.curl * length * t * t; };

    // Station 0 and station `segs` are single tip vertices.
    mesh.vertices.emplace_back(0.0, 0.0, 0.0);
    mesh.uvs.emplace_back(0.0, 0.5);
    for (int i = 1; i < segs; ++i) {
        const double t = static_cast<double>(i) / segs;
        const double x = t * length;
        const double h = half_width(t);
        const double y = lift(t);
        mesh.vertices.emplace_back(x, y, -h);
        mesh.uvs.emplace_back(t, 0.0);
        mesh.vertices.emplace_back(x, y, 0.0);
        mesh.uvs.emplace_back(t, 0.5);
        mesh.vertices.emplace_back(x, y, h);
        mesh.uvs.emplace_back(t, 1.0);
    }
    mesh.vertices.emplace_back(length, lift(1.0), 0.0);
    mesh.uvs.emplace_back(1.0, 0.5);

    const auto station = [&](int i, int k) -> std::uint32_t {
        // k: 0 = -z edge, 1 = midrib, 2 = +z edge
        return static_cast<std::uint32_t>(1 + (i - 1) * 3 + k);
    };
    const std::uint32_t stem = 0;
    const std::uint32_t tip = static_cast<std::uint32_t>(mesh.vertices.size() - 1);

    mesh.triangles.push_back({stem, station(1, 0), station(1, 1)});
    mesh.triangles.push_back({stem, station(1, 1), station(1, 2)});
    for (int i = 1; i + 1 < segs; ++i) {
        for (int k = 0; k < 2; ++k) {
            const std::uint32_t a = station(i, k);
            const std::uint32_t b = station(i, k + 1);
            const std::uint32_t c = station(i + 1, k + 1);
            const std::uint32_t d = station(i + 1, k);
            mesh.triangles.push_back({a, b, c});
            mesh.triangles.push_back({a, c, d});
        }
    }
    mesh.triangles.push_back({station(segs - 1, 0), tip, station(segs - 1, 1)});
    mesh.triangles.push_back({station(segs - 1, 1), tip, station(segs - 1, 2)});

    recompute_normals(mesh);
    return mesh;
}

std::vector<InstanceTransform> scatter_on_curve(const BezierCurve& curve,
                                                int count,
                                                double orientation_jitter_deg,
                                                double size_jitter,
                                                std::uint64_t rng_seed) {
    if (count < 0) throw ParamError("count must be non-negative");
    std::vector<InstanceTransform> out;
    if (count == 0) return out;
    out.reserve(static_cast<std::size_t>(count));

    Rng base(rng_seed);
    std::vector<double> ts(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        // Stratified t, one uniform sample per stratum; draws come from a
        // child stream per instance so counts can change independently.
        Rng stream = base.child(static_cast<std::uint64_t>(i));
        ts[static_cast<std::size_t>(i)] =
            (static_cast<double>(i) + stream.next_double()) / count;
    }
    const std::vector<Eigen::Matrix3d> frames = rmf_frames(curve, ts);

    for (int i = 0; i < count; ++i) {
        Rng stream = base.child(static_cast<std::uint64_t>(i));
        stream.next_double(); // t draw, consumed above
        InstanceTransform pose;
        pose.translation = bezier_point(curve, ts[static_cast<std::size_t>(i)]);
        const Quat frame_q(frames[static_cast<std::size_t>(i)]);
        const Vec3 axis = stream.unit_vector();
        const double angle =
            stream.uniform(0.0, orientation_jitter_deg) * kDegToRad;
        pose.rotation = Quat(Eigen::AngleAxisd(angle, axis)) * frame_q;
        pose.scale = stream.uniform(1.0 - size_jitter, 1.0 + size_jitter);
        out.push_back(pose);
    }
    return out;
}

BezierCurve random_branch_curve(std::uint64_t rng_seed, double length,
                                double wander) {
    Rng rng = Rng(rng_seed).child(0xb7a9c4);
    BezierCurve curve;
    const int points = 6; // degree 5
    for (int i = 0; i < points; ++i) {
        const double x = length * static_cast<double>(i) / (points - 1);
        if (i == 0) {
            curve.control_points.emplace_back(0.0, 0.0, 0.0);
        } else {
            curve.control_points.emplace_back(
                x + rng.uniform(-0.15, 0.15) * length / (points - 1),
                rng.uniform(-wander, wander) * 0.35,
                rng.uniform(-wander, wander));
        }
    }
    return curve;
}

} // namespace olive
