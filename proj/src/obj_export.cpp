#include "olive/obj_export.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "olive/errors.hpp"

namespace olive {

namespace {

void put3(std::ostream& out, const char* tag, double x, double y, double z) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%s %.6f %.6f %.6f\n", tag, x, y, z);
    out << buf;
}

} // namespace

void write_obj(std::ostream& out, const TriMesh& mesh) {
    if (!mesh.material_id.empty()) out << "o " << mesh.material_id << "\n";
    for (const Vec3& v : mesh.vertices) put3(out, "v", v.x(), v.y(), v.z());
    for (const Vec2& t : mesh.uvs) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "vt %.6f %.6f\n", t.x(), t.y());
        out << buf;
    }
    for (const Vec3& n : mesh.normals) put3(out, "vn", n.x(), n.y(), n.z());
    for (const auto& tri : mesh.triangles) {
        out << 'f';
        for (std::uint32_t idx : tri) {
            const std::uint32_t i = idx + 1; // OBJ indices are 1-based
            out << ' ' << i << '/' << i << '/' << i;
        }
        out << '\n';
    }
}

void write_obj(const std::filesystem::path& path, const TriMesh& mesh) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    write_obj(out, mesh);
    if (!out) throw IoError("write failed: " + path.string());
}

} // namespace olive
