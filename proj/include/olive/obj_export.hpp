#pragma once

#include <filesystem>
#include <iosfwd>

#include "olive/mesh.hpp"

namespace olive {

// Wavefront OBJ text: v/vt/vn records at 6 decimal places, faces as
// 1-based v/vt/vn triples (one index per vertex, attributes are per-vertex).
void write_obj(std::ostream& out, const TriMesh& mesh);

void write_obj(const std::filesystem::path& path, const TriMesh& mesh);

} // namespace olive
