#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vemesh/mesh.hpp"

namespace vemesh {

Mesh load_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MeshParseError("cannot open '" + path + "'", 0);

    std::size_t lineno = 0;
    std::string line;

    auto next_line = [&]() -> std::string {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty()) return line;
        }
        throw MeshParseError("unexpected end of file", lineno);
    };

    std::string header = next_line();
    {
        std::istringstream ss(header);
        std::string magic;
        int version = 0;
        ss >> magic >> version;
        if (magic != "POLYMESH" || version != 1)
            throw MeshParseError("malformed header, expected 'POLYMESH 1'", lineno);
    }

    std::size_t nv = 0, ne = 0;
    {
        std::istringstream ss(next_line());
        if (!(ss >> nv >> ne)) throw MeshParseError("malformed count line", lineno);
    }
    if (ne == 0) throw MeshParseError("no elements", lineno);

    Mesh mesh;
    mesh.vertices.reserve(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        std::istringstream ss(next_line());
        double x = 0.0, y = 0.0;
        if (!(ss >> x >> y)) throw MeshParseError("malformed vertex line", lineno);
        mesh.vertices.push_back({x, y});
    }

    mesh.elements.reserve(ne);
    for (std::size_t e = 0; e < ne; ++e) {
        std::istringstream ss(next_line());
        std::size_t k = 0;
        if (!(ss >> k) || k < 3) throw MeshParseError("malformed element line", lineno);
        std::vector<std::size_t> cycle(k);
        for (std::size_t i = 0; i < k; ++i) {
            if (!(ss >> cycle[i])) throw MeshParseError("malformed element line", lineno);
            if (cycle[i] >= nv) throw MeshParseError("vertex index out of range", lineno);
        }
        Polygon poly;
        poly.reserve(k);
        for (std::size_t idx : cycle) poly.push_back(mesh.vertices[idx]);
        if (signed_area(poly) <= 0.0)
            throw MeshParseError("element is not counterclockwise", lineno);
        mesh.elements.push_back(std::move(cycle));
    }

    rebuild_boundary_flags(mesh);
    return mesh;
}

void save_mesh(const Mesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << "POLYMESH 1\n";
    out << mesh.num_vertices() << " " << mesh.num_elements() << "\n";
    char buf[80];
    for (const Vec2& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", v.x, v.y);
        out << buf;
    }
    for (const auto& cycle : mesh.elements) {
        out << cycle.size();
        for (std::size_t idx : cycle) out << " " << idx;
        out << "\n";
    }
}

}  // namespace vemesh
