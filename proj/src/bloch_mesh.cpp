#include "steer/bloch_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace steer {

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 normalized(const Vec3& v) {
  const double n = std::sqrt(dot(v, v));
  if (n == 0.0) throw std::invalid_argument("normalized: zero vector");
  return {v[0] / n, v[1] / n, v[2] / n};
}

namespace {

using Triangle = std::array<std::size_t, 3>;

void icosahedron(std::vector<Vec3>& verts, std::vector<Triangle>& tris) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  const std::array<Vec3, 12> raw{{{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
                                  {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
                                  {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}}};
  for (const auto& v : raw) verts.push_back(normalized(v));
  tris = {{0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
          {11, 10, 2}, {10, 7, 6}, {7, 1, 8}, {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8},
          {3, 8, 9}, {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};
}

void subdivide(std::vector<Vec3>& verts, std::vector<Triangle>& tris) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> midpoints;
  auto midpoint = [&](std::size_t i, std::size_t j) {
    const auto key = std::minmax(i, j);
    if (auto it = midpoints.find(key); it != midpoints.end()) return it->second;
    const Vec3& a = verts[i];
    const Vec3& b = verts[j];
    verts.push_back(normalized({a[0] + b[0], a[1] + b[1], a[2] + b[2]}));
    midpoints.emplace(key, verts.size() - 1);
    return verts.size() - 1;
  };
  std::vector<Triangle> next;
  next.reserve(tris.size() * 4);
  for (const auto& [a, b, c] : tris) {
    const std::size_t ab = midpoint(a, b), bc = midpoint(b, c), ca = midpoint(c, a);
    next.push_back({a, ab, ca});
    next.push_back({b, bc, ab});
    next.push_back({c, ca, bc});
    next.push_back({ab, bc, ca});
  }
  tris = std::move(next);
}

}  // namespace

BlochMesh make_bloch_mesh(std::size_t vertex_count) {
  const auto level = std::find(kMeshSizes.begin(), kMeshSizes.end(), vertex_count);
  if (level == kMeshSizes.end()) {
    throw std::invalid_argument("mesh size " + std::to_string(vertex_count) +
                                " unsupported; use 12, 42, 162, 642 or 2562");
  }
  std::vector<Vec3> verts;
  std::vector<Triangle> tris;
  icosahedron(verts, tris);
  for (auto k = kMeshSizes.begin(); k != level; ++k) subdivide(verts, tris);

  BlochMesh mesh;
  mesh.size = verts.size();
  mesh.triangles = tris;
  mesh.inner.kind = PolytopeKind::Inner;
  mesh.inner.vertices = verts;
  mesh.inner.scale = 1.0;

  // Each triangle's plane sits at distance cos(theta_t) from the origin, where
  // theta_t is the angular radius of its circumscribed cap. The tangent planes
  // at the three corners meet at normal / cos(theta_t).
  mesh.outer.kind = PolytopeKind::Outer;
  double min_offset = 1.0;
  for (const auto& [a, b, c] : tris) {
    const Vec3& va = verts[a];
    const Vec3& vb = verts[b];
    const Vec3& vc = verts[c];
    Vec3 n = normalized(cross({vb[0] - va[0], vb[1] - va[1], vb[2] - va[2]},
                              {vc[0] - va[0], vc[1] - va[1], vc[2] - va[2]}));
    double offset = dot(n, va);
    if (offset < 0) {
      n = {-n[0], -n[1], -n[2]};
      offset = -offset;
    }
    if (offset <= 0.0) throw std::logic_error("make_bloch_mesh: degenerate triangle through the origin");
    min_offset = std::min(min_offset, offset);
    mesh.outer.vertices.push_back({n[0] / offset, n[1] / offset, n[2] / offset});
  }
  mesh.outer.scale = 1.0 / min_offset;
  mesh.outer.covering_angle = std::acos(min_offset);
  mesh.inner.covering_angle = mesh.outer.covering_angle;
  return mesh;
}

}  // namespace steer
