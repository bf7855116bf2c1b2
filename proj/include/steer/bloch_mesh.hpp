#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace steer {

using Vec3 = std::array<double, 3>;

enum class PolytopeKind { Inner, Outer };

/// Polytope approximating the Bloch ball.
///
/// Inner polytopes have their vertices on the unit sphere, so every point of
/// the hull is a valid qubit state. Outer polytopes contain the unit ball;
/// their vertices are the apexes of the tangent planes over each mesh
/// triangle and sit at radius at most `scale` = 1/cos(covering angle).
struct BlochPolytope {
  PolytopeKind kind = PolytopeKind::Inner;
  std::vector<Vec3> vertices;
  double scale = 1.0;
  double covering_angle = 0.0;
};

struct BlochMesh {
  std::size_t size = 0;  // vertices on the sphere
  BlochPolytope inner;
  BlochPolytope outer;
  std::vector<std::array<std::size_t, 3>> triangles;
};

/// Sizes produced by geodesic subdivision of the icosahedron: 10 * 4^k + 2.
inline constexpr std::array<std::size_t, 5> kMeshSizes{12, 42, 162, 642, 2562};

/// Geodesic icosphere with `vertex_count` vertices (one of kMeshSizes). Each
/// level contains the previous one, so inner polytopes are nested and the
/// tangent-plane outer polytopes shrink monotonically.
BlochMesh make_bloch_mesh(std::size_t vertex_count);

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross(const Vec3& a, const Vec3& b);
Vec3 normalized(const Vec3& v);

}  // namespace steer
