#pragma once

#include <optional>
#include <string>

#include "blockade/constructions.hpp"
#include "blockade/delaunay.hpp"

namespace blockade {

struct Scene {
  PointSet P;
  CircleFamily circles;
  std::optional<PointSet> Q;
  bool hull = true;
  /// Delaunay edges of P are drawn when set.
  bool edges = false;
};

/// Display only: coordinates are printed with 12 significant digits.
std::string render_svg(const Scene& scene);

}  // namespace blockade
