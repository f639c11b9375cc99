#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fluxlag {

/// Fixed partition of the mass interval [-1/2, 1/2].
///
/// Nodes are stored zero-based: node(0) == -0.5, node(size()-1) == +0.5.
/// The node count is even so that the mass center falls between the two
/// middle nodes. Meshes are immutable once built.
class MassMesh {
 public:
  /// Equally spaced nodes. Throws std::invalid_argument for odd n or n < 4.
  static MassMesh uniform(std::size_t n);

  /// Spacings shrink geometrically (factor `ratio` per node) toward every
  /// focus point. Focus points lie in [-1/2, 1/2] and must form a set
  /// symmetric about 0; ±1/2 refine toward the ends of the interval.
  static MassMesh graded(std::size_t n, std::vector<double> focus, double ratio);

  std::size_t size() const noexcept { return nodes_.size(); }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> spacings() const noexcept { return spacings_; }
  double node(std::size_t i) const { return nodes_[i]; }
  double spacing(std::size_t i) const { return spacings_[i]; }
  double min_spacing() const noexcept { return min_spacing_; }

 private:
  explicit MassMesh(std::vector<double> nodes);

  std::vector<double> nodes_;
  std::vector<double> spacings_;
  double min_spacing_ = 0.0;
};

/// Mesh section of a scenario document.
struct MeshSpec {
  enum class Kind { uniform, graded };

  Kind kind = Kind::uniform;
  std::size_t n = 1000;
  std::vector<double> focus;
  double ratio = 1.0;

  MassMesh build() const;

  bool operator==(const MeshSpec&) const = default;
};

std::string to_string(MeshSpec::Kind kind);

}  // namespace fluxlag
