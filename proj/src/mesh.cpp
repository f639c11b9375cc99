#include "fluxlag/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fluxlag {

namespace {

constexpr double kFocusTol = 1e-12;

void require_even_count(std::size_t n) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("mass mesh needs an even node count >= 4, got " + std::to_string(n));
  }
}

// Spacing weights of one band between two anchors: r^d where d is the index
// distance to the nearest refined end (or to the band middle).
struct Band {
  double length = 0.0;
  bool refine_left = false;
  bool refine_right = false;
  bool refine_middle = false;

  std::vector<double> weights(std::size_t count, double ratio) const {
    std::vector<double> w(count);
    for (std::size_t j = 0; j < count; ++j) {
      double d = -1.0;
      auto take = [&d](double v) { d = d < 0.0 ? v : std::min(d, v); };
      if (refine_left) take(static_cast<double>(j));
      if (refine_right) take(static_cast<double>(count - 1 - j));
      if (refine_middle) take(std::abs(static_cast<double>(j) - 0.5 * static_cast<double>(count - 1)));
      w[j] = d < 0.0 ? 1.0 : std::pow(ratio, d);
    }
    return w;
  }

  // Smallest spacing count whose finest spacing is no larger than h.
  std::size_t count_for(double h, double ratio, std::size_t cap) const {
    auto covers = [&](std::size_t count) {
      const auto w = weights(count, ratio);
      return h * std::accumulate(w.begin(), w.end(), 0.0) >= length;
    };
    std::size_t lo = 1, hi = cap;
    if (covers(lo)) return lo;
    if (!covers(hi)) return hi;
    while (hi - lo > 1) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (covers(mid)) hi = mid; else lo = mid;
    }
    return hi;
  }
};

bool contains(const std::vector<double>& set, double v) {
  return std::any_of(set.begin(), set.end(), [v](double f) { return std::abs(f - v) <= kFocusTol; });
}

}  // namespace

MassMesh::MassMesh(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  const std::size_t n = nodes_.size();
  require_even_count(n);
  if (nodes_.front() != -0.5 || nodes_.back() != 0.5) {
    throw std::invalid_argument("mass mesh must span [-1/2, 1/2] exactly");
  }
  spacings_.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    spacings_[i] = nodes_[i + 1] - nodes_[i];
    if (!(spacings_[i] > 0.0)) {
      throw std::invalid_argument("mass mesh nodes must be strictly increasing (spacing " +
                                  std::to_string(i) + ")");
    }
  }
  min_spacing_ = *std::min_element(spacings_.begin(), spacings_.end());
}

MassMesh MassMesh::uniform(std::size_t n) {
  require_even_count(n);
  std::vector<double> nodes(n);
  const double denom = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n / 2; ++i) {
    nodes[i] = -0.5 + static_cast<double>(i) / denom;
    nodes[n - 1 - i] = -nodes[i];
  }
  return MassMesh(std::move(nodes));
}

MassMesh MassMesh::graded(std::size_t n, std::vector<double> focus, double ratio) {
  require_even_count(n);
  if (!(ratio > 1.0)) {
    throw std::invalid_argument("graded mesh ratio must be > 1");
  }
  for (double f : focus) {
    if (!(f >= -0.5 - kFocusTol && f <= 0.5 + kFocusTol)) {
      throw std::invalid_argument("focus point outside [-1/2, 1/2]: " + std::to_string(f));
    }
  }
  for (double f : focus) {
    if (!contains(focus, -f)) {
      throw std::invalid_argument("focus set must be symmetric about 0 (missing " + std::to_string(-f) + ")");
    }
  }

  // Anchors split the interval into bands; 0 is never an anchor because an
  // even node count puts a segment (not a node) at the center.
  std::vector<double> anchors{-0.5, 0.5};
  for (double f : focus) {
    if (std::abs(f) > kFocusTol && std::abs(f) < 0.5 - kFocusTol && !contains(anchors, f)) {
      anchors.push_back(f);
    }
  }
  std::sort(anchors.begin(), anchors.end());

  const std::size_t band_count = anchors.size() - 1;  // always odd
  const std::size_t total = n - 1;                    // always odd
  if (band_count > total) {
    throw std::invalid_argument("too many focus points for " + std::to_string(n) + " nodes");
  }
  std::vector<Band> bands(band_count);
  for (std::size_t b = 0; b < band_count; ++b) {
    bands[b].length = anchors[b + 1] - anchors[b];
    bands[b].refine_left = contains(focus, anchors[b]);
    bands[b].refine_right = contains(focus, anchors[b + 1]);
  }
  const std::size_t center = band_count / 2;
  bands[center].refine_middle = contains(focus, 0.0);

  // Pick a common finest spacing h so that the band counts add up to n - 1.
  auto side_counts = [&](double h) {
    std::vector<std::size_t> counts(center);
    for (std::size_t b = 0; b < center; ++b) counts[b] = bands[b].count_for(h, ratio, total);
    return counts;
  };
  auto used = [&](double h) {
    std::size_t sum = bands[center].count_for(h, ratio, total);
    for (auto c : side_counts(h)) sum += 2 * c;
    return sum;
  };
  double lo = 1e-300;  // used(lo) >= total
  double hi = 1.0;     // used(hi) is minimal
  if (used(hi) >= total) {
    lo = hi;
  } else {
    for (int it = 0; it < 200; ++it) {
      const double mid = std::sqrt(lo * hi);
      if (used(mid) >= total) lo = mid; else hi = mid;
    }
  }
  std::vector<std::size_t> counts = side_counts(lo);
  auto side_sum = [&counts] { return std::accumulate(counts.begin(), counts.end(), std::size_t{0}); };
  while (2 * side_sum() >= total) {
    auto largest = std::max_element(counts.begin(), counts.end());
    if (*largest <= 1) throw std::invalid_argument("cannot distribute nodes over the focus bands");
    --*largest;
  }
  const std::size_t center_count = total - 2 * side_sum();

  std::vector<double> spacing;
  spacing.reserve(total);
  std::vector<std::vector<double>> left_bands;
  for (std::size_t b = 0; b < center; ++b) {
    auto w = bands[b].weights(counts[b], ratio);
    const double scale = bands[b].length / std::accumulate(w.begin(), w.end(), 0.0);
    for (double& v : w) v *= scale;
    spacing.insert(spacing.end(), w.begin(), w.end());
    left_bands.push_back(std::move(w));
  }
  {
    auto w = bands[center].weights(center_count, ratio);
    const double scale = bands[center].length / std::accumulate(w.begin(), w.end(), 0.0);
    for (double& v : w) v *= scale;
    spacing.insert(spacing.end(), w.begin(), w.end());
  }
  for (auto it = left_bands.rbegin(); it != left_bands.rend(); ++it) {
    spacing.insert(spacing.end(), it->rbegin(), it->rend());
  }

  std::vector<double> nodes(n);
  nodes[0] = -0.5;
  for (std::size_t i = 1; i < n; ++i) nodes[i] = nodes[i - 1] + spacing[i - 1];
  nodes[n - 1] = 0.5;
  for (std::size_t i = 0; i < n / 2; ++i) {
    const double half = 0.5 * (nodes[n - 1 - i] - nodes[i]);
    nodes[i] = -half;
    nodes[n - 1 - i] = half;
  }
  return MassMesh(std::move(nodes));
}

MassMesh MeshSpec::build() const {
  return kind == Kind::uniform ? MassMesh::uniform(n) : MassMesh::graded(n, focus, ratio);
}

std::string to_string(MeshSpec::Kind kind) {
  return kind == MeshSpec::Kind::uniform ? "uniform" : "graded";
}

}  // namespace fluxlag
