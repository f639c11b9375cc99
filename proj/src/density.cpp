#include "fluxlag/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fluxlag {

namespace {

constexpr double kNormalizeTol = 1e-6;
constexpr int kSamplesPerPiece = 256;

double sqrt_antiderivative(double x, double anchor) {
  const double d = x - anchor;
  return d >= 0.0 ? (2.0 / 3.0) * d * std::sqrt(d) : -(2.0 / 3.0) * (-d) * std::sqrt(-d);
}

double poly_antiderivative(const std::array<double, 3>& c, double x) {
  return x * (c[0] + x * (c[1] / 2.0 + x * c[2] / 3.0));
}

}  // namespace

double InitialDensity::Piece::value(double x) const {
  double v = poly[0] + x * (poly[1] + x * poly[2]);
  if (sqrt_coeff != 0.0) v += sqrt_coeff * std::sqrt(std::abs(x - sqrt_anchor));
  return v;
}

double InitialDensity::Piece::integral_to(double x) const {
  x = std::clamp(x, left, right);
  double s = poly_antiderivative(poly, x) - poly_antiderivative(poly, left);
  if (sqrt_coeff != 0.0) {
    s += sqrt_coeff * (sqrt_antiderivative(x, sqrt_anchor) - sqrt_antiderivative(left, sqrt_anchor));
  }
  return s;
}

InitialDensity::InitialDensity(std::string preset, std::vector<Piece> pieces)
    : preset_(std::move(preset)), pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw std::invalid_argument("density has no pieces");
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const Piece& p = pieces_[k];
    if (!(p.right > p.left) || !std::isfinite(p.left) || !std::isfinite(p.right)) {
      throw std::invalid_argument("density piece " + std::to_string(k) + " has an empty or invalid interval");
    }
    if (k > 0 && p.left != pieces_[k - 1].right) {
      throw std::invalid_argument("density pieces must be contiguous (disconnected support is not supported)");
    }
    const double vertex = p.poly[2] != 0.0 ? -p.poly[1] / (2.0 * p.poly[2]) : p.left;
    auto check = [&](double x) {
      const double v = p.value(x);
      if (!std::isfinite(v) || v < 0.0) {
        throw std::invalid_argument("density is negative or non-finite at x = " + std::to_string(x));
      }
      max_value_ = std::max(max_value_, v);
    };
    for (int s = 0; s <= kSamplesPerPiece; ++s) {
      check(p.left + (p.right - p.left) * s / kSamplesPerPiece);
    }
    if (vertex > p.left && vertex < p.right) check(vertex);
  }

  auto is_zero = [](const Piece& p) { return !(p.integral_to(p.right) > 0.0); };
  while (!pieces_.empty() && is_zero(pieces_.front())) pieces_.erase(pieces_.begin());
  while (!pieces_.empty() && is_zero(pieces_.back())) pieces_.pop_back();
  if (pieces_.empty()) throw std::invalid_argument("density has zero mass");
  for (const Piece& p : pieces_) {
    if (is_zero(p)) {
      throw std::invalid_argument("density vanishes on [" + std::to_string(p.left) + ", " +
                                  std::to_string(p.right) +
                                  "] inside its support; the pseudo-inverse would be ambiguous");
    }
  }

  double mass = 0.0;
  for (const Piece& p : pieces_) mass += p.integral_to(p.right);
  if (std::abs(mass - 1.0) > kNormalizeTol) {
    throw std::invalid_argument("density mass is " + std::to_string(mass) + ", expected 1");
  }
  if (mass != 1.0) {
    for (Piece& p : pieces_) {
      for (double& c : p.poly) c /= mass;
      p.sqrt_coeff /= mass;
    }
    max_value_ /= mass;
  }
  cumulative_.resize(pieces_.size() + 1, 0.0);
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    cumulative_[k + 1] = cumulative_[k] + pieces_[k].integral_to(pieces_[k].right);
  }
}

InitialDensity InitialDensity::indicator(double a, double b) {
  if (!(b > a)) throw std::invalid_argument("indicator needs a < b");
  Piece p;
  p.left = a;
  p.right = b;
  p.poly = {1.0 / (b - a), 0.0, 0.0};
  return InitialDensity("indicator", {p});
}

InitialDensity InitialDensity::triangle(double center, double half_width) {
  if (!(half_width > 0.0)) throw std::invalid_argument("triangle needs half_width > 0");
  const double w = half_width;
  const double h = 1.0 / w;  // peak height
  Piece up;
  up.left = center - w;
  up.right = center;
  up.poly = {h * (w - center) / w, h / w, 0.0};  // h (1 + (x - c)/w)
  Piece down;
  down.left = center;
  down.right = center + w;
  down.poly = {h * (w + center) / w, -h / w, 0.0};
  return InitialDensity("triangle", {up, down});
}

InitialDensity InitialDensity::composite_sqrt() {
  const double k = 3.0 / (2.0 * std::sqrt(2.0));
  Piece outer_left{-1.0, -0.5, {0.25, 0.0, 0.0}, 0.0, 0.0};
  Piece inner_left{-0.5, 0.0, {0.25, 0.0, 0.0}, k, -0.5};
  Piece inner_right{0.0, 0.5, {0.25, 0.0, 0.0}, k, 0.5};
  Piece outer_right{0.5, 1.0, {0.25, 0.0, 0.0}, 0.0, 0.0};
  return InitialDensity("composite_sqrt", {outer_left, inner_left, inner_right, outer_right});
}

InitialDensity InitialDensity::composite_step() {
  Piece outer_left{-1.0, -0.5, {0.25, 0.0, 0.0}, 0.0, 0.0};
  Piece inner{-0.5, 0.5, {0.75, 0.0, 0.0}, 0.0, 0.0};
  Piece outer_right{0.5, 1.0, {0.25, 0.0, 0.0}, 0.0, 0.0};
  return InitialDensity("composite_step", {outer_left, inner, outer_right});
}

InitialDensity InitialDensity::piecewise(const std::vector<double>& breakpoints,
                                         const std::vector<std::array<double, 3>>& coefficients) {
  if (breakpoints.size() < 2 || coefficients.size() + 1 != breakpoints.size()) {
    throw std::invalid_argument("piecewise density needs k+1 breakpoints for k pieces");
  }
  std::vector<Piece> pieces;
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    Piece p;
    p.left = breakpoints[k];
    p.right = breakpoints[k + 1];
    p.poly = coefficients[k];
    pieces.push_back(p);
  }
  return InitialDensity("piecewise", std::move(pieces));
}

double InitialDensity::operator()(double x) const {
  if (x < support_left() || x > support_right()) return 0.0;
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](double v, const Piece& p) { return v < p.right; });
  if (it == pieces_.end()) it = std::prev(pieces_.end());
  return it->value(x);
}

double InitialDensity::cdf(double x) const {
  if (x <= support_left()) return 0.0;
  if (x >= support_right()) return 1.0;
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](double v, const Piece& p) { return v < p.right; });
  if (it == pieces_.end()) return 1.0;
  const auto k = static_cast<std::size_t>(it - pieces_.begin());
  return std::clamp(cumulative_[k] + it->integral_to(x), 0.0, 1.0);
}

}  // namespace fluxlag
