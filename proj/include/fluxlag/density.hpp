#pragma once

#include <array>
#include <string>
#include <vector>

namespace fluxlag {

/// Compactly supported probability density on a connected interval.
///
/// Every preset is stored as a list of pieces on consecutive breakpoints.
/// A piece evaluates to
///     c0 + c1 x + c2 x^2 + s * sqrt(|x - anchor|)
/// which covers the polynomial, indicator, triangle and square-root bump
/// presets with closed-form antiderivatives.
class InitialDensity {
 public:
  struct Piece {
    double left = 0.0;
    double right = 0.0;
    std::array<double, 3> poly{0.0, 0.0, 0.0};
    double sqrt_coeff = 0.0;
    double sqrt_anchor = 0.0;

    double value(double x) const;
    /// Integral of the piece over [left, x], x clamped to the piece.
    double integral_to(double x) const;
  };

  /// Uniform density on [a, b].
  static InitialDensity indicator(double a = -0.5, double b = 0.5);
  /// Hat function of unit mass, (1 - |x - center| / w)_+ / w.
  static InitialDensity triangle(double center = 0.0, double half_width = 1.0);
  /// 1/4 on [-1, 1] plus (3 / (2 sqrt 2)) sqrt(1/2 - |x|) on [-1/2, 1/2].
  static InitialDensity composite_sqrt();
  /// 1/4 on [-1, -1/2] and [1/2, 1], 3/4 on [-1/2, 1/2].
  static InitialDensity composite_step();
  /// Polynomials of degree <= 2 in the global coordinate x, one per interval
  /// [breakpoints[k], breakpoints[k+1]].
  static InitialDensity piecewise(const std::vector<double>& breakpoints,
                                  const std::vector<std::array<double, 3>>& coefficients);

  const std::string& preset() const noexcept { return preset_; }
  const std::vector<Piece>& pieces() const noexcept { return pieces_; }

  double operator()(double x) const;
  /// Distribution function F(x) = integral of the density over (-inf, x].
  double cdf(double x) const;
  double support_left() const noexcept { return pieces_.front().left; }
  double support_right() const noexcept { return pieces_.back().right; }
  double max_value() const noexcept { return max_value_; }

 private:
  InitialDensity(std::string preset, std::vector<Piece> pieces);

  std::string preset_;
  std::vector<Piece> pieces_;
  std::vector<double> cumulative_;  // mass to the left of each piece
  double max_value_ = 0.0;
};

}  // namespace fluxlag
