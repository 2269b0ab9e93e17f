#pragma once

#include <cstdint>
#include <variant>
#include <vector>

namespace imvs {

/// Disocclusion statistics of one synthesized position.
struct SynthesisParams {
  double alpha = 0.0;    // disoccluded from the first reference's projection
  double gamma = 0.0;    // disoccluded from both projections
  double inpaint = 0.0;  // mean per-pixel MSE of inpainted areas
};

/// DIBR synthesis distortion from two references whose total (texture +
/// depth) distortions are `first` and `second`:
///   (1 - alpha) * first + (1 - gamma) * alpha * second + gamma * alpha * I
/// Throws std::domain_error when alpha/gamma leave [0, 1] or an input is
/// negative.
double SynthDistortion(const SynthesisParams& params, double first,
                       double second);

/// Closed-form stand-in for measured distortions.
///
/// Disocclusion grows with the reference baseline:
///   alpha = min(1, a0 * |x_r - x_l| + a1 * noise(u, l, r)),  gamma = g0 * alpha
/// with noise a deterministic hash in [0, 1). Texture distortion decays with
/// rate: d_t(v, r) = max(floor, sigma2[v] * 2^(-kappa * r_mb)).
struct ParametricModel {
  double a0 = 0.0;       // per scene unit
  double a1 = 0.0;
  double g0 = 1.0;
  double inpaint = 0.0;  // I, MSE
  double kappa = 1.0;    // per megabit
  double floor = 0.0;    // MSE
  std::uint64_t noise_seed = 0;
  std::vector<double> sigma2;     // per view
  std::vector<double> depth_mse;  // per view, fixed high-quality depth

  /// Hash in [0, 1) keyed by the seed and (u, left, right).
  double Noise(int u, int left, int right) const;
  /// Disocclusion of position u synthesized from views left < right at
  /// coordinates x_left, x_right.
  SynthesisParams Params(int u, int left, int right, double x_left,
                         double x_right) const;
  double TextureMse(int view, double rate_mb) const;
  /// Texture plus depth distortion of a coded view.
  double CodedMse(int view, double rate_mb) const {
    return TextureMse(view, rate_mb) + depth_mse[view];
  }
};

/// Dense distortion table d[u][left][right][left level][right level] (MSE).
/// Level indices count nonzero rate levels only. Entries that are not
/// queryable (left >= right, or u outside [left, right]) hold NaN.
struct DistortionTable {
  int positions = 0;
  int views = 0;
  int levels = 0;
  std::vector<double> values;

  std::size_t Offset(int u, int left, int right, int left_level,
                     int right_level) const {
    return ((((static_cast<std::size_t>(u) * views + left) * views + right) *
                 levels +
             left_level) *
                levels +
            right_level);
  }
  double At(int u, int left, int right, int left_level,
            int right_level) const {
    return values[Offset(u, left, right, left_level, right_level)];
  }
};

using DistortionConfig = std::variant<ParametricModel, DistortionTable>;

}  // namespace imvs
