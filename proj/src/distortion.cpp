#include "imvs/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace imvs {

namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double SynthDistortion(const SynthesisParams& params, double first,
                       double second) {
  const double a = params.alpha;
  const double g = params.gamma;
  if (!(a >= 0.0 && a <= 1.0) || !(g >= 0.0 && g <= 1.0) ||
      !(params.inpaint >= 0.0) || !(first >= 0.0) || !(second >= 0.0)) {
    throw std::domain_error("synthesis distortion: argument out of domain");
  }
  return (1.0 - a) * first + (1.0 - g) * a * second + g * a * params.inpaint;
}

double ParametricModel::Noise(int u, int left, int right) const {
  std::uint64_t h = SplitMix64(noise_seed);
  h = SplitMix64(h ^ static_cast<std::uint64_t>(u));
  h = SplitMix64(h ^ static_cast<std::uint64_t>(left));
  h = SplitMix64(h ^ static_cast<std::uint64_t>(right));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

SynthesisParams ParametricModel::Params(int u, int left, int right,
                                        double x_left, double x_right) const {
  SynthesisParams p;
  p.alpha = std::min(1.0, a0 * std::abs(x_right - x_left) +
                              a1 * Noise(u, left, right));
  p.gamma = g0 * p.alpha;
  p.inpaint = inpaint;
  return p;
}

double ParametricModel::TextureMse(int view, double rate_mb) const {
  return std::max(floor, sigma2[view] * std::exp2(-kappa * rate_mb));
}

DistortionOracle::DistortionOracle(const ScenarioSpec& spec)
    : view_count_(spec.view_count()),
      views_(spec.views.positions),
      window_(spec.window.positions),
      popularity_(spec.window.popularity),
      levels_(spec.grid.NonzeroLevels()),
      quantum_mb_(spec.grid.quantum_mb),
      config_(spec.distortion) {
  const std::size_t n_levels = levels_.size();
  segments_.assign(static_cast<std::size_t>(view_count_) * view_count_ *
                       n_levels * n_levels,
                   std::numeric_limits<double>::quiet_NaN());
  for (int l = 0; l < view_count_; ++l) {
    for (int r = l + 1; r < view_count_; ++r) {
      for (std::size_t il = 0; il < n_levels; ++il) {
        for (std::size_t ir = 0; ir < n_levels; ++ir) {
          segments_[SegmentOffset(l, r, il, ir)] = SumSegment(l, r, il, ir);
        }
      }
    }
  }
}

int DistortionOracle::LevelIndex(Rate rate) const {
  const auto it = std::lower_bound(levels_.begin(), levels_.end(), rate);
  if (it == levels_.end() || *it != rate) {
    throw std::invalid_argument("rate " + std::to_string(rate) +
                                " is not a nonzero grid level");
  }
  return static_cast<int>(it - levels_.begin());
}

double DistortionOracle::Point(int u, ViewIndex left, Rate left_rate,
                               ViewIndex right, Rate right_rate) const {
  if (u < 0 || u >= position_count() || left < 0 || right >= view_count_ ||
      left >= right) {
    throw std::invalid_argument("point distortion: bad indices");
  }
  if (window_[u] < views_[left] - kCoordinateTolerance ||
      window_[u] > views_[right] + kCoordinateTolerance) {
    throw std::invalid_argument("point distortion: position " +
                                std::to_string(u) +
                                " outside its reference pair");
  }
  return PointAt(u, left, LevelIndex(left_rate), right, LevelIndex(right_rate));
}

double DistortionOracle::PointAt(int u, ViewIndex left, int left_level,
                                 ViewIndex right, int right_level) const {
  if (const auto* table = std::get_if<DistortionTable>(&config_)) {
    return table->At(u, left, right, left_level, right_level);
  }
  const auto& model = std::get<ParametricModel>(config_);
  const double x = window_[u];
  const double left_mb = levels_[left_level] * quantum_mb_;
  const double right_mb = levels_[right_level] * quantum_mb_;
  if (std::abs(x - views_[left]) <= kCoordinateTolerance) {
    return model.CodedMse(left, left_mb);
  }
  if (std::abs(x - views_[right]) <= kCoordinateTolerance) {
    return model.CodedMse(right, right_mb);
  }
  const SynthesisParams params =
      model.Params(u, left, right, views_[left], views_[right]);
  const double d_left = model.CodedMse(left, left_mb);
  const double d_right = model.CodedMse(right, right_mb);
  const bool left_first = (x - views_[left]) <= (views_[right] - x);
  return left_first ? SynthDistortion(params, d_left, d_right)
                    : SynthDistortion(params, d_right, d_left);
}

double DistortionOracle::SumSegment(ViewIndex left, ViewIndex right,
                                    int left_level, int right_level) const {
  const bool last = right == view_count_ - 1;
  double sum = 0.0;
  for (int u = 0; u < position_count(); ++u) {
    const double x = window_[u];
    if (x < views_[left] - kCoordinateTolerance) continue;
    const bool before_right = x < views_[right] - kCoordinateTolerance;
    const bool on_right = !before_right && x <= views_[right] + kCoordinateTolerance;
    if (before_right || (last && on_right)) {
      sum += popularity_[u] * PointAt(u, left, left_level, right, right_level);
    }
  }
  return sum;
}

double LayerDistortion(const DistortionOracle& oracle, const ScenarioSpec& spec,
                       const LayerAssignment& a, int layer_count) {
  if (const Feasibility f = CheckFeasible(spec, a); !f) {
    throw std::invalid_argument("infeasible assignment: " + f.violation);
  }
  const auto refs = PrefixViews(a, layer_count);
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < refs.size(); ++j) {
    sum += oracle.Segment(refs[j].first, refs[j + 1].first, refs[j].second,
                          refs[j + 1].second);
  }
  return sum;
}

std::vector<double> LayerDistortions(const DistortionOracle& oracle,
                                     const ScenarioSpec& spec,
                                     const LayerAssignment& a) {
  std::vector<double> out;
  for (int c = 1; c <= spec.layer_count(); ++c) {
    out.push_back(LayerDistortion(oracle, spec, a, c));
  }
  return out;
}

double Objective(const DistortionOracle& oracle, const ScenarioSpec& spec,
                 const LayerAssignment& a) {
  const std::vector<double> d = LayerDistortions(oracle, spec, a);
  double sum = 0.0;
  for (std::size_t c = 0; c < d.size(); ++c) {
    sum += spec.clients.proportions[c] * d[c];
  }
  return sum;
}

}  // namespace imvs
