#pragma once

#include <vector>

#include "imvs/distortion_model.hpp"
#include "imvs/model.hpp"

namespace imvs {

/// Per-position distortion d_u(v_l, v_r, r_l, r_r) for one scenario, with
/// every segment sum precomputed at construction. Immutable afterwards and
/// safe to share across threads.
class DistortionOracle {
 public:
  /// `spec` must validate.
  explicit DistortionOracle(const ScenarioSpec& spec);

  int view_count() const { return view_count_; }
  int position_count() const { return static_cast<int>(window_.size()); }
  int level_count() const { return static_cast<int>(levels_.size()); }
  const std::vector<Rate>& levels() const { return levels_; }
  /// Index of `rate` among the nonzero grid levels; throws for other rates.
  int LevelIndex(Rate rate) const;

  /// Distortion of window position `u` rendered from transmitted references
  /// left < right. A position on a reference gets that reference's coded
  /// distortion; otherwise the nearer reference (ties: left) is the first
  /// one in the synthesis model.
  double Point(int u, ViewIndex left, Rate left_rate, ViewIndex right,
               Rate right_rate) const;

  /// Popularity-weighted distortion of positions in [x_left, x_right), with
  /// the last view's own position added when `right` is the last view.
  double Segment(ViewIndex left, ViewIndex right, Rate left_rate,
                 Rate right_rate) const {
    return SegmentAt(left, right, LevelIndex(left_rate),
                     LevelIndex(right_rate));
  }
  double SegmentAt(ViewIndex left, ViewIndex right, int left_level,
                   int right_level) const {
    return segments_[SegmentOffset(left, right, left_level, right_level)];
  }

 private:
  double PointAt(int u, ViewIndex left, int left_level, ViewIndex right,
                 int right_level) const;
  double SumSegment(ViewIndex left, ViewIndex right, int left_level,
                    int right_level) const;
  std::size_t SegmentOffset(ViewIndex left, ViewIndex right, int left_level,
                            int right_level) const {
    return ((static_cast<std::size_t>(left) * view_count_ + right) *
                levels_.size() +
            left_level) *
               levels_.size() +
           right_level;
  }

  int view_count_;
  std::vector<double> views_;
  std::vector<double> window_;
  std::vector<double> popularity_;
  std::vector<Rate> levels_;
  double quantum_mb_;
  DistortionConfig config_;
  std::vector<double> segments_;
};

/// D_c for clients receiving the first `layer_count` layers, computed as the
/// sum of segment distortions between consecutive references. Throws
/// std::invalid_argument for an infeasible assignment.
double LayerDistortion(const DistortionOracle& oracle, const ScenarioSpec& spec,
                       const LayerAssignment& a, int layer_count);

/// D_1..D_C.
std::vector<double> LayerDistortions(const DistortionOracle& oracle,
                                     const ScenarioSpec& spec,
                                     const LayerAssignment& a);

/// Expected distortion sum_c p(c) D_c.
double Objective(const DistortionOracle& oracle, const ScenarioSpec& spec,
                 const LayerAssignment& a);

}  // namespace imvs
