#pragma once

// Frame-by-frame tracking loop with a potentially-match state.
//
// Each frame: predict every tracker and age it by one, build the IOU similarity
// matrix, assign, then correct:
//   Match            -> Kalman update, age = 0
//   PotentiallyMatch -> keep the prediction, age -= anti_aging (age may go negative)
//   Unmatch          -> keep the prediction
// Unmatched detections spawn trackers with fresh ids; trackers with age > max_age are
// removed at the end of the frame.

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fxmot/assign.hpp"
#include "fxmot/sb.hpp"

namespace fxmot {

struct BoundingBox {
  double left = 0.0;
  double top = 0.0;
  double width = 1.0;
  double height = 1.0;

  double area() const { return width * height; }
  double center_x() const { return left + 0.5 * width; }
  double center_y() const { return top + 0.5 * height; }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct Detection {
  BoundingBox box;
  double confidence = 1.0;
};

double iou(const BoundingBox& a, const BoundingBox& b);

SimilarityMatrix iou_similarity(std::span<const BoundingBox> trackers,
                                std::span<const BoundingBox> detections);

// Noise model of the 7-state constant-velocity filter
//   x = (cx, cy, area, aspect, v_cx, v_cy, v_area),  z = (cx, cy, area, aspect).
// Defaults are the ones SORT ships (R = diag(1,1,10,10), P0 = diag(10,10,10,10,1e4,1e4,1e4),
// Q = diag(1,1,1,1,0.01,0.01,1e-4)).
struct KalmanNoise {
  double measurement_position = 1.0;
  double measurement_shape = 10.0;
  double initial_position = 10.0;
  double initial_velocity = 1e4;
  double process_position = 1.0;
  double process_velocity = 0.01;
  double process_area_velocity = 1e-4;
};

inline constexpr double kMinArea = 1e-6;
inline constexpr double kMinAspect = 1e-6;

enum class LastOutcome { spawned, matched, potentially_matched, unmatched };

struct Tracker {
  using State = Eigen::Matrix<double, 7, 1>;
  using Covariance = Eigen::Matrix<double, 7, 7>;

  int id = 0;
  State x = State::Zero();
  Covariance covariance = Covariance::Identity();
  int age = 0;
  LastOutcome last = LastOutcome::spawned;
  double confidence = 1.0;  // of the detection that last refreshed this tracker

  // (center_x, center_y, area, aspect_ratio)
  Eigen::Vector4d r() const { return x.head<4>(); }
  // velocities of (center_x, center_y, area)
  Eigen::Vector3d r_dot() const { return x.tail<3>(); }
  BoundingBox box() const;
};

enum class Assigner { flexible, hungarian };

struct TrackConfig {
  int max_age = 5;
  int anti_aging = 5;
  double c_small = 0.1;
  double c_large = 1.0;
  double s_min = 0.1;
  double confidence_floor = 0.0;
  Assigner assigner = Assigner::flexible;
  SbParams sb;
  KalmanNoise noise;
};

// Throws DomainError for out-of-range fields.
void validate(const TrackConfig& cfg);

Eigen::Vector4d box_to_measurement(const BoundingBox& b);

Tracker new_tracker(const Detection& d, int id, const KalmanNoise& noise = {});
Tracker predict(Tracker t, const KalmanNoise& noise = {});
// Throws NumericalError on a degenerate innovation covariance; `t` is not modified.
Tracker update(const Tracker& t, const Detection& d, const KalmanNoise& noise = {});

struct TrackSet {
  std::vector<Tracker> trackers;
  int next_id = 1;
  std::uint64_t frame_index = 0;  // frames processed so far; seeds the per-frame solves
};

struct StepOutput {
  TrackSet tracks;
  AssignmentResult assignment;
  std::size_t numerical_failures = 0;
};

// Predict + age every tracker.
void predict_all(TrackSet& set, const KalmanNoise& noise);

// Corrector, spawning and deletion for an assignment computed on `set` (already
// predicted). Returns the number of Kalman updates that failed numerically; those
// trackers keep their prediction.
std::size_t correct(TrackSet& set, std::span<const Detection> detections,
                    const AssignmentResult& assignment, const TrackConfig& cfg);

// Solver used for frame `frame_index` under `cfg` (SB, seeded per frame).
QuboSolver frame_solver(const TrackConfig& cfg, std::uint64_t frame_index);

StepOutput step(TrackSet set, std::span<const Detection> detections, const TrackConfig& cfg);

// Trackers written to the output stream of a frame: those refreshed or spawned by it.
// Coasting trackers (unmatched / potentially matched) stay internal.
inline bool is_reported(const Tracker& t) {
  return t.last == LastOutcome::matched || t.last == LastOutcome::spawned;
}

}  // namespace fxmot
