#include "fxmot/track.hpp"

#include <algorithm>
#include <cmath>

#include "fxmot/errors.hpp"

namespace fxmot {

namespace {

using Mat74 = Eigen::Matrix<double, 7, 4>;
using Mat47 = Eigen::Matrix<double, 4, 7>;

Tracker::Covariance transition() {
  Tracker::Covariance f = Tracker::Covariance::Identity();
  f(0, 4) = 1.0;
  f(1, 5) = 1.0;
  f(2, 6) = 1.0;
  return f;
}

Mat47 observation() {
  Mat47 h = Mat47::Zero();
  h.leftCols<4>().setIdentity();
  return h;
}

Tracker::Covariance process_noise(const KalmanNoise& n) {
  Tracker::Covariance q = Tracker::Covariance::Zero();
  q.diagonal() << n.process_position, n.process_position, n.process_position, n.process_position,
      n.process_velocity, n.process_velocity, n.process_area_velocity;
  return q;
}

Eigen::Matrix4d measurement_noise(const KalmanNoise& n) {
  Eigen::Matrix4d r = Eigen::Matrix4d::Zero();
  r.diagonal() << n.measurement_position, n.measurement_position, n.measurement_shape,
      n.measurement_shape;
  return r;
}

void clamp_shape(Tracker::State& x) {
  x[2] = std::max(x[2], kMinArea);
  x[3] = std::max(x[3], kMinAspect);
}

}  // namespace

double iou(const BoundingBox& a, const BoundingBox& b) {
  const double w = std::min(a.left + a.width, b.left + b.width) - std::max(a.left, b.left);
  const double h = std::min(a.top + a.height, b.top + b.height) - std::max(a.top, b.top);
  if (w <= 0.0 || h <= 0.0) return 0.0;
  const double inter = w * h;
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? std::clamp(inter / uni, 0.0, 1.0) : 0.0;
}

SimilarityMatrix iou_similarity(std::span<const BoundingBox> trackers,
                                std::span<const BoundingBox> detections) {
  SimilarityMatrix s;
  s.s.resize(static_cast<Eigen::Index>(trackers.size()), static_cast<Eigen::Index>(detections.size()));
  for (std::size_t t = 0; t < trackers.size(); ++t) {
    for (std::size_t d = 0; d < detections.size(); ++d) {
      s.s(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(d)) = iou(trackers[t], detections[d]);
    }
  }
  return s;
}

BoundingBox Tracker::box() const {
  const double area = std::max(x[2], kMinArea);
  const double aspect = std::max(x[3], kMinAspect);
  const double w = std::sqrt(area * aspect);
  const double h = area / w;
  return {x[0] - 0.5 * w, x[1] - 0.5 * h, w, h};
}

void validate(const TrackConfig& cfg) {
  if (cfg.max_age < 0) throw DomainError("max_age must be non-negative");
  if (cfg.anti_aging < 0) throw DomainError("anti_aging must be non-negative");
  if (!(cfg.c_small >= 0.0)) throw DomainError("c_small must be non-negative");
  if (!(cfg.c_small < cfg.c_large)) throw DomainError("c_small must be below c_large");
  validate(cfg.sb);
}

Eigen::Vector4d box_to_measurement(const BoundingBox& b) {
  return {b.center_x(), b.center_y(), b.area(), b.width / b.height};
}

Tracker new_tracker(const Detection& d, int id, const KalmanNoise& noise) {
  Tracker t;
  t.id = id;
  t.x.head<4>() = box_to_measurement(d.box);
  t.x.tail<3>().setZero();
  t.covariance.setZero();
  t.covariance.diagonal() << noise.initial_position, noise.initial_position, noise.initial_position,
      noise.initial_position, noise.initial_velocity, noise.initial_velocity, noise.initial_velocity;
  t.age = 0;
  t.last = LastOutcome::spawned;
  t.confidence = d.confidence;
  return t;
}

Tracker predict(Tracker t, const KalmanNoise& noise) {
  static const Tracker::Covariance f = transition();
  t.x = f * t.x;
  clamp_shape(t.x);
  t.covariance = f * t.covariance * f.transpose() + process_noise(noise);
  ++t.age;
  return t;
}

Tracker update(const Tracker& t, const Detection& d, const KalmanNoise& noise) {
  static const Mat47 h = observation();
  const Eigen::Vector4d z = box_to_measurement(d.box);
  const Eigen::Vector4d innovation = z - h * t.x;
  const Eigen::Matrix4d s = h * t.covariance * h.transpose() + measurement_noise(noise);

  const Eigen::LLT<Eigen::Matrix4d> llt(s);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("innovation covariance is not positive definite for tracker " +
                         std::to_string(t.id));
  }
  const Mat74 gain = llt.solve(h * t.covariance).transpose();

  Tracker out = t;
  out.x = t.x + gain * innovation;
  out.covariance = (Tracker::Covariance::Identity() - gain * h) * t.covariance;
  if (!out.x.allFinite() || !out.covariance.allFinite()) {
    throw NumericalError("Kalman update produced non-finite state for tracker " + std::to_string(t.id));
  }
  clamp_shape(out.x);
  out.age = 0;
  out.last = LastOutcome::matched;
  out.confidence = d.confidence;
  return out;
}

void predict_all(TrackSet& set, const KalmanNoise& noise) {
  for (auto& t : set.trackers) t = predict(std::move(t), noise);
}

std::size_t correct(TrackSet& set, std::span<const Detection> detections,
                    const AssignmentResult& assignment, const TrackConfig& cfg) {
  if (assignment.tracker_states.size() != set.trackers.size()) {
    throw DimensionError("assignment covers " + std::to_string(assignment.tracker_states.size()) +
                         " trackers, set has " + std::to_string(set.trackers.size()));
  }
  std::size_t failures = 0;
  for (std::size_t i = 0; i < set.trackers.size(); ++i) {
    auto& t = set.trackers[i];
    const auto& outcome = assignment.tracker_states[i];
    if (const auto* m = std::get_if<Match>(&outcome)) {
      try {
        t = update(t, detections[m->detection], cfg.noise);
      } catch (const NumericalError&) {
        t.last = LastOutcome::unmatched;
        ++failures;
      }
    } else if (std::holds_alternative<PotentiallyMatch>(outcome)) {
      t.age -= cfg.anti_aging;
      t.last = LastOutcome::potentially_matched;
    } else {
      t.last = LastOutcome::unmatched;
    }
  }
  for (auto d : assignment.unmatched_detections) {
    set.trackers.push_back(new_tracker(detections[d], set.next_id++, cfg.noise));
  }
  std::erase_if(set.trackers, [&](const Tracker& t) { return t.age > cfg.max_age; });
  return failures;
}

QuboSolver frame_solver(const TrackConfig& cfg, std::uint64_t frame_index) {
  SbParams params = cfg.sb;
  params.seed = sb_seed(cfg.sb.seed, frame_index);
  return sb_solver(params);
}

StepOutput step(TrackSet set, std::span<const Detection> detections, const TrackConfig& cfg) {
  std::vector<Detection> kept;
  kept.reserve(detections.size());
  for (const auto& d : detections) {
    if (d.confidence >= cfg.confidence_floor) kept.push_back(d);
  }

  predict_all(set, cfg.noise);

  std::vector<BoundingBox> predicted;
  predicted.reserve(set.trackers.size());
  for (const auto& t : set.trackers) predicted.push_back(t.box());
  std::vector<BoundingBox> boxes;
  boxes.reserve(kept.size());
  for (const auto& d : kept) boxes.push_back(d.box);
  const SimilarityMatrix s = iou_similarity(predicted, boxes);

  StepOutput out;
  if (cfg.assigner == Assigner::hungarian) {
    out.assignment = linear_assign(s, cfg.s_min);
  } else {
    out.assignment = flexible_assign(s, frame_solver(cfg, set.frame_index),
                                     {cfg.c_small, cfg.c_large, cfg.s_min});
  }
  out.numerical_failures = correct(set, kept, out.assignment, cfg);
  ++set.frame_index;
  out.tracks = std::move(set);
  return out;
}

}  // namespace fxmot
