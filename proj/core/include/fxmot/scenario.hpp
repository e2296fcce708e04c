#pragma once

// Synthetic crossing scenarios and association metrics.
//
// Objects move linearly. In every frame, each pair of in-frame objects whose true boxes
// overlap with IOU > occlusion_iou hides the smaller one (equal areas: the higher
// index); hidden objects emit no detection. An object is in frame while its centre is
// inside [0, width) x [0, height). Visible objects emit their box with every coordinate
// jittered uniformly in [-jitter, jitter] (std::mt19937_64 seeded with `seed`, one draw of
// four values per in-frame object per frame, hidden objects included).

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "fxmot/track.hpp"

namespace fxmot {

struct ScenarioObject {
  double cx = 0.0;
  double cy = 0.0;
  double width = 1.0;
  double height = 1.0;
  double vx = 0.0;
  double vy = 0.0;
};

struct ScenarioSpec {
  std::vector<ScenarioObject> objects;
  std::size_t n_frames = 1;
  double occlusion_iou = 0.7;
  double frame_width = 640.0;
  double frame_height = 480.0;
  double jitter = 1.0;
  std::uint64_t seed = 0;
};

void validate(const ScenarioSpec& spec);

struct GroundTruthEntry {
  int object_id = 0;  // 1-based object index
  BoundingBox box;
  bool visible = true;
};

// frames[f] holds frame number f + 1; only in-frame objects appear.
struct GroundTruth {
  std::vector<std::vector<GroundTruthEntry>> frames;
};

struct Scenario {
  GroundTruth truth;
  std::vector<std::vector<Detection>> detections;  // per frame, same indexing
};

Scenario generate(const ScenarioSpec& spec);

// Equivalent to generate() with spec.seed replaced.
Scenario generate(ScenarioSpec spec, std::uint64_t noise_seed);

// Overtaking pair (slow, long occlusion) crossed by a third object, simultaneous with a
// head-on two-object crossing elsewhere in the frame.
ScenarioSpec five_object_crossing();

// Line format: `key value` headers (frames, occlusion_iou, jitter, seed, width, height)
// and `object cx cy w h vx vy` lines; `#` starts a comment. Throws ParseError.
ScenarioSpec read_scenario_spec(std::istream& in);
void write_scenario_spec(std::ostream& out, const ScenarioSpec& spec);

struct TrackedBox {
  int id = 0;
  BoundingBox box;
};

// results[f] are the tracker boxes reported for frame f + 1.
using TrackingResults = std::vector<std::vector<TrackedBox>>;

// Runs `step` over every frame and collects the reported trackers (see is_reported).
TrackingResults run_tracking(const std::vector<std::vector<Detection>>& frames, const TrackConfig& cfg);

inline constexpr double kAssociationIou = 0.5;

// Per frame, visible ground-truth objects are greedily paired with reported boxes in
// decreasing IOU order (IOU >= 0.5). Returns, for every frame, object id -> tracker id
// (0 when unassociated), indexed like gt.frames[f].
std::vector<std::vector<int>> associate(const TrackingResults& results, const GroundTruth& gt);

// Frames in which an object's associated tracker id differs from its previous one.
std::size_t id_switches(const TrackingResults& results, const GroundTruth& gt);

struct OcclusionWindow {
  int object_id = 0;
  std::size_t first_frame = 0;  // 0-based frame index, inclusive
  std::size_t last_frame = 0;   // inclusive
};

// Maximal runs of frames where an object is present but not visible, preceded and
// followed by a visible frame of the same object.
std::vector<OcclusionWindow> occlusion_windows(const GroundTruth& gt);

// Fraction of occlusion windows after which the object's last pre-occlusion tracker id
// is associated with it again within `anti_aging` frames of reappearance. Windows with
// no pre-occlusion association are skipped. 1.0 when nothing is counted.
double occlusion_survival(const TrackingResults& results, const GroundTruth& gt, int anti_aging = 5);

}  // namespace fxmot
