#pragma once

// Randomized lifecycle driver: feeds predict_all + correct with random assignment
// outcomes and checks the per-tracker state machine against the expected arithmetic.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "fxmot/track.hpp"

namespace fxmot::testing {

struct LifecycleReport {
  std::size_t frames = 0;
  std::size_t matches = 0;
  std::size_t potentials = 0;
  std::size_t unmatches = 0;
  std::size_t spawns = 0;
  std::size_t deletions = 0;
  std::string violation;  // empty when every check held

  bool ok() const { return violation.empty(); }
};

inline LifecycleReport run_lifecycle_property(std::uint64_t seed, std::size_t n_frames, const TrackConfig& cfg) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(0.0, 500.0);
  std::uniform_real_distribution<double> size(5.0, 80.0);
  std::uniform_int_distribution<int> n_det(0, 6);
  std::uniform_int_distribution<int> kind(0, 2);

  LifecycleReport rep;
  TrackSet set;
  std::set<int> issued;
  int max_issued = 0;
  auto fail = [&](std::size_t f, const std::string& msg) {
    if (rep.violation.empty()) {
      std::ostringstream os;
      os << "frame " << f << ": " << msg;
      rep.violation = os.str();
    }
  };

  for (std::size_t f = 0; f < n_frames && rep.ok(); ++f) {
    std::vector<Detection> dets(static_cast<std::size_t>(n_det(rng)));
    for (auto& d : dets) d.box = {pos(rng), pos(rng), size(rng), size(rng)};

    std::map<int, int> age_before;
    for (const auto& t : set.trackers) age_before[t.id] = t.age;

    predict_all(set, cfg.noise);
    for (const auto& t : set.trackers) {
      if (t.age != age_before[t.id] + 1) fail(f, "predict did not age tracker " + std::to_string(t.id) + " by one");
    }

    // Random outcomes; Match targets are distinct detections.
    AssignmentResult a;
    std::vector<std::size_t> free_dets(dets.size());
    for (std::size_t d = 0; d < dets.size(); ++d) free_dets[d] = d;
    std::shuffle(free_dets.begin(), free_dets.end(), rng);
    std::vector<char> matched(dets.size(), 0);
    for (std::size_t i = 0; i < set.trackers.size(); ++i) {
      const int k = kind(rng);
      if (k == 0 && !free_dets.empty()) {
        a.tracker_states.push_back(Match{free_dets.back()});
        matched[free_dets.back()] = 1;
        free_dets.pop_back();
      } else if (k == 1 && !dets.empty()) {
        a.tracker_states.push_back(PotentiallyMatch{static_cast<std::size_t>(rng() % dets.size())});
      } else {
        a.tracker_states.push_back(Unmatch{});
      }
    }
    for (std::size_t d = 0; d < dets.size(); ++d) {
      if (!matched[d]) a.unmatched_detections.push_back(d);
    }

    std::map<int, int> expected_age;  // id -> age after correction
    for (std::size_t i = 0; i < set.trackers.size(); ++i) {
      const auto& t = set.trackers[i];
      const auto& o = a.tracker_states[i];
      if (std::holds_alternative<Match>(o)) {
        expected_age[t.id] = 0;
        ++rep.matches;
      } else if (std::holds_alternative<PotentiallyMatch>(o)) {
        expected_age[t.id] = t.age - cfg.anti_aging;
        if (expected_age[t.id] != age_before[t.id] - (cfg.anti_aging - 1)) fail(f, "potentially-match net change");
        ++rep.potentials;
      } else {
        expected_age[t.id] = t.age;
        ++rep.unmatches;
      }
    }
    const auto n_before = set.trackers.size();

    if (correct(set, dets, a, cfg) != 0) fail(f, "unexpected numerical failure");

    std::set<int> survivors;
    std::size_t spawned_now = 0;
    for (const auto& t : set.trackers) {
      if (const auto it = expected_age.find(t.id); it != expected_age.end()) {
        survivors.insert(t.id);
        if (t.age != it->second) {
          fail(f, "tracker " + std::to_string(t.id) + " age " + std::to_string(t.age) + ", expected " +
                      std::to_string(it->second));
        }
        if (t.age > cfg.max_age) fail(f, "tracker " + std::to_string(t.id) + " survived with age > max_age");
      } else {
        ++spawned_now;
        if (t.age != 0) fail(f, "spawned tracker with non-zero age");
        if (t.id <= max_issued || issued.count(t.id)) fail(f, "id " + std::to_string(t.id) + " reused");
        if (t.last != LastOutcome::spawned) fail(f, "spawned tracker not flagged as spawned");
        if (!t.r_dot().isZero(0.0)) fail(f, "spawned tracker with non-zero velocity");
        issued.insert(t.id);
        max_issued = std::max(max_issued, t.id);
      }
    }
    for (const auto& [id, age] : expected_age) {
      const bool gone = !survivors.count(id);
      if (gone != (age > cfg.max_age)) {
        fail(f, "tracker " + std::to_string(id) + (gone ? " deleted at age " : " kept at age ") +
                    std::to_string(age));
      }
      rep.deletions += gone ? 1 : 0;
    }
    if (spawned_now != a.unmatched_detections.size()) fail(f, "spawn count differs from unmatched detections");
    rep.spawns += spawned_now;
    if (set.trackers.size() != n_before - (n_before - survivors.size()) + spawned_now) fail(f, "tracker count");
    ++rep.frames;
  }
  return rep;
}

}  // namespace fxmot::testing
