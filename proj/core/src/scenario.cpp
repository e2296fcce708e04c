#include "fxmot/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <tuple>

#include "fxmot/errors.hpp"

namespace fxmot {

namespace {

BoundingBox box_at(const ScenarioObject& o, std::size_t frame) {
  const double t = static_cast<double>(frame);
  const double cx = o.cx + o.vx * t;
  const double cy = o.cy + o.vy * t;
  return {cx - 0.5 * o.width, cy - 0.5 * o.height, o.width, o.height};
}

bool in_frame(const BoundingBox& b, const ScenarioSpec& spec) {
  const double cx = b.center_x();
  const double cy = b.center_y();
  return cx >= 0.0 && cx < spec.frame_width && cy >= 0.0 && cy < spec.frame_height;
}

double parse_number(const std::string& token, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw ParseError("invalid number `" + token + "`", line);
  }
  if (used != token.size() || !std::isfinite(v)) throw ParseError("invalid number `" + token + "`", line);
  return v;
}

std::uint64_t parse_unsigned(const std::string& token, std::size_t line) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (!token.empty() && token[0] == '-') throw std::invalid_argument("negative");
    v = std::stoull(token, &used);
  } catch (const std::exception&) {
    throw ParseError("invalid non-negative integer `" + token + "`", line);
  }
  if (used != token.size()) throw ParseError("invalid non-negative integer `" + token + "`", line);
  return v;
}

}  // namespace

void validate(const ScenarioSpec& spec) {
  if (spec.n_frames < 1) throw DomainError("scenario needs at least one frame");
  if (!(spec.occlusion_iou > 0.0 && spec.occlusion_iou <= 1.0)) {
    throw DomainError("occlusion_iou must lie in (0, 1]");
  }
  if (!(spec.jitter >= 0.0)) throw DomainError("jitter must be non-negative");
  if (!(spec.frame_width > 0.0 && spec.frame_height > 0.0)) throw DomainError("frame size must be positive");
  for (const auto& o : spec.objects) {
    if (!(o.width > 0.0 && o.height > 0.0)) throw DomainError("object boxes need positive size");
    if (!std::isfinite(o.cx) || !std::isfinite(o.cy) || !std::isfinite(o.vx) || !std::isfinite(o.vy)) {
      throw DomainError("object position and velocity must be finite");
    }
  }
}

Scenario generate(const ScenarioSpec& spec) {
  validate(spec);
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> jitter(-spec.jitter, spec.jitter);

  Scenario out;
  out.truth.frames.resize(spec.n_frames);
  out.detections.resize(spec.n_frames);

  const auto n_obj = spec.objects.size();
  for (std::size_t f = 0; f < spec.n_frames; ++f) {
    std::vector<BoundingBox> boxes(n_obj);
    std::vector<char> present(n_obj), hidden(n_obj, 0);
    for (std::size_t i = 0; i < n_obj; ++i) {
      boxes[i] = box_at(spec.objects[i], f);
      present[i] = in_frame(boxes[i], spec);
    }
    for (std::size_t i = 0; i < n_obj; ++i) {
      for (std::size_t j = i + 1; j < n_obj; ++j) {
        if (!present[i] || !present[j] || iou(boxes[i], boxes[j]) <= spec.occlusion_iou) continue;
        // j > i, so j loses ties
        hidden[boxes[i].area() < boxes[j].area() ? i : j] = 1;
      }
    }
    for (std::size_t i = 0; i < n_obj; ++i) {
      if (!present[i]) continue;
      double noise[4] = {0.0, 0.0, 0.0, 0.0};
      if (spec.jitter > 0.0) {
        for (auto& v : noise) v = jitter(rng);
      }
      out.truth.frames[f].push_back({static_cast<int>(i + 1), boxes[i], !hidden[i]});
      if (hidden[i]) continue;
      BoundingBox det = boxes[i];
      det.left += noise[0];
      det.top += noise[1];
      det.width = std::max(1.0, det.width + noise[2]);
      det.height = std::max(1.0, det.height + noise[3]);
      out.detections[f].push_back({det, 1.0});
    }
  }
  return out;
}

Scenario generate(ScenarioSpec spec, std::uint64_t noise_seed) {
  spec.seed = noise_seed;
  return generate(spec);
}

ScenarioSpec five_object_crossing() {
  ScenarioSpec spec;
  spec.n_frames = 142;
  spec.occlusion_iou = 0.5;
  spec.frame_width = 640.0;
  spec.frame_height = 480.0;
  spec.jitter = 1.0;
  spec.seed = 7;
  spec.objects = {
      // slow overtaking pair: object 2 catches up with object 1 and passes behind it
      {100.0, 200.0, 40.0, 80.0, 2.0, 0.0},
      {30.0, 200.0, 32.0, 64.0, 3.0, 0.0},
      // larger object crossing the pair vertically in the middle of the overtake
      {240.0, -150.0, 48.0, 96.0, 0.0, 5.0},
      // head-on two-object crossing
      {180.0, 360.0, 40.0, 80.0, 2.0, 0.0},
      {460.0, 360.0, 32.0, 64.0, -2.0, 0.0},
  };
  return spec;
}

ScenarioSpec read_scenario_spec(std::istream& in) {
  ScenarioSpec spec;
  spec.objects.clear();
  std::string line;
  std::size_t line_no = 0;
  bool saw_frames = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    const auto& key = tok[0];
    if (key == "object") {
      if (tok.size() != 7) throw ParseError("expected `object cx cy w h vx vy`", line_no);
      ScenarioObject o{parse_number(tok[1], line_no), parse_number(tok[2], line_no),
                       parse_number(tok[3], line_no), parse_number(tok[4], line_no),
                       parse_number(tok[5], line_no), parse_number(tok[6], line_no)};
      if (!(o.width > 0.0 && o.height > 0.0)) throw ParseError("object size must be positive", line_no);
      spec.objects.push_back(o);
      continue;
    }
    if (tok.size() != 2) throw ParseError("expected `" + key + " <value>`", line_no);
    if (key == "frames") {
      spec.n_frames = parse_unsigned(tok[1], line_no);
      if (spec.n_frames < 1) throw ParseError("frames must be at least 1", line_no);
      saw_frames = true;
    } else if (key == "occlusion_iou") {
      spec.occlusion_iou = parse_number(tok[1], line_no);
      if (!(spec.occlusion_iou > 0.0 && spec.occlusion_iou <= 1.0)) {
        throw ParseError("occlusion_iou must lie in (0, 1]", line_no);
      }
    } else if (key == "jitter") {
      spec.jitter = parse_number(tok[1], line_no);
      if (spec.jitter < 0.0) throw ParseError("jitter must be non-negative", line_no);
    } else if (key == "seed") {
      spec.seed = parse_unsigned(tok[1], line_no);
    } else if (key == "width") {
      spec.frame_width = parse_number(tok[1], line_no);
    } else if (key == "height") {
      spec.frame_height = parse_number(tok[1], line_no);
    } else {
      throw ParseError("unknown key `" + key +
                           "` (expected frames, occlusion_iou, jitter, seed, width, height, object)",
                       line_no);
    }
  }
  if (!saw_frames) throw ParseError("missing `frames` header", 0);
  validate(spec);
  return spec;
}

void write_scenario_spec(std::ostream& out, const ScenarioSpec& spec) {
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "frames " << spec.n_frames << '\n'
      << "occlusion_iou " << spec.occlusion_iou << '\n'
      << "jitter " << spec.jitter << '\n'
      << "seed " << spec.seed << '\n'
      << "width " << spec.frame_width << '\n'
      << "height " << spec.frame_height << '\n';
  for (const auto& o : spec.objects) {
    out << "object " << o.cx << ' ' << o.cy << ' ' << o.width << ' ' << o.height << ' ' << o.vx << ' '
        << o.vy << '\n';
  }
}

TrackingResults run_tracking(const std::vector<std::vector<Detection>>& frames, const TrackConfig& cfg) {
  validate(cfg);
  TrackingResults out(frames.size());
  TrackSet set;
  for (std::size_t f = 0; f < frames.size(); ++f) {
    set = step(std::move(set), frames[f], cfg).tracks;
    for (const auto& t : set.trackers) {
      if (is_reported(t)) out[f].push_back({t.id, t.box()});
    }
  }
  return out;
}

std::vector<std::vector<int>> associate(const TrackingResults& results, const GroundTruth& gt) {
  std::vector<std::vector<int>> out(gt.frames.size());
  for (std::size_t f = 0; f < gt.frames.size(); ++f) {
    const auto& truth = gt.frames[f];
    out[f].assign(truth.size(), 0);
    if (f >= results.size()) continue;
    const auto& reported = results[f];

    // (iou, gt position, tracker position); sorted by IOU desc, then object, then tracker id
    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    for (std::size_t g = 0; g < truth.size(); ++g) {
      if (!truth[g].visible) continue;
      for (std::size_t r = 0; r < reported.size(); ++r) {
        const double v = iou(truth[g].box, reported[r].box);
        if (v >= kAssociationIou) pairs.emplace_back(v, g, r);
      }
    }
    std::sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
      if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
      const int oa = truth[std::get<1>(a)].object_id, ob = truth[std::get<1>(b)].object_id;
      if (oa != ob) return oa < ob;
      return reported[std::get<2>(a)].id < reported[std::get<2>(b)].id;
    });
    std::vector<char> gt_used(truth.size(), 0), rep_used(reported.size(), 0);
    for (const auto& [v, g, r] : pairs) {
      if (gt_used[g] || rep_used[r]) continue;
      gt_used[g] = rep_used[r] = 1;
      out[f][g] = reported[r].id;
    }
  }
  return out;
}

std::size_t id_switches(const TrackingResults& results, const GroundTruth& gt) {
  const auto assoc = associate(results, gt);
  std::map<int, int> previous;
  std::size_t switches = 0;
  for (std::size_t f = 0; f < gt.frames.size(); ++f) {
    for (std::size_t g = 0; g < gt.frames[f].size(); ++g) {
      const int id = assoc[f][g];
      if (id == 0) continue;
      auto [it, inserted] = previous.try_emplace(gt.frames[f][g].object_id, id);
      if (!inserted && it->second != id) {
        ++switches;
        it->second = id;
      }
    }
  }
  return switches;
}

std::vector<OcclusionWindow> occlusion_windows(const GroundTruth& gt) {
  // object id -> per-frame status: -1 absent, 0 hidden, 1 visible
  std::map<int, std::vector<int>> status;
  for (std::size_t f = 0; f < gt.frames.size(); ++f) {
    for (const auto& e : gt.frames[f]) {
      auto& s = status[e.object_id];
      s.resize(gt.frames.size(), -1);
      s[f] = e.visible ? 1 : 0;
    }
  }
  std::vector<OcclusionWindow> windows;
  for (const auto& [id, s] : status) {
    std::size_t f = 0;
    while (f < s.size()) {
      if (s[f] != 0) {
        ++f;
        continue;
      }
      const std::size_t first = f;
      while (f < s.size() && s[f] == 0) ++f;
      const std::size_t last = f - 1;
      if (first > 0 && s[first - 1] == 1 && f < s.size() && s[f] == 1) {
        windows.push_back({id, first, last});
      }
    }
  }
  return windows;
}

double occlusion_survival(const TrackingResults& results, const GroundTruth& gt, int anti_aging) {
  const auto assoc = associate(results, gt);
  auto associated_id = [&](int object_id, std::size_t f) {
    for (std::size_t g = 0; g < gt.frames[f].size(); ++g) {
      if (gt.frames[f][g].object_id == object_id) return assoc[f][g];
    }
    return 0;
  };

  std::size_t counted = 0;
  std::size_t survived = 0;
  const auto horizon = static_cast<std::size_t>(std::max(anti_aging, 1));
  for (const auto& w : occlusion_windows(gt)) {
    int before = 0;
    for (std::size_t f = w.first_frame; f-- > 0;) {
      if ((before = associated_id(w.object_id, f)) != 0) break;
    }
    if (before == 0) continue;
    ++counted;
    const std::size_t end = std::min(gt.frames.size(), w.last_frame + 1 + horizon);
    for (std::size_t f = w.last_frame + 1; f < end; ++f) {
      if (associated_id(w.object_id, f) == before) {
        ++survived;
        break;
      }
    }
  }
  return counted == 0 ? 1.0 : static_cast<double>(survived) / static_cast<double>(counted);
}

}  // namespace fxmot
