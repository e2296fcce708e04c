#include "mot_format.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include "fxmot/errors.hpp"

namespace fxmot::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int to_int(const std::string& s, const char* what, std::size_t line_no) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) {
    // MOT files in the wild sometimes write integers as `1.0`
    double d = 0.0;
    try {
      d = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || d != std::floor(d)) {
      throw ParseError(std::string("invalid ") + what + " `" + s + "`", line_no);
    }
    v = static_cast<long>(d);
  }
  return static_cast<int>(v);
}

double to_double(const std::string& s, const char* what, std::size_t line_no) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size() || !std::isfinite(v)) {
    throw ParseError(std::string("invalid ") + what + " `" + s + "`", line_no);
  }
  return v;
}

}  // namespace

MotRecord parse_mot_line(const std::string& line, std::size_t line_no) {
  const auto f = split_fields(line);
  if (f.size() < 7 || f.size() > 10) {
    throw ParseError("expected 7 to 10 comma-separated fields, got " + std::to_string(f.size()), line_no);
  }
  MotRecord r;
  r.frame = to_int(f[0], "frame", line_no);
  if (r.frame < 1) throw ParseError("frame must be positive", line_no);
  r.id = to_int(f[1], "id", line_no);
  r.left = to_double(f[2], "left", line_no);
  r.top = to_double(f[3], "top", line_no);
  r.width = to_double(f[4], "width", line_no);
  r.height = to_double(f[5], "height", line_no);
  r.confidence = to_double(f[6], "confidence", line_no);
  if (!(r.width > 0.0 && r.height > 0.0)) throw ParseError("box width and height must be positive", line_no);
  return r;
}

std::vector<MotRecord> read_mot(std::istream& in) {
  std::vector<MotRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    out.push_back(parse_mot_line(line, line_no));
  }
  return out;
}

std::string format_mot(const MotRecord& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%d,%d,%.2f,%.2f,%.2f,%.2f,%.6f,-1,-1,-1", r.frame, r.id, r.left, r.top,
                r.width, r.height, r.confidence);
  return buf;
}

void write_mot(std::ostream& out, const std::vector<MotRecord>& records) {
  for (const auto& r : records) out << format_mot(r) << '\n';
}

std::map<int, std::vector<Detection>> group_detections(const std::vector<MotRecord>& records) {
  std::map<int, std::vector<Detection>> frames;
  for (const auto& r : records) {
    frames[r.frame].push_back({{r.left, r.top, r.width, r.height}, r.confidence});
  }
  return frames;
}

GroundTruth ground_truth_from_records(const std::vector<MotRecord>& records) {
  GroundTruth gt;
  int last = 0;
  for (const auto& r : records) last = std::max(last, r.frame);
  gt.frames.resize(static_cast<std::size_t>(last));
  for (const auto& r : records) {
    gt.frames[static_cast<std::size_t>(r.frame - 1)].push_back(
        {r.id, {r.left, r.top, r.width, r.height}, r.confidence > 0.5});
  }
  for (auto& f : gt.frames) {
    std::stable_sort(f.begin(), f.end(), [](const auto& a, const auto& b) { return a.object_id < b.object_id; });
  }
  return gt;
}

std::vector<MotRecord> ground_truth_records(const GroundTruth& gt) {
  std::vector<MotRecord> out;
  for (std::size_t f = 0; f < gt.frames.size(); ++f) {
    for (const auto& e : gt.frames[f]) {
      out.push_back({static_cast<int>(f + 1), e.object_id, e.box.left, e.box.top, e.box.width, e.box.height,
                     e.visible ? 1.0 : 0.0});
    }
  }
  return out;
}

std::vector<MotRecord> detection_records(const std::vector<std::vector<Detection>>& frames) {
  std::vector<MotRecord> out;
  for (std::size_t f = 0; f < frames.size(); ++f) {
    for (const auto& d : frames[f]) {
      out.push_back({static_cast<int>(f + 1), -1, d.box.left, d.box.top, d.box.width, d.box.height,
                     d.confidence});
    }
  }
  return out;
}

TrackingResults results_from_records(const std::vector<MotRecord>& records, std::size_t n_frames) {
  std::size_t last = n_frames;
  for (const auto& r : records) last = std::max(last, static_cast<std::size_t>(r.frame));
  TrackingResults out(last);
  for (const auto& r : records) {
    out[static_cast<std::size_t>(r.frame - 1)].push_back({r.id, {r.left, r.top, r.width, r.height}});
  }
  return out;
}

}  // namespace fxmot::cli
