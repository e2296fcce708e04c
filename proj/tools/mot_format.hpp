#pragma once

// MOT-Challenge style text records:
//   frame,id,left,top,width,height,confidence,-1,-1,-1
// Detections carry id -1. Ground truth written by `simulate` stores the visibility
// flag (1 visible, 0 occluded) in the confidence column.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fxmot/scenario.hpp"

namespace fxmot::cli {

struct MotRecord {
  int frame = 1;
  int id = -1;
  double left = 0.0;
  double top = 0.0;
  double width = 0.0;
  double height = 0.0;
  double confidence = 1.0;
};

// Accepts 7 to 10 comma-separated fields; fields past the seventh are ignored.
// Throws ParseError with the 1-based line number.
MotRecord parse_mot_line(const std::string& line, std::size_t line_no);
std::vector<MotRecord> read_mot(std::istream& in);

// Pixels with 2 decimals, confidence with 6; trailing fields are always -1.
std::string format_mot(const MotRecord& r);
void write_mot(std::ostream& out, const std::vector<MotRecord>& records);

// frame -> detections, in file order.
std::map<int, std::vector<Detection>> group_detections(const std::vector<MotRecord>& records);

GroundTruth ground_truth_from_records(const std::vector<MotRecord>& records);
std::vector<MotRecord> ground_truth_records(const GroundTruth& gt);
std::vector<MotRecord> detection_records(const std::vector<std::vector<Detection>>& frames);

// Results indexed by frame - 1, padded to at least `n_frames` frames.
TrackingResults results_from_records(const std::vector<MotRecord>& records, std::size_t n_frames);

}  // namespace fxmot::cli
