#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "orofacial/cohort.hpp"
#include "orofacial/model.hpp"
#include "orofacial/statistics.hpp"

namespace orofacial::io {

enum class Format { kDelimited, kStructured };

std::optional<Format> parse_format(std::string_view s);

// Landmark stream: JSON Lines. An optional first record carries metadata,
//   {"meta": {"subject": "S01", "group": "HC", "task": "BBP", "dim": "2d",
//             "fps": 30, "width": 640, "height": 480}}
// followed by one record per frame,
//   {"t": 0.033, "pts": [[u, v], ... x68], "z": [m, ... x68], "valid": [true, ...]}
// For 3d streams each "pts" entry is [x, y, z] in meters. "z" and "valid" are
// optional. Blank lines are ignored.

/// Parses a landmark stream. Throws Error(kParse) on malformed JSON,
/// Error(kSchema) on wrong shapes/counts and Error(kValidation) when the
/// resulting trajectory violates an invariant. Messages name the line.
Trajectory parse_landmark_stream(std::istream& in);

/// Writes `t` so that parse_landmark_stream reproduces it exactly.
void write_landmark_stream(const Trajectory& t, std::ostream& out);

/// Single JSON object {fx, fy, cx, cy, width, height}.
CameraIntrinsics parse_intrinsics(std::istream& in);
void write_intrinsics(const CameraIntrinsics& k, std::ostream& out);

/// CSV with header `task,repetition,start,end`. Returns annotations ordered
/// by repetition index; rejects start >= end and overlapping or touching
/// windows.
std::vector<RepetitionAnnotation> parse_annotations(std::istream& in);
void write_annotations(const std::vector<RepetitionAnnotation>& ann, std::ostream& out);

/// JSON {"entries": [{subject_id, group, task, landmark_file,
/// annotation_file?, intrinsics_file?, rest_file}]}.
CohortManifest parse_manifest(std::istream& in, std::string base_dir = {});
void write_manifest(const CohortManifest& m, std::ostream& out);

/// Feature table columns: subject,group,task,dim,repetition followed by the
/// 13 feature names in Feature order. Reals use 6 significant digits.
void write_feature_table(const std::vector<FeatureRow>& rows, std::ostream& out,
                         Format format = Format::kDelimited);
std::vector<FeatureRow> parse_feature_table(std::istream& in, Format format = Format::kDelimited);

/// One report line per (task, feature) with the 3d and 2d group statistics
/// side by side.
void write_smd_report(const std::vector<stats::SmdRow>& rows, std::ostream& out,
                      Format format = Format::kDelimited);

/// Locale-independent shortest form with at most `digits` significant digits.
std::string format_real(double v, int digits = 6);

// File helpers; they throw Error(kIo) when the path cannot be opened.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
Trajectory load_landmark_stream(const std::string& path);
CameraIntrinsics load_intrinsics(const std::string& path);
std::vector<RepetitionAnnotation> load_annotations(const std::string& path);
CohortManifest load_manifest(const std::string& path);

}  // namespace orofacial::io
