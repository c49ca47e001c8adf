#include "orofacial/segmentation.hpp"

#include <sstream>

#include "orofacial/error.hpp"

namespace orofacial::seg {

namespace {

Trajectory window(const Trajectory& t, double start, double end) {
  Trajectory out = t;
  out.frames.clear();
  for (const auto& f : t.frames) {
    if (f.timestamp >= start && f.timestamp <= end) out.frames.push_back(f);
  }
  return out;
}

}  // namespace

std::vector<Trajectory> split_repetitions(const Trajectory& t,
                                          const std::vector<RepetitionAnnotation>& ann) {
  if (t.task == Task::kRest) {
    throw Error(ErrorCode::kValidation, "REST recordings are not split into repetitions");
  }
  std::vector<Trajectory> out;
  out.reserve(ann.size());
  for (const auto& a : ann) {
    Trajectory rep = window(t, a.start, a.end);
    if (rep.frames.size() < kMinRepetitionFrames) {
      std::ostringstream msg;
      msg << "repetition " << a.repetition_index << " [" << a.start << ", " << a.end
          << "] of " << t.subject_id << " holds " << rep.frames.size()
          << " frame(s), need at least " << kMinRepetitionFrames;
      throw Error(ErrorCode::kTooShortRepetition, msg.str());
    }
    rep.repetition = a.repetition_index;
    out.push_back(std::move(rep));
  }
  return out;
}

Trajectory rest_window(const Trajectory& rest, double duration) {
  // Tolerate the last frame landing a hair before the nominal length.
  constexpr double kEps = 1e-9;
  if (rest.frames.empty() || rest.duration() + kEps < duration) {
    std::ostringstream msg;
    msg << "REST recording of " << rest.subject_id << " lasts " << rest.duration()
        << " s, need " << duration << " s";
    throw Error(ErrorCode::kInsufficientRest, msg.str());
  }
  const double mid = 0.5 * (rest.frames.front().timestamp + rest.frames.back().timestamp);
  return window(rest, mid - 0.5 * duration - kEps, mid + 0.5 * duration + kEps);
}

}  // namespace orofacial::seg
