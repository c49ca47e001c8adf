#pragma once

#include <vector>

#include "orofacial/model.hpp"

namespace orofacial::seg {

/// Minimum frames a repetition window must contain.
inline constexpr std::size_t kMinRepetitionFrames = 3;

/// Splits a task recording into one trajectory per annotation. A frame
/// belongs to a repetition when start <= t <= end. Throws
/// Error(kTooShortRepetition) when a window holds fewer than three frames and
/// Error(kValidation) for a REST recording.
std::vector<Trajectory> split_repetitions(const Trajectory& t,
                                          const std::vector<RepetitionAnnotation>& ann);

/// Frames inside the closed window of `duration` seconds centred on the
/// midpoint of the recording. Throws Error(kInsufficientRest) when the
/// recording is shorter than `duration`.
Trajectory rest_window(const Trajectory& rest, double duration = 5.0);

}  // namespace orofacial::seg
