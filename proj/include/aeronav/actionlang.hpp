// Textual action commands: the canonical rendering template, a regex parser
// for model output, and decomposition into fixed-step primitives.
//
// Template:  "The next action is <verb> <magnitude> <units|degrees>"
//            "The next action is stop"
// Verbs:     move forward | turn left | turn right | ascend | descend |
//            move left | move right | stop
//
// The parser matches, case-insensitively, the alternation
//   \b(move\s+forward|turn\s+left|turn\s+right|ascend|descend|move\s+left|move\s+right|stop)\b
// restricted to the active vocabulary, takes the leftmost hit, and reads the
// first number  [-+]?\d+(\.\d+)?  between that verb and the next verb (or
// the end of the text) as the magnitude.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "aeronav/kinematics.hpp"
#include "aeronav/preprocess.hpp"

namespace aeronav {

/// A high-level command; magnitude is in units for translations, degrees for
/// turns and 0 for Stop.
struct ActionCommand {
    ActionKind kind{ActionKind::Stop};
    double magnitude{0};

    friend bool operator==(const ActionCommand&, const ActionCommand&) = default;
};

/// "move forward", "turn left", ...
[[nodiscard]] std::string_view verb_phrase(ActionKind kind) noexcept;

/// Number of primitive steps the command expands to. Throws
/// Error(UnsupportedAction) for kinds outside the vocabulary and
/// Error(InvalidMagnitude) when the magnitude is not a positive multiple of
/// the step. Stop always yields 1.
[[nodiscard]] std::size_t command_steps(const ActionCommand& cmd, const ActionSpace& space);

[[nodiscard]] ActionCommand command_from_segment(const MergedSegment& segment, const ActionSpace& space);

[[nodiscard]] std::string render_command(const ActionCommand& cmd, const ActionSpace& space);

/// Throws Error(UnparsableAction) when no vocabulary verb occurs and
/// Error(InvalidMagnitude) for a magnitude that is not a positive step
/// multiple. A motion verb without a number means one step.
[[nodiscard]] ActionCommand parse_command(std::string_view text, const ActionSpace& space);

/// magnitude / step copies of the primitive; Stop gives a single Stop.
[[nodiscard]] std::vector<ActionKind> decompose(const ActionCommand& cmd, const ActionSpace& space);

/// Applies the whole command as one displacement (no stepping).
[[nodiscard]] Pose apply_command_closed_form(const Pose& pose, const ActionCommand& cmd,
                                             const ActionSpace& space);

/// Formats a magnitude the way the template prints it: integers without a
/// fractional part, otherwise the shortest round-trip decimal.
[[nodiscard]] std::string format_magnitude(double value);

}  // namespace aeronav
