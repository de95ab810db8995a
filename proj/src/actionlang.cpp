#include "aeronav/actionlang.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <regex>

#include "aeronav/error.hpp"

namespace aeronav {
namespace {

std::string verb_pattern(ActionKind kind) {
    switch (kind) {
        case ActionKind::MoveForward: return "move\\s+forward";
        case ActionKind::TurnLeft: return "turn\\s+left";
        case ActionKind::TurnRight: return "turn\\s+right";
        case ActionKind::Ascend: return "ascend";
        case ActionKind::Descend: return "descend";
        case ActionKind::MoveLeft: return "move\\s+left";
        case ActionKind::MoveRight: return "move\\s+right";
        case ActionKind::Stop: return "stop";
    }
    return {};
}

// One capture group per vocabulary entry, in vocabulary order.
std::regex verb_regex(const ActionSpace& space) {
    std::string pattern = "\\b(?:";
    for (std::size_t i = 0; i < space.vocabulary.size(); ++i) {
        if (i > 0) pattern += "|";
        pattern += "(" + verb_pattern(space.vocabulary[i]) + ")";
    }
    pattern += ")\\b";
    return std::regex(pattern, std::regex::ECMAScript | std::regex::icase);
}

const std::regex& number_regex() {
    static const std::regex re("[-+]?\\d+(?:\\.\\d+)?");
    return re;
}

}  // namespace

std::string_view verb_phrase(ActionKind kind) noexcept {
    switch (kind) {
        case ActionKind::MoveForward: return "move forward";
        case ActionKind::TurnLeft: return "turn left";
        case ActionKind::TurnRight: return "turn right";
        case ActionKind::Ascend: return "ascend";
        case ActionKind::Descend: return "descend";
        case ActionKind::MoveLeft: return "move left";
        case ActionKind::MoveRight: return "move right";
        case ActionKind::Stop: return "stop";
    }
    return "";
}

std::string format_magnitude(double value) {
    if (std::isfinite(value) && value == std::round(value) && std::abs(value) < 1e15) {
        return std::to_string(static_cast<long long>(value));
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::size_t command_steps(const ActionCommand& cmd, const ActionSpace& space) {
    if (!space.contains(cmd.kind)) {
        throw Error(ErrorCode::UnsupportedAction, std::string(verb_phrase(cmd.kind)) +
                                                      " is not available in '" + space.name + "'");
    }
    if (cmd.kind == ActionKind::Stop) return 1;
    const double step = space.step_for(cmd.kind);
    const double ratio = cmd.magnitude / step;
    const double rounded = std::round(ratio);
    if (!std::isfinite(ratio) || rounded < 1 || std::abs(ratio - rounded) > 1e-9 * rounded) {
        throw Error(ErrorCode::InvalidMagnitude,
                    format_magnitude(cmd.magnitude) + " is not a positive multiple of the " +
                        format_magnitude(step) + " step for " + std::string(verb_phrase(cmd.kind)));
    }
    return static_cast<std::size_t>(rounded);
}

ActionCommand command_from_segment(const MergedSegment& segment, const ActionSpace& space) {
    if (segment.kind == ActionKind::Stop) return {ActionKind::Stop, 0};
    return {segment.kind, static_cast<double>(segment.count) * space.step_for(segment.kind)};
}

std::string render_command(const ActionCommand& cmd, const ActionSpace& space) {
    (void)command_steps(cmd, space);
    std::string text = "The next action is ";
    text += verb_phrase(cmd.kind);
    if (cmd.kind == ActionKind::Stop) return text;
    text += " " + format_magnitude(cmd.magnitude);
    text += is_turn(cmd.kind) ? " degrees" : " units";
    return text;
}

ActionCommand parse_command(std::string_view text, const ActionSpace& space) {
    const std::regex verbs = verb_regex(space);
    const std::string input(text);

    std::smatch verb;
    if (!std::regex_search(input, verb, verbs)) {
        throw Error(ErrorCode::UnparsableAction, "no action verb in \"" + input + "\"");
    }
    ActionKind kind = ActionKind::Stop;
    for (std::size_t i = 0; i < space.vocabulary.size(); ++i) {
        if (verb[i + 1].matched) {
            kind = space.vocabulary[i];
            break;
        }
    }
    ActionCommand cmd{kind, 0};
    if (kind == ActionKind::Stop) return cmd;

    // The magnitude must belong to this verb, not a later one.
    const auto tail_begin = verb.suffix().first;
    auto tail_end = input.cend();
    std::smatch next_verb;
    if (std::regex_search(tail_begin, input.cend(), next_verb, verbs)) {
        tail_end = next_verb[0].first;
    }
    std::smatch number;
    if (std::regex_search(tail_begin, tail_end, number, number_regex())) {
        cmd.magnitude = std::stod(number.str());
    } else {
        cmd.magnitude = space.step_for(kind);
    }
    (void)command_steps(cmd, space);
    return cmd;
}

std::vector<ActionKind> decompose(const ActionCommand& cmd, const ActionSpace& space) {
    return std::vector<ActionKind>(command_steps(cmd, space), cmd.kind);
}

Pose apply_command_closed_form(const Pose& pose, const ActionCommand& cmd, const ActionSpace& space) {
    (void)command_steps(cmd, space);
    Pose next = pose;
    const double heading = pose.yaw * std::numbers::pi / 180.0;
    const double c = std::cos(heading);
    const double s = std::sin(heading);
    const double m = cmd.magnitude;
    switch (cmd.kind) {
        case ActionKind::MoveForward:
            next.x += m * c;
            next.y += m * s;
            break;
        case ActionKind::MoveLeft:
            next.x -= m * s;
            next.y += m * c;
            break;
        case ActionKind::MoveRight:
            next.x += m * s;
            next.y -= m * c;
            break;
        case ActionKind::Ascend: next.z += m; break;
        case ActionKind::Descend: next.z -= m; break;
        case ActionKind::TurnLeft: next.yaw = normalize_yaw(pose.yaw + m); break;
        case ActionKind::TurnRight: next.yaw = normalize_yaw(pose.yaw - m); break;
        case ActionKind::Stop: break;
    }
    return next;
}

}  // namespace aeronav
