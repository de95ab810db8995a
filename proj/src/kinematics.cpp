#include "aeronav/kinematics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "aeronav/error.hpp"

namespace aeronav {

double distance(const Vec3& a, const Vec3& b) noexcept {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double normalize_yaw(double degrees) noexcept {
    double wrapped = std::fmod(degrees, 360.0);
    if (wrapped < 0) wrapped += 360.0;
    // -1e-17 + 360 rounds to 360
    if (wrapped >= 360.0) wrapped = 0.0;
    return wrapped;
}

std::string_view action_name(ActionKind kind) noexcept {
    switch (kind) {
        case ActionKind::MoveForward: return "move_forward";
        case ActionKind::TurnLeft: return "turn_left";
        case ActionKind::TurnRight: return "turn_right";
        case ActionKind::Ascend: return "ascend";
        case ActionKind::Descend: return "descend";
        case ActionKind::MoveLeft: return "move_left";
        case ActionKind::MoveRight: return "move_right";
        case ActionKind::Stop: return "stop";
    }
    return "unknown";
}

std::string_view action_abbrev(ActionKind kind) noexcept {
    switch (kind) {
        case ActionKind::MoveForward: return "MF";
        case ActionKind::TurnLeft: return "TL";
        case ActionKind::TurnRight: return "TR";
        case ActionKind::Ascend: return "AS";
        case ActionKind::Descend: return "DS";
        case ActionKind::MoveLeft: return "ML";
        case ActionKind::MoveRight: return "MR";
        case ActionKind::Stop: return "ST";
    }
    return "??";
}

ActionKind action_from_name(std::string_view name) {
    for (ActionKind kind : kAllActionKinds) {
        if (action_name(kind) == name) return kind;
    }
    throw Error(ErrorCode::UnknownAction, "unknown action name '" + std::string(name) + "'");
}

bool is_turn(ActionKind kind) noexcept {
    return kind == ActionKind::TurnLeft || kind == ActionKind::TurnRight;
}

bool is_vertical(ActionKind kind) noexcept {
    return kind == ActionKind::Ascend || kind == ActionKind::Descend;
}

bool is_horizontal(ActionKind kind) noexcept {
    return kind == ActionKind::MoveForward || kind == ActionKind::MoveLeft ||
           kind == ActionKind::MoveRight;
}

bool ActionSpace::contains(ActionKind kind) const noexcept {
    return std::find(vocabulary.begin(), vocabulary.end(), kind) != vocabulary.end();
}

double ActionSpace::step_for(ActionKind kind) const noexcept {
    if (is_turn(kind)) return turn_step;
    if (is_vertical(kind)) return vertical_step;
    if (is_horizontal(kind)) return horizontal_step;
    return 0.0;
}

void ActionSpace::validate() const {
    if (!(horizontal_step > 0) || !(vertical_step > 0) || !(turn_step > 0)) {
        throw Error(ErrorCode::InvalidArgument, "action space '" + name + "' has non-positive step");
    }
    if (!contains(ActionKind::Stop)) {
        throw Error(ErrorCode::InvalidArgument, "action space '" + name + "' lacks stop");
    }
}

ActionSpace aerialvln_space() {
    return ActionSpace{
        "aerialvln",
        {ActionKind::MoveForward, ActionKind::TurnLeft, ActionKind::TurnRight, ActionKind::Ascend,
         ActionKind::Descend, ActionKind::MoveLeft, ActionKind::MoveRight, ActionKind::Stop},
        5.0,
        2.0,
        15.0,
    };
}

ActionSpace openfly_space() {
    return ActionSpace{
        "openfly",
        {ActionKind::MoveForward, ActionKind::TurnLeft, ActionKind::TurnRight, ActionKind::Ascend,
         ActionKind::Descend, ActionKind::Stop},
        3.0,
        3.0,
        30.0,
    };
}

ActionSpace action_space_by_name(std::string_view name) {
    std::string lowered(name);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lowered == "aerialvln") return aerialvln_space();
    if (lowered == "openfly") return openfly_space();
    throw Error(ErrorCode::InvalidArgument, "unknown action space '" + std::string(name) + "'");
}

bool ObstacleBox::contains(const Vec3& p) const noexcept {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y && p.z >= min.z &&
           p.z <= max.z;
}

Pose apply_action(const Pose& pose, ActionKind kind, const ActionSpace& space) {
    if (!space.contains(kind)) {
        throw Error(ErrorCode::UnsupportedAction, std::string(action_name(kind)) +
                                                      " is not in the '" + space.name +
                                                      "' vocabulary");
    }
    Pose next = pose;
    const double heading = pose.yaw * std::numbers::pi / 180.0;
    const double c = std::cos(heading);
    const double s = std::sin(heading);
    switch (kind) {
        case ActionKind::MoveForward:
            next.x += space.horizontal_step * c;
            next.y += space.horizontal_step * s;
            break;
        case ActionKind::MoveLeft:
            // heading rotated +90 degrees: (-sin, cos)
            next.x -= space.horizontal_step * s;
            next.y += space.horizontal_step * c;
            break;
        case ActionKind::MoveRight:
            next.x += space.horizontal_step * s;
            next.y -= space.horizontal_step * c;
            break;
        case ActionKind::Ascend: next.z += space.vertical_step; break;
        case ActionKind::Descend: next.z -= space.vertical_step; break;
        case ActionKind::TurnLeft: next.yaw = normalize_yaw(pose.yaw + space.turn_step); break;
        case ActionKind::TurnRight: next.yaw = normalize_yaw(pose.yaw - space.turn_step); break;
        case ActionKind::Stop: break;
    }
    return next;
}

bool collides(const Vec3& p, std::span<const ObstacleBox> obstacles) noexcept {
    return std::any_of(obstacles.begin(), obstacles.end(),
                       [&](const ObstacleBox& box) { return box.contains(p); });
}

Rollout rollout(const Pose& start, std::span<const ActionKind> actions, const ActionSpace& space,
                std::span<const ObstacleBox> obstacles) {
    Rollout out;
    out.trajectory.reserve(actions.size() + 1);
    out.trajectory.push_back(start);
    for (std::size_t i = 0; i < actions.size(); ++i) {
        out.trajectory.push_back(apply_action(out.trajectory.back(), actions[i], space));
        if (!out.collided && collides(out.trajectory.back().position(), obstacles)) {
            out.collided = true;
            out.first_collision_step = i;
        }
    }
    return out;
}

double shortest_path_length(const Pose& a, const Pose& b) noexcept {
    return distance(a.position(), b.position());
}

}  // namespace aeronav
