// Discrete flight model: poses, action vocabularies and open-loop rollout.
//
// Yaw convention: 0 degrees points along +x, positive yaw is
// counter-clockwise in the x-y plane, so TurnLeft increases yaw.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aeronav {

struct Vec3 {
    double x{0};
    double y{0};
    double z{0};

    friend bool operator==(const Vec3&, const Vec3&) = default;
};

[[nodiscard]] double distance(const Vec3& a, const Vec3& b) noexcept;

/// Agent state at one timestep. `yaw` is in degrees, kept in [0, 360).
struct Pose {
    double x{0};
    double y{0};
    double z{0};
    double yaw{0};

    [[nodiscard]] Vec3 position() const noexcept { return {x, y, z}; }

    friend bool operator==(const Pose&, const Pose&) = default;
};

/// Wraps an angle in degrees into [0, 360).
[[nodiscard]] double normalize_yaw(double degrees) noexcept;

enum class ActionKind {
    MoveForward,
    TurnLeft,
    TurnRight,
    Ascend,
    Descend,
    MoveLeft,
    MoveRight,
    Stop,
};

inline constexpr std::array<ActionKind, 8> kAllActionKinds = {
    ActionKind::MoveForward, ActionKind::TurnLeft, ActionKind::TurnRight, ActionKind::Ascend,
    ActionKind::Descend,     ActionKind::MoveLeft, ActionKind::MoveRight, ActionKind::Stop,
};

/// Stable identifier used in files, e.g. "move_forward".
[[nodiscard]] std::string_view action_name(ActionKind kind) noexcept;
/// Short label used in tables, e.g. "MF".
[[nodiscard]] std::string_view action_abbrev(ActionKind kind) noexcept;
/// Inverse of action_name. Throws Error(UnknownAction).
[[nodiscard]] ActionKind action_from_name(std::string_view name);

[[nodiscard]] bool is_turn(ActionKind kind) noexcept;
[[nodiscard]] bool is_vertical(ActionKind kind) noexcept;
[[nodiscard]] bool is_horizontal(ActionKind kind) noexcept;

/// Environment-specific action vocabulary and step magnitudes.
struct ActionSpace {
    std::string name;
    /// Ordered vocabulary; the order is used for deterministic tie-breaking.
    std::vector<ActionKind> vocabulary;
    double horizontal_step{0};
    double vertical_step{0};
    double turn_step{0};

    [[nodiscard]] bool contains(ActionKind kind) const noexcept;
    /// Step size for one primitive of `kind` (units or degrees); 0 for Stop.
    [[nodiscard]] double step_for(ActionKind kind) const noexcept;
    /// Throws Error(InvalidArgument) when magnitudes are not positive or Stop is missing.
    void validate() const;
};

/// 8 actions, 5 units horizontal, 2 units vertical, 15 degree turns.
[[nodiscard]] ActionSpace aerialvln_space();
/// 6 actions (no lateral moves), 3 units horizontal, 3 units vertical, 30 degree turns.
[[nodiscard]] ActionSpace openfly_space();
/// Looks up "aerialvln" or "openfly" (case-insensitive). Throws Error(InvalidArgument).
[[nodiscard]] ActionSpace action_space_by_name(std::string_view name);

/// Axis-aligned obstacle; a point on the boundary counts as contact.
struct ObstacleBox {
    Vec3 min;
    Vec3 max;

    [[nodiscard]] bool contains(const Vec3& p) const noexcept;

    friend bool operator==(const ObstacleBox&, const ObstacleBox&) = default;
};

/// Applies one primitive. Throws Error(UnsupportedAction) when `kind` is not
/// in the space's vocabulary.
[[nodiscard]] Pose apply_action(const Pose& pose, ActionKind kind, const ActionSpace& space);

struct Rollout {
    /// Always actions.size() + 1 poses, starting with the start pose.
    std::vector<Pose> trajectory;
    bool collided{false};
    /// Index of the first action whose resulting pose touched an obstacle.
    std::optional<std::size_t> first_collision_step;
};

/// Executes every action in order. Collisions are checked at step endpoints
/// and do not halt the rollout.
[[nodiscard]] Rollout rollout(const Pose& start, std::span<const ActionKind> actions,
                              const ActionSpace& space,
                              std::span<const ObstacleBox> obstacles = {});

[[nodiscard]] bool collides(const Vec3& p, std::span<const ObstacleBox> obstacles) noexcept;

/// Straight-line distance between the two positions; used as the shortest
/// path proxy for SPL.
[[nodiscard]] double shortest_path_length(const Pose& a, const Pose& b) noexcept;

}  // namespace aeronav
