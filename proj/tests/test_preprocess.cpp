#include <doctest.h>

#include <numeric>
#include <random>

#include "aeronav/error.hpp"
#include "aeronav/preprocess.hpp"
#include "oracles.hpp"

using namespace aeronav;

namespace {

constexpr auto MF = ActionKind::MoveForward;
constexpr auto TL = ActionKind::TurnLeft;

std::vector<std::size_t> iota_frames(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an aeronav::Error");
    return ErrorCode::Io;
}

}  // namespace

TEST_CASE("merge_actions examples") {
    const std::vector<ActionKind> tl3{TL, TL, TL};
    const auto merged = merge_actions(tl3, 3);
    REQUIRE(merged.size() == 1);
    CHECK(merged[0] == MergedSegment{TL, 3, 0, 3});
    CHECK(merged[0].token() == "turn_left_x3");

    const std::vector<ActionKind> single{MF};
    CHECK(merge_actions(single, 3) == std::vector<MergedSegment>{{MF, 1, 0, 1}});

    const std::vector<ActionKind> mixed{MF, MF, MF, MF, TL, TL};
    CHECK(merge_actions(mixed, 3) ==
          std::vector<MergedSegment>{{MF, 3, 0, 3}, {MF, 1, 3, 4}, {TL, 2, 4, 6}});

    CHECK(merge_actions({}, 3).empty());
    CHECK(code_of([] { (void)merge_actions({}, 0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("merge matches the capped run-length oracle and round trips") {
    std::mt19937_64 rng(11);
    const std::vector<ActionKind> alphabet{MF, TL, ActionKind::TurnRight, ActionKind::Ascend};
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t cap = 1 + rng() % 6;
        std::vector<ActionKind> actions(rng() % 120);
        // skewed toward long forward runs
        for (auto& a : actions) a = (rng() % 3 != 0) ? MF : alphabet[rng() % alphabet.size()];

        const auto merged = merge_actions(actions, cap);
        const auto expected = oracle::capped_rle(actions, cap);
        REQUIRE(merged.size() == expected.size());
        std::size_t frame = 0;
        for (std::size_t i = 0; i < merged.size(); ++i) {
            CHECK(merged[i].kind == expected[i].first);
            CHECK(merged[i].count == expected[i].second);
            CHECK(merged[i].count <= cap);
            CHECK(merged[i].start_frame == frame);
            frame += merged[i].count;
            CHECK(merged[i].end_frame == frame);
            if (i > 0 && merged[i].kind == merged[i - 1].kind) CHECK(merged[i - 1].count == cap);
        }
        CHECK(expand_segments(merged) == actions);
    }
}

TEST_CASE("select_keyframes examples") {
    const std::vector<MergedSegment> segs{{MF, 2, 0, 2}, {TL, 2, 2, 4}, {MF, 1, 4, 5}};
    CHECK(select_keyframes(segs, 6) == std::vector<std::size_t>{0, 2, 4, 5});

    const std::vector<MergedSegment> one{{MF, 1, 0, 1}};
    CHECK(select_keyframes(one, 2) == std::vector<std::size_t>{0, 1});

    const std::vector<MergedSegment> split{{MF, 3, 0, 3}, {MF, 1, 3, 4}};
    CHECK(select_keyframes(split, 5) == std::vector<std::size_t>{0, 3, 4});

    CHECK(select_keyframes({}, 1) == std::vector<std::size_t>{0});
}

TEST_CASE("select_keyframes rejects inconsistent spans") {
    const std::vector<MergedSegment> gap{{MF, 2, 0, 2}, {TL, 1, 3, 4}};
    CHECK(code_of([&] { (void)select_keyframes(gap, 5); }) == ErrorCode::MalformedSegments);
    const std::vector<MergedSegment> bad_count{{MF, 2, 0, 3}};
    CHECK(code_of([&] { (void)select_keyframes(bad_count, 4); }) == ErrorCode::MalformedSegments);
    const std::vector<MergedSegment> short_total{{MF, 2, 0, 2}};
    CHECK(code_of([&] { (void)select_keyframes(short_total, 5); }) == ErrorCode::MalformedSegments);
    CHECK(code_of([&] { (void)select_keyframes({}, 0); }) == ErrorCode::MalformedSegments);
}

TEST_CASE("keyframe properties on fuzzed trajectories") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<ActionKind> actions(1 + rng() % 80);
        for (auto& a : actions) a = (rng() % 4 != 0) ? MF : TL;
        const auto segs = merge_actions(actions, 1 + rng() % 6);
        const auto keys = select_keyframes(segs, actions.size() + 1);
        CHECK(keys.front() == 0);
        CHECK(keys.back() == actions.size());
        CHECK(keys.size() <= segs.size() + 1);
        CHECK(std::is_sorted(keys.begin(), keys.end()));
        CHECK(std::adjacent_find(keys.begin(), keys.end()) == keys.end());
    }
}

TEST_CASE("sample_history examples") {
    const auto f20 = iota_frames(20);
    CHECK(sample_history(f20, HistoryPolicy::uniform(8)) ==
          std::vector<std::size_t>{0, 2, 5, 8, 10, 13, 16, 19});
    const auto f5 = iota_frames(5);
    CHECK(sample_history(f5, HistoryPolicy::uniform(8)) == f5);
    CHECK(sample_history(f20, HistoryPolicy::fifo(8)) ==
          std::vector<std::size_t>{12, 13, 14, 15, 16, 17, 18, 19});
    CHECK(sample_history(f20, HistoryPolicy::current_only()) == std::vector<std::size_t>{19});
}

TEST_CASE("sample_history samples keyframe values, not positions") {
    const std::vector<std::size_t> keys{0, 4, 9, 12, 30};
    CHECK(sample_history(keys, HistoryPolicy::uniform(3)) == std::vector<std::size_t>{0, 9, 30});
    CHECK(sample_history(keys, HistoryPolicy::fifo(2)) == std::vector<std::size_t>{12, 30});
}

TEST_CASE("sample_history errors") {
    CHECK(code_of([] { (void)sample_history({}, HistoryPolicy::uniform(8)); }) == ErrorCode::EmptyHistory);
    const std::vector<std::size_t> unordered{0, 3, 3};
    CHECK(code_of([&] { (void)sample_history(unordered, HistoryPolicy::uniform(8)); }) ==
          ErrorCode::FrameOrderError);
    const auto f = iota_frames(4);
    CHECK(code_of([&] { (void)sample_history(f, HistoryPolicy::uniform(1)); }) == ErrorCode::InvalidPolicy);
    CHECK(code_of([&] { (void)sample_history(f, HistoryPolicy::fifo(0)); }) == ErrorCode::InvalidPolicy);
    CHECK(code_of([] { (void)history_policy_from_name("lifo", 3); }) == ErrorCode::InvalidPolicy);
}

TEST_CASE("history policy properties") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = 1 + rng() % 60;
        std::vector<std::size_t> frames;
        std::size_t f = rng() % 5;
        for (std::size_t i = 0; i < n; ++i) {
            frames.push_back(f);
            f += 1 + rng() % 4;
        }
        const std::size_t k = 2 + rng() % 12;

        const auto uni = sample_history(frames, HistoryPolicy::uniform(k));
        CHECK(uni.size() == std::min(k, n));
        CHECK(uni.front() == frames.front());
        CHECK(uni.back() == frames.back());
        CHECK(std::adjacent_find(uni.begin(), uni.end(), std::greater_equal<>()) == uni.end());
        for (std::size_t v : uni) CHECK(std::binary_search(frames.begin(), frames.end(), v));

        const auto fifo = sample_history(frames, HistoryPolicy::fifo(k));
        REQUIRE(fifo.size() == std::min(k, n));
        CHECK(std::equal(fifo.begin(), fifo.end(), frames.end() - static_cast<std::ptrdiff_t>(fifo.size())));
    }
}
