#include <gtest/gtest.h>

#include <random>

#include "orofacial/error.hpp"
#include "orofacial/model.hpp"
#include "test_util.hpp"

namespace orofacial {
namespace {

std::vector<std::string> messages(const Trajectory& t) {
  std::vector<std::string> out;
  for (const auto& v : validate_trajectory(t)) out.push_back(v.to_string());
  return out;
}

TEST(ValidateTrajectory, WellFormedThirtyFpsIsClean) {
  std::mt19937_64 rng(3);
  const Trajectory t = testing::random_trajectory(rng, 30, true);
  EXPECT_TRUE(validate_trajectory(t).empty());
}

TEST(ValidateTrajectory, ReportsNonMonotonicTimestamp) {
  std::mt19937_64 rng(4);
  Trajectory t = testing::random_trajectory(rng, 2, false);
  t.frames[0].timestamp = 1.0;
  t.frames[1].timestamp = 0.9;
  EXPECT_EQ(messages(t), std::vector<std::string>{"non-monotonic timestamp @1"});
}

TEST(ValidateTrajectory, ReportsLandmarkCount) {
  std::mt19937_64 rng(5);
  Trajectory t = testing::random_trajectory(rng, 4, false);
  t.frames[2].points.pop_back();
  EXPECT_EQ(messages(t), std::vector<std::string>{"landmark count 67 ≠ 68 @2"});
}

TEST(ValidateTrajectory, ReportsEveryViolation) {
  std::mt19937_64 rng(6);
  Trajectory t = testing::random_trajectory(rng, 5, true);
  t.nominal_fps = 5.0;
  t.frames[1].points[0].x = 700.0;
  (*t.frames[3].depth)[7] = -1.0;
  t.frames[4].timestamp = t.frames[3].timestamp;
  const auto v = validate_trajectory(t);
  ASSERT_EQ(v.size(), 4u);
  EXPECT_FALSE(v[0].frame.has_value());
  EXPECT_EQ(*v[1].frame, 1u);
  EXPECT_EQ(*v[2].frame, 3u);
  EXPECT_EQ(*v[3].frame, 4u);
}

TEST(ValidateTrajectory, IsIdempotent) {
  std::mt19937_64 rng(7);
  Trajectory t = testing::random_trajectory(rng, 10, false);
  t.frames[5].timestamp = 0.0;
  const Trajectory copy = t;
  const auto a = messages(t);
  const auto b = messages(t);
  EXPECT_EQ(a, b);
  EXPECT_EQ(t, copy);
}

TEST(ValidateIntrinsics, RejectsBadParameters) {
  EXPECT_NO_THROW(validate_intrinsics({600, 600, 320, 240, 640, 480}));
  EXPECT_THROW(validate_intrinsics({0, 600, 320, 240, 640, 480}), Error);
  EXPECT_THROW(validate_intrinsics({600, -1, 320, 240, 640, 480}), Error);
  EXPECT_THROW(validate_intrinsics({600, 600, 700, 240, 640, 480}), Error);
  EXPECT_THROW(validate_intrinsics({600, 600, 320, 0, 640, 480}), Error);
}

TEST(Names, RoundTrip) {
  for (Feature f : kAllFeatures) EXPECT_EQ(parse_feature(to_string(f)), f);
  for (Task t : {Task::kBBP, Task::kPA, Task::kBigSmile, Task::kRest}) {
    EXPECT_EQ(parse_task(to_string(t)), t);
  }
  EXPECT_EQ(to_string(Feature::kCccArea), "ccc_Area");
  EXPECT_FALSE(parse_group("XX").has_value());
}

}  // namespace
}  // namespace orofacial
