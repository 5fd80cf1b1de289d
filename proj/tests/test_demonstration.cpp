#include "irp/benchmark.hpp"
#include "irp/demonstration.hpp"
#include "irp/error.hpp"

#include "test_util.hpp"

#include <doctest.h>

using namespace irp;
using testutil::at;
using testutil::code_of;

namespace {

const WorkbenchConfig kConfig = WorkbenchConfig::defaults();
const Vocabulary kVocab = Vocabulary::builtin();

Scene positions_only() {
  Scene s;
  s.positions = bench::positions();
  return s;
}

} // namespace

TEST_CASE("begin_demo captures O1 from perception") {
  const Scene s = bench::demo_scene("cube", types::cube);
  DemoSession d = begin_demo(s, kConfig, kVocab);
  CHECK(d.o1() == perceive(s, kConfig, kVocab));
  CHECK(d.recorded().empty());

  SUBCASE("O1 is not refreshed by recording") {
    const WorldState before = d.o1();
    d.record_keyframe(Arm::LeftClaw, Pose{{0.5, -0.225, 0.025}, {}}, Gripper::Close);
    CHECK(d.o1() == before);
    CHECK(d.current_scene().is_held("cube"));
  }
}

TEST_CASE("frame assignment") {
  SUBCASE("pose above a cube anchors on the cube") {
    const Scene s = bench::demo_scene("cube", types::cube);
    DemoSession d(s, kConfig, kVocab);
    const auto *c = s.find_object("cube");
    const Keyframe &k =
        d.record_keyframe(Arm::LeftClaw, Pose{c->top() + Vec3{0, 0, 0.03}, {}}, Gripper::Open);
    REQUIRE(k.frame.kind == FrameRef::Kind::Landmark);
    CHECK(k.frame.landmark->original_id == "cube");
    CHECK(k.frame.landmark->type == types::cube);
    CHECK(k.pose.position.z == doctest::Approx(0.03));
  }
  SUBCASE("far from every landmark falls back to the base frame") {
    DemoSession d(positions_only(), kConfig, kVocab);
    const Pose world{{0.5, 0.0, 0.6}, {}};
    const Keyframe &k = d.record_keyframe(Arm::LeftClaw, world, Gripper::Open);
    CHECK(k.frame.kind == FrameRef::Kind::Base);
    CHECK(k.pose == world);
  }
  SUBCASE("ties go to the smallest id") {
    Scene s;
    s.positions = {{"b", 0.5, 0.1}, {"a", 0.5, -0.1}};
    DemoSession d(s, kConfig, kVocab);
    const Keyframe &k = d.record_keyframe(Arm::LeftClaw, Pose{{0.5, 0.0, 0.05}, {}}, Gripper::Open);
    REQUIRE(k.frame.kind == FrameRef::Kind::Landmark);
    CHECK(k.frame.landmark->original_id == "a");
  }
  SUBCASE("outside the workspace") {
    DemoSession d(positions_only(), kConfig, kVocab);
    CHECK(code_of([&] {
            d.record_keyframe(Arm::LeftClaw, Pose{{5.0, 0.0, 0.1}, {}}, Gripper::Open);
          }) == ErrorCode::OutOfWorkspace);
  }
  SUBCASE("reassigning a frame keeps the world pose") {
    const Scene s = bench::demo_scene("cube", types::cube);
    DemoSession d(s, kConfig, kVocab);
    const Pose world{{0.5, -0.225, 0.1}, {}};
    d.record_keyframe(Arm::LeftClaw, world, Gripper::Open);
    d.reassign_frame(0, std::string("B"));
    const Keyframe &k = d.recorded()[0];
    CHECK(k.frame.landmark->original_id == "B");
    const auto poses = resolve_keyframes(d.finish("m").action, s, {{"B", "B"}});
    CHECK(distance(poses[0].position, world.position) < 1e-9);
  }
}

TEST_CASE("finish_demo") {
  const Scene s = bench::demo_scene("cube", types::cube);
  SUBCASE("no keyframes") {
    DemoSession d(s, kConfig, kVocab);
    CHECK(code_of([&] { d.finish("m"); }) == ErrorCode::EmptyDemonstration);
  }
  SUBCASE("unchanged scene gives equal observations") {
    DemoSession d(s, kConfig, kVocab);
    d.record_keyframe(Arm::LeftClaw, Pose{{0.5, 0.0, 0.3}, {}}, Gripper::Open);
    const DemoResult r = d.finish("m", s);
    CHECK(r.o1 == r.o2);
  }
  SUBCASE("move demo observations") {
    const DemoResult r = run_demo_script(bench::claw_top_demo(), s, kConfig, kVocab);
    CHECK(r.o1.holds({"on", {"cube", "A"}}));
    CHECK(r.o1.holds({"clear", {"B"}}));
    CHECK(r.o2.holds({"on", {"cube", "B"}}));
    CHECK(r.o2.holds({"clear", {"A"}}));
    CHECK_FALSE(r.o2.holds({"on", {"cube", "A"}}));
    CHECK(r.action.name == "claw_top");
    CHECK_NOTHROW(r.action.validate());
  }
}

TEST_CASE("execute_low_level") {
  const Scene s = bench::demo_scene("cube", types::cube);
  const DemoResult demo = run_demo_script(bench::claw_top_demo(), s, kConfig, kVocab);

  // Positions share type and dims, so unbound ones would all resolve to A.
  std::map<std::string, std::string> identity;
  for (const auto &id : demo.action.landmark_ids())
    identity[id] = id;

  SUBCASE("self replay reproduces O2") {
    const Scene after = execute_low_level(demo.action, s, identity, kConfig);
    CHECK(perceive(after, kConfig, kVocab) == demo.o2);
  }
  SUBCASE("relocated cube follows the rebound landmarks") {
    Scene moved;
    moved.positions = bench::positions();
    moved.objects.push_back(bench::object_at("cube", types::cube, "C"));
    const std::map<std::string, std::string> bindings{{"cube", "cube"}, {"A", "C"}, {"B", "D"}};
    const Scene after = execute_low_level(demo.action, moved, bindings, kConfig);
    // Release happens straight above D, so the cube settles on D's table point.
    const auto *d = moved.find_position("D");
    const auto *c = after.find_object("cube");
    CHECK(std::abs(c->pose.x - d->x) < 1e-6);
    CHECK(std::abs(c->pose.y - d->y) < 1e-6);
    CHECK(std::abs(c->pose.z) < 1e-6);
    CHECK(after.held.empty());
  }
  SUBCASE("deterministic") {
    CHECK(execute_low_level(demo.action, s, {}, kConfig) ==
          execute_low_level(demo.action, s, {}, kConfig));
  }
  SUBCASE("missing landmark type") {
    LowLevelAction a{"r", {Keyframe{Arm::LeftClaw, Pose{{0, 0, 0.05}, {}},
                                    FrameRef::on({types::roof, {0.06, 0.06, 0.04}, "r1"}),
                                    Gripper::Open}}};
    CHECK(code_of([&] { execute_low_level(a, s, {}, kConfig); }) ==
          ErrorCode::UnresolvedLandmark);
  }
  SUBCASE("close with nothing in reach") {
    LowLevelAction a{"g", {Keyframe{Arm::LeftClaw, Pose{{0.5, 0.2, 0.3}, {}}, FrameRef::base(),
                                    Gripper::Close}}};
    CHECK(code_of([&] { execute_low_level(a, s, {}, kConfig); }) == ErrorCode::GraspFailed);
  }
}

TEST_CASE("landmark matching prefers the closest dims") {
  Scene s;
  s.positions = bench::positions();
  auto small = bench::object_at("small", types::cube, "A");
  auto big = bench::object_at("big", types::cube, "C");
  small.dims = {0.045, 0.045, 0.045};
  big.dims = {0.06, 0.06, 0.06};
  s.objects = {small, big};
  LowLevelAction a{"touch", {Keyframe{Arm::LeftClaw, Pose{{0, 0, 0.02}, {}},
                                      FrameRef::on({types::cube, {0.059, 0.059, 0.059}, "x"}),
                                      Gripper::Open}}};
  const auto poses = resolve_keyframes(a, s, {});
  CHECK(poses[0].position.y == doctest::Approx(big.pose.y));
  const auto bound = resolve_keyframes(a, s, {{"x", "small"}});
  CHECK(bound[0].position.y == doctest::Approx(small.pose.y));
}
