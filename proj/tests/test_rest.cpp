#include "irp/benchmark.hpp"
#include "irp/json_io.hpp"
#include "irp/rest.hpp"
#include "irp/service.hpp"

#include "test_util.hpp"

#include <doctest.h>
#include <httplib.h>

#include <filesystem>
#include <future>
#include <thread>

using namespace irp;
using testutil::at;
using testutil::code_of;

namespace {

// A live server on an ephemeral port, torn down with the fixture.
struct Server {
  SessionService svc;
  httplib::Server http;
  std::thread thread;
  int port = 0;

  Server() {
    install_routes(http, svc);
    port = http.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { http.listen_after_bind(); });
    http.wait_until_ready();
  }
  ~Server() {
    http.stop();
    thread.join();
  }

  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port);
    c.set_read_timeout(30, 0);
    return c;
  }
};

struct Reply {
  int status = 0;
  json body;
};

Reply unpack(const httplib::Result &r) {
  REQUIRE(r);
  return {r->status, r->body.empty() ? json() : json::parse(r->body)};
}

Reply get(Server &s, const std::string &path) { return unpack(s.client().Get(path)); }
Reply post(Server &s, const std::string &path, const json &body = json::object()) {
  return unpack(s.client().Post(path, body.dump(), "application/json"));
}
Reply patch(Server &s, const std::string &path, const json &body) {
  return unpack(s.client().Patch(path, body.dump(), "application/json"));
}

Scene swap_scene() {
  Scene s;
  auto all = bench::positions();
  s.positions.assign(all.begin(), all.begin() + 3);
  s.objects.push_back(bench::object_at("obj1", types::cube, "A"));
  s.objects.push_back(bench::object_at("obj2", types::cube, "B"));
  return s;
}

// Teaches "move" through the demo endpoints, replaying the scripted claw demo.
void teach_move(Server &s) {
  REQUIRE(post(s, "/api/scene", {{"scene", bench::demo_scene("cube", types::cube)}}).status == 200);
  REQUIRE(post(s, "/api/demo/begin").status == 200);
  for (const auto &k : bench::claw_top_demo().keyframes) {
    const auto r = post(s, "/api/demo/keyframe", {{"arm", k.arm}, {"pose", k.pose}, {"gripper", k.gripper}});
    REQUIRE(r.status == 200);
  }
  const auto r = post(s, "/api/demo/finish", {{"name", "move"}});
  REQUIRE(r.status == 201);
}

bool has_english(const json &action, const std::string &text) {
  for (const auto &row : action["conditions"])
    if (row["english"] == text)
      return true;
  return false;
}

} // namespace

TEST_CASE("status codes") {
  CHECK(http_status(ErrorCode::NotFound) == 404);
  CHECK(http_status(ErrorCode::StaleSnapshot) == 409);
  CHECK(http_status(ErrorCode::DuplicateName) == 409);
  CHECK(http_status(ErrorCode::NoSolution) == 422);
  CHECK(http_status(ErrorCode::TypeViolation) == 400);
}

TEST_CASE("teach, plan and execute over HTTP") {
  Server s;

  const auto session = get(s, "/api/session");
  CHECK(session.status == 200);
  CHECK(session.body["demo_active"] == false);
  CHECK(session.body["schema_version"] == kSchemaVersion);

  const auto early = post(s, "/api/problems", {{"name", "swap"}});
  CHECK(early.status == 422);
  CHECK(early.body["error"] == "NoActionsDefined");

  teach_move(s);
  CHECK(get(s, "/api/session").body["demo_active"] == false);

  const auto actions = get(s, "/api/actions");
  REQUIRE(actions.body.size() == 1);
  const json move = actions.body[0];
  CHECK(move["params"].size() == 3);
  CHECK(has_english(move, "obj is on A"));
  CHECK(has_english(move, "obj is not on B"));
  CHECK_FALSE(move["motion"].is_null());

  SUBCASE("condition edits") {
    const auto ok = patch(s, "/api/actions/move", {{"op", "add_pre"}, {"literal", "thin(?obj)"}});
    CHECK(ok.status == 200);
    CHECK(has_english(ok.body, "obj is thin"));
    const auto bad = patch(s, "/api/actions/move",
                           {{"op", "set_type"}, {"param", "?obj"}, {"type", "position"}});
    CHECK(bad.status == 400);
    CHECK(bad.body["error"] == "TypeViolation");
    const auto removed = patch(s, "/api/actions/move", {{"op", "remove_pre"}, {"literal", "thin(?obj)"}});
    CHECK_FALSE(has_english(removed.body, "obj is thin"));
    CHECK(patch(s, "/api/actions/ghost", {{"op", "rename"}, {"name", "x"}}).status == 404);
    CHECK(patch(s, "/api/actions/move", {{"op", "explode"}}).status == 400);
  }
  SUBCASE("copy") {
    CHECK(post(s, "/api/actions/move/copy", {{"new_name", "move2"}}).status == 201);
    CHECK(post(s, "/api/actions/move/copy", {{"new_name", "move2"}}).status == 409);
    CHECK(get(s, "/api/actions").body.size() == 2);
  }
  SUBCASE("solve and step through") {
    REQUIRE(post(s, "/api/scene", {{"scene", swap_scene()}}).status == 200);
    const auto scene = get(s, "/api/scene");
    CHECK(scene.body["perceived"]["atoms"].size() > 0);
    const auto created =
        post(s, "/api/problems", {{"name", "swap"}, {"goal", {"on(obj1, B)", "on(obj2, A)"}}});
    REQUIRE(created.status == 201);
    CHECK(get(s, "/api/problems").body.size() == 1);

    const auto solved = post(s, "/api/problems/swap/solve", {{"mode", "optimal"}});
    REQUIRE(solved.status == 200);
    CHECK(solved.body["plan"]["steps"].size() == 3);
    CHECK(solved.body["plan"]["cost"] == 3);
    const int id = solved.body["id"];

    Reply step;
    for (int i = 0; i < 3; ++i) {
      step = post(s, "/api/plans/" + std::to_string(id) + "/execute/step", {{"verdict", "ok"}});
      REQUIRE(step.status == 200);
      CHECK(step.body["entry"]["outcome"] == "OK");
    }
    CHECK(step.body["finished"] == true);
    CHECK(step.body["goal_reached"] == true);
    const auto plan = get(s, "/api/plans/" + std::to_string(id));
    CHECK(plan.body["execution"]["finished"] == true);
    CHECK(get(s, "/api/debug/swap").body["hints"].empty());
    CHECK(post(s, "/api/plans/" + std::to_string(id) + "/execute/step").status == 400);
  }
  SUBCASE("rejection is reported") {
    REQUIRE(post(s, "/api/scene", {{"scene", swap_scene()}}).status == 200);
    post(s, "/api/problems", {{"name", "swap"}, {"goal", {"on(obj1, B)", "on(obj2, A)"}}});
    const int id = post(s, "/api/problems/swap/solve").body["id"];
    const auto r = post(s, "/api/plans/" + std::to_string(id) + "/execute/step", {{"verdict", "rejected"}});
    CHECK(r.body["entry"]["outcome"] == "REJECTED");
    CHECK(r.body["finished"] == true);
  }
  SUBCASE("unreachable goal comes back with the debug report") {
    REQUIRE(post(s, "/api/scene", {{"scene", swap_scene()}}).status == 200);
    post(s, "/api/problems", {{"name", "bad"}, {"goal", {"on(obj1, obj2)"}}});
    const auto r = post(s, "/api/problems/bad/solve");
    CHECK(r.status == 422);
    CHECK(r.body["error"] == "NoSolution");
    bool quoted = false;
    for (const auto &h : r.body["debug"]["hints"])
      quoted |= h["text"].get<std::string>().find(kGoalHint) != std::string::npos;
    CHECK(quoted);
  }
  SUBCASE("empty goal") {
    post(s, "/api/problems", {{"name", "p"}});
    const auto r = post(s, "/api/problems/p/solve");
    CHECK(r.status == 422);
    CHECK(r.body["error"] == "EmptyGoal");
  }
}

TEST_CASE("scene endpoints") {
  Server s;
  const auto a = post(s, "/api/scene", {{"randomize", {{"seed", 9}, {"objects", 4}, {"mixed", true}}}});
  const auto b = post(s, "/api/scene", {{"randomize", {{"seed", 9}, {"objects", 4}, {"mixed", true}}}});
  REQUIRE(a.status == 200);
  CHECK(a.body == b.body);
  Scene overlapping = swap_scene();
  overlapping.objects[1] = bench::object_at("obj2", types::cube, "A");
  CHECK(post(s, "/api/scene", {{"scene", overlapping}}).status == 400);
}

TEST_CASE("errors and not found") {
  Server s;
  CHECK(get(s, "/api/plans/99").status == 404);
  CHECK(get(s, "/api/debug/nope").status == 404);
  const auto bad = unpack(s.client().Post("/api/scene", "{not json", "application/json"));
  CHECK(bad.status == 400);
  CHECK(post(s, "/api/demo/keyframe", {{"arm", "left_claw"}}).status == 400);
  CHECK(post(s, "/api/demo/finish", {{"name", "x"}}).status == 400);
}

TEST_CASE("save and load") {
  Server s;
  teach_move(s);
  const auto path = (std::filesystem::temp_directory_path() / "irp_rest_session.json").string();
  CHECK(post(s, "/api/save", {{"path", path}}).status == 200);
  const json saved = get(s, "/api/save").body;
  CHECK(saved["schema_version"] == kSchemaVersion);

  REQUIRE(post(s, "/api/load", {{"session", session_to_json(Session{})}}).status == 200);
  CHECK(get(s, "/api/actions").body.empty());
  REQUIRE(get(s, "/api/load?path=" + path).status == 200);
  CHECK(get(s, "/api/actions").body.size() == 1);
  CHECK(get(s, "/api/save").body == saved);
  CHECK(post(s, "/api/load", {{"path", path + ".missing"}}).status >= 400);
  std::filesystem::remove(path);
}

TEST_CASE("mutations during a solve are refused") {
  Session seed = bench::taught_session();
  Scene scene;
  scene.positions = bench::positions();
  scene.objects.push_back(bench::object_at("c1", types::cube, "A"));
  for (int i = 2; i <= 9; ++i)
    scene.objects.push_back(bench::object_on("c" + std::to_string(i), types::cube, scene.objects.back()));
  create_problem_from_scene(seed, "reverse", scene);
  std::set<Literal> goal;
  for (int i = 1; i < 9; ++i)
    goal.insert(Literal::pos(at("on", {"c" + std::to_string(i), "c" + std::to_string(i + 1)})));
  set_goal(seed, "reverse", goal);
  SessionService svc(seed);

  SearchConfig slow;
  slow.mode = SearchMode::Optimal;
  slow.time_limit_ms = 1500;
  auto solving = std::async(std::launch::async, [&] { return svc.solve("reverse", slow); });
  std::this_thread::sleep_for(std::chrono::milliseconds(200));
  CHECK(code_of([&] { svc.mutate([](Session &s) { s.events.push_back("x"); }); }) ==
        ErrorCode::StaleSnapshot);
  CHECK(svc.snapshot().problems.count("reverse"));
  try {
    solving.get();
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::ResourceLimit);
  }
  CHECK_NOTHROW(svc.mutate([](Session &s) { s.events.push_back("after"); }));
}
