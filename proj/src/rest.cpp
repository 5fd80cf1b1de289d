#include "irp/rest.hpp"

#include "irp/error.hpp"
#include "irp/json_io.hpp"

#include <httplib.h>

namespace irp {

int http_status(ErrorCode code) {
  switch (code) {
  case ErrorCode::NotFound:
    return 404;
  case ErrorCode::StaleSnapshot:
  case ErrorCode::DuplicateName:
    return 409;
  case ErrorCode::NoSolution:
  case ErrorCode::ResourceLimit:
  case ErrorCode::EmptyGoal:
  case ErrorCode::NoActionsDefined:
  case ErrorCode::PreconditionUnsatisfied:
    return 422;
  default:
    return 400;
  }
}

namespace {

using Handler = std::function<json(const httplib::Request &)>;

void reply(httplib::Response &res, int status, const json &body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

json error_body(ErrorCode code, const std::string &message) {
  return {{"error", to_string(code)}, {"message", message}};
}

// Wraps a handler with JSON parsing and error mapping.
httplib::Server::Handler wrap(Handler h, int ok_status = 200) {
  return [h = std::move(h), ok_status](const httplib::Request &req, httplib::Response &res) {
    try {
      reply(res, ok_status, h(req));
    } catch (const Error &e) {
      reply(res, http_status(e.code()), error_body(e.code(), e.detail()));
    } catch (const json::exception &e) {
      reply(res, 400, error_body(ErrorCode::InvalidArgument, e.what()));
    } catch (const std::exception &e) {
      reply(res, 500, {{"error", "Internal"}, {"message", e.what()}});
    }
  };
}

json body_of(const httplib::Request &req) {
  if (req.body.empty())
    return json::object();
  try {
    return json::parse(req.body);
  } catch (const json::parse_error &e) {
    throw Error(ErrorCode::SyntaxError, std::string("request body is not JSON: ") + e.what());
  }
}

json action_json(const Session &s, const HighLevelAction &a) {
  json j = a;
  json rows = json::array();
  for (const auto &c : describe(a))
    rows.push_back({{"section", c.section}, {"literal", c.literal.str()}, {"english", c.english}});
  j["conditions"] = rows;
  json motion = nullptr;
  if (auto it = s.domain.low_level.find(a.low_level); it != s.domain.low_level.end())
    motion = it->second;
  j["motion"] = motion;
  return j;
}

ActionEdit parse_edit(const json &b) {
  const std::string op = b.at("op").get<std::string>();
  if (op == "set_type")
    return edits::SetParamType{b.at("param").get<std::string>(), b.at("type").get<TypeTag>()};
  if (op == "add_pre")
    return edits::AddPre{b.at("literal").get<Literal>()};
  if (op == "remove_pre")
    return edits::RemovePre{b.at("literal").get<Literal>()};
  if (op == "add_eff_plus")
    return edits::AddEffPlus{b.at("atom").get<Atom>()};
  if (op == "add_eff_minus")
    return edits::AddEffMinus{b.at("atom").get<Atom>()};
  if (op == "remove_eff")
    return edits::RemoveEff{b.at("atom").get<Atom>()};
  if (op == "rename")
    return edits::Rename{b.at("name").get<std::string>()};
  throw Error(ErrorCode::InvalidArgument, "unknown edit op '" + op + "'");
}

SearchConfig search_config(const json &b) {
  SearchConfig c;
  const std::string mode = b.value("mode", "ff");
  if (mode == "optimal")
    c.mode = SearchMode::Optimal;
  else if (mode != "ff")
    throw Error(ErrorCode::InvalidArgument, "mode must be 'ff' or 'optimal'");
  c.node_limit = b.value("node_limit", c.node_limit);
  c.time_limit_ms = b.value("time_limit_ms", c.time_limit_ms);
  if (c.node_limit == 0 || c.time_limit_ms <= 0)
    throw Error(ErrorCode::InvalidArgument, "limits must be positive");
  return c;
}

int plan_id(const httplib::Request &req) {
  try {
    return std::stoi(req.matches[1]);
  } catch (const std::exception &) {
    throw Error(ErrorCode::InvalidArgument, "plan id must be a number");
  }
}

} // namespace

void install_routes(httplib::Server &server, SessionService &svc) {
  server.Get("/api/session", wrap([&svc](const httplib::Request &) {
               json j = svc.read([](const Session &s) { return session_to_json(s); });
               j["demo_active"] = svc.demo_active();
               return j;
             }));

  server.Get("/api/actions", wrap([&svc](const httplib::Request &) {
               return svc.read([](const Session &s) {
                 json out = json::array();
                 for (const auto &[n, a] : s.domain.actions)
                   out.push_back(action_json(s, a));
                 return out;
               });
             }));

  server.Post("/api/actions", wrap(
                                  [&svc](const httplib::Request &req) {
                                    const json b = body_of(req);
                                    const auto a = b.get<HighLevelAction>();
                                    std::optional<LowLevelAction> motion;
                                    if (b.contains("motion") && !b["motion"].is_null())
                                      motion = b["motion"].get<LowLevelAction>();
                                    return svc.mutate([&](Session &s) {
                                      add_action(s, a, motion);
                                      return action_json(s, s.domain.actions.at(a.name));
                                    });
                                  },
                                  201));

  server.Post(R"(/api/actions/([^/]+)/copy)",
              wrap(
                  [&svc](const httplib::Request &req) {
                    const std::string name = req.matches[1];
                    const std::string new_name = body_of(req).at("new_name").get<std::string>();
                    return svc.mutate([&](Session &s) {
                      return action_json(s, copy_action(s, name, new_name));
                    });
                  },
                  201));

  server.Patch(R"(/api/actions/([^/]+))", wrap([&svc](const httplib::Request &req) {
                 const std::string name = req.matches[1];
                 const ActionEdit edit = parse_edit(body_of(req));
                 return svc.mutate(
                     [&](Session &s) { return action_json(s, modify_action(s, name, edit)); });
               }));

  server.Post("/api/demo/begin", wrap([&svc](const httplib::Request &req) {
                const json b = body_of(req);
                svc.begin_demo(b.value("mode", json("full")).get<PerceptionMode>());
                return json{{"demo_active", true}, {"scene", *svc.demo_scene()}};
              }));

  server.Post("/api/demo/keyframe", wrap([&svc](const httplib::Request &req) {
                const json b = body_of(req);
                const Keyframe k = svc.record_keyframe(b.at("arm").get<Arm>(),
                                                       b.at("pose").get<Pose>(),
                                                       b.at("gripper").get<Gripper>());
                return json{{"keyframe", k}, {"scene", *svc.demo_scene()}};
              }));

  server.Post("/api/demo/finish", wrap(
                                      [&svc](const httplib::Request &req) {
                                        const std::string name =
                                            body_of(req).at("name").get<std::string>();
                                        const HighLevelAction a = svc.finish_demo(name);
                                        return svc.read(
                                            [&](const Session &s) { return action_json(s, a); });
                                      },
                                      201));

  server.Get("/api/scene", wrap([&svc](const httplib::Request &) {
               if (auto demo = svc.demo_scene())
                 return json{{"scene", *demo}, {"demo_active", true}};
               return svc.read([](const Session &s) {
                 return json{{"scene", s.scene},
                             {"perceived", perceive(s.scene, s.config, s.domain.vocab)},
                             {"demo_active", false}};
               });
             }));

  server.Post("/api/scene", wrap([&svc](const httplib::Request &req) {
                const json b = body_of(req);
                return svc.mutate([&](Session &s) {
                  Scene scene;
                  if (b.contains("randomize")) {
                    const json &r = b["randomize"];
                    scene = random_scene(r.value("seed", uint64_t{0}), r.value("objects", 3),
                                         r.value("positions", 4), r.value("mixed", false),
                                         s.config);
                  } else {
                    scene = b.at("scene").get<Scene>();
                  }
                  scene.validate(s.domain.vocab.types, s.config);
                  s.scene = scene;
                  s.model.reset();
                  s.events.push_back("scene replaced");
                  return json{{"scene", s.scene}};
                });
              }));

  server.Get("/api/problems", wrap([&svc](const httplib::Request &) {
               return svc.read([](const Session &s) {
                 json out = json::array();
                 for (const auto &[n, p] : s.problems)
                   out.push_back(p);
                 return out;
               });
             }));

  server.Post("/api/problems",
              wrap(
                  [&svc](const httplib::Request &req) {
                    const json b = body_of(req);
                    const std::string name = b.at("name").get<std::string>();
                    return svc.mutate([&](Session &s) {
                      if (b.value("from_model", false)) {
                        create_problem_from_model(s, name);
                      } else {
                        const Scene scene = b.contains("scene") ? b["scene"].get<Scene>() : s.scene;
                        create_problem_from_scene(
                            s, name, scene, b.value("corrections", json::object()).get<StateCorrections>(),
                            b.value("mode", json("full")).get<PerceptionMode>());
                      }
                      if (b.contains("goal"))
                        set_goal(s, name, b["goal"].get<std::set<Literal>>());
                      return json(s.problems.at(name));
                    });
                  },
                  201));

  server.Post(R"(/api/problems/([^/]+)/solve)", [&svc](const httplib::Request &req,
                                                      httplib::Response &res) {
    const std::string name = req.matches[1];
    try {
      const PlanRecord rec = svc.solve(name, search_config(body_of(req)));
      reply(res, 200, rec);
    } catch (const Error &e) {
      json body = error_body(e.code(), e.detail());
      if (e.code() == ErrorCode::NoSolution || e.code() == ErrorCode::ResourceLimit) {
        try {
          body["debug"] =
              svc.read([&](const Session &s) { return json(debug_summary(s, name, e.detail())); });
        } catch (const Error &) {
        }
      }
      reply(res, http_status(e.code()), body);
    } catch (const json::exception &e) {
      reply(res, 400, error_body(ErrorCode::InvalidArgument, e.what()));
    }
  });

  server.Get(R"(/api/plans/(\d+))", wrap([&svc](const httplib::Request &req) {
               const int id = plan_id(req);
               return svc.read([&](const Session &s) {
                 auto it = s.plans.find(id);
                 if (it == s.plans.end())
                   throw Error(ErrorCode::NotFound, "no plan with id " + std::to_string(id));
                 json j = it->second;
                 if (s.execution && s.execution->plan_id == id)
                   j["execution"] = {{"next_step", s.execution->next_step},
                                     {"finished", s.execution->finished},
                                     {"log", s.execution->log},
                                     {"transcript", s.execution->log.transcript()}};
                 return j;
               });
             }));

  server.Post(R"(/api/plans/(\d+)/execute/step)", wrap([&svc](const httplib::Request &req) {
                const int id = plan_id(req);
                const json b = body_of(req);
                const std::string v = b.value("verdict", "ok");
                if (v != "ok" && v != "rejected")
                  throw Error(ErrorCode::InvalidArgument, "verdict must be 'ok' or 'rejected'");
                const Verdict verdict = v == "ok" ? Verdict::Ok : Verdict::Rejected;
                return svc.mutate([&](Session &s) {
                  const LogEntry e = execute_next_step(
                      s, id, [verdict](const GroundAction &, const Scene &) { return verdict; });
                  const Problem &p = s.problems.at(s.plans.at(id).problem);
                  return json{{"entry", e},
                              {"finished", s.execution->finished},
                              {"next_step", s.execution->next_step},
                              {"goal_reached", satisfies(s.model->atoms, p.goal)},
                              {"scene", s.scene}};
                });
              }));

  server.Get(R"(/api/debug/([^/]+))", wrap([&svc](const httplib::Request &req) {
               const std::string name = req.matches[1];
               return svc.read([&](const Session &s) { return json(debug_summary(s, name)); });
             }));

  server.Get("/api/save", wrap([&svc](const httplib::Request &req) {
               if (req.has_param("path")) {
                 const std::string path = req.get_param_value("path");
                 svc.read([&](const Session &s) {
                   save_session(s, path);
                   return 0;
                 });
                 return json{{"saved", path}};
               }
               return svc.read([](const Session &s) { return session_to_json(s); });
             }));

  server.Post("/api/save", wrap([&svc](const httplib::Request &req) {
                const std::string path = body_of(req).at("path").get<std::string>();
                svc.read([&](const Session &s) {
                  save_session(s, path);
                  return 0;
                });
                return json{{"saved", path}};
              }));

  auto load = [&svc](const json &source) {
    Session s = source.contains("session") ? session_from_json(source["session"])
                                           : load_session(source.at("path").get<std::string>());
    svc.replace(std::move(s));
    return json{{"loaded", true}};
  };
  server.Get("/api/load", wrap([load](const httplib::Request &req) {
               if (!req.has_param("path"))
                 throw Error(ErrorCode::InvalidArgument, "missing ?path=");
               return load(json{{"path", req.get_param_value("path")}});
             }));
  server.Post("/api/load", wrap([load](const httplib::Request &req) { return load(body_of(req)); }));
}

} // namespace irp
