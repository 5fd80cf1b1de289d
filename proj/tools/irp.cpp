// irp: command-line front end for the workbench.

#include "irp/benchmark.hpp"
#include "irp/error.hpp"
#include "irp/json_io.hpp"
#include "irp/pddl.hpp"
#include "irp/planner.hpp"
#include "irp/rest.hpp"
#include "irp/service.hpp"
#include "irp/session.hpp"

#include <CLI11.hpp>
#include <httplib.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace irp;

constexpr int kExitNoSolution = 2;
constexpr int kExitInvalid = 3;

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::NotFound, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error(ErrorCode::InvalidArgument, "cannot write '" + path.string() + "'");
  out << text;
}

int cmd_serve(int port, const std::string &host, const std::string &session_path) {
  Session s;
  if (!session_path.empty())
    s = load_session(session_path);
  s.config = WorkbenchConfig::from_environment();
  SessionService svc(std::move(s));
  httplib::Server server;
  install_routes(server, svc);
  std::cout << "listening on http://" << host << ":" << port << std::endl;
  if (!server.listen(host, port)) {
    std::cerr << "cannot listen on " << host << ":" << port << "\n";
    return 1;
  }
  return 0;
}

int cmd_bench(const std::vector<int> &tasks, bool optimal, bool as_json) {
  bench::Options opts;
  opts.mode = optimal ? SearchMode::Optimal : SearchMode::FF;
  std::vector<bench::Report> reports;
  if (tasks.empty()) {
    reports = bench::run_suite(opts);
  } else {
    for (int t : tasks)
      reports.push_back(bench::run_benchmark(t, opts));
  }
  bool ok = true;
  json all = json::array();
  for (const auto &r : reports) {
    ok = ok && r.ok;
    if (as_json) {
      all.push_back(bench::to_json(r));
      continue;
    }
    const auto opt = r.optimal_length();
    std::cout << "Task " << r.task << ": " << r.title << "\n"
              << "  status: " << (r.ok ? "ok" : "FAILED at " + r.stage) << "\n";
    if (!r.error.empty())
      std::cout << "  error: " << r.error << "\n";
    for (const auto &p : r.phases) {
      std::cout << "  " << p.problem << ":\n";
      for (const auto &line : p.plan)
        std::cout << "    " << line << "\n";
    }
    std::cout << "  plan length: " << r.plan_length()
              << ", optimal: " << (opt ? std::to_string(*opt) : "?")
              << ", goal reached: " << (r.goal_reached() ? "yes" : "no")
              << ", time: " << static_cast<long>(r.runtime_ms) << " ms\n";
  }
  if (as_json)
    std::cout << all.dump(2) << "\n";
  return ok ? 0 : 1;
}

int cmd_plan(const std::string &domain_path, const std::string &problem_path, bool optimal,
             bool as_json) {
  const PddlDomain d = parse_domain(read_file(domain_path));
  const PddlProblem p = parse_problem(read_file(problem_path), d);
  const PlanningTask task = ground_task(d, p);
  SearchConfig cfg;
  cfg.mode = optimal ? SearchMode::Optimal : SearchMode::FF;
  const Plan result = plan(task, cfg);
  const PlanValidation v = validate_plan(task, result);
  if (!v.valid) {
    std::cerr << "invalid plan: " << v.diagnostic << "\n";
    return kExitInvalid;
  }
  if (as_json) {
    std::cout << json(result).dump(2) << "\n";
  } else {
    for (const auto &line : result.render())
      std::cout << line << "\n";
  }
  return 0;
}

int cmd_export(const std::string &session_path, const std::string &out_dir) {
  const Session s = load_session(session_path);
  std::filesystem::create_directories(out_dir);
  const PddlDomain d = s.domain.to_pddl();
  const auto domain_file = std::filesystem::path(out_dir) / (d.name + ".pddl");
  write_file(domain_file, emit_domain(d));
  std::cout << domain_file.string() << "\n";
  for (const auto &[name, p] : s.problems) {
    const auto file = std::filesystem::path(out_dir) / ("problem_" + name + ".pddl");
    write_file(file, emit_problem(p.to_pddl(d.name)));
    std::cout << file.string() << "\n";
  }
  return 0;
}

int cmd_demo(const std::string &script_path, const std::string &out_path) {
  const json j = json::parse(read_file(script_path));
  const DemoScript script = j.get<DemoScript>();
  const Scene scene = j.contains("scene") ? j["scene"].get<Scene>()
                                          : bench::demo_scene("cube", types::cube);
  Session s;
  s.config = WorkbenchConfig::from_environment();
  const DemoResult demo = run_demo_script(script, scene, s.config, s.domain.vocab);
  const HighLevelAction &a = teach_action(s, script.name, demo);
  std::cout << "action " << a.name << "(";
  for (size_t i = 0; i < a.params.size(); ++i)
    std::cout << (i ? ", " : "") << a.params[i].name << " - " << a.params[i].type.name;
  std::cout << ")\n";
  for (const auto &row : describe(a))
    std::cout << "  " << row.section << "  " << row.english << "\n";
  std::cout << "\n" << emit_domain(s.domain.to_pddl());
  if (!out_path.empty())
    save_session(s, out_path);
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Interactive robot programming workbench"};
  app.require_subcommand(1);

  auto *serve = app.add_subcommand("serve", "Run the REST API");
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string serve_session;
  serve->add_option("--port", port, "TCP port")->check(CLI::Range(1, 65535));
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--session", serve_session, "Session file to start from");

  auto *bench_cmd = app.add_subcommand("bench", "Run benchmark tasks");
  std::vector<int> tasks;
  bool optimal = false;
  bool as_json = false;
  bench_cmd->add_option("--task", tasks, "Task number (1-6); all tasks when omitted")
      ->check(CLI::Range(1, 6));
  bench_cmd->add_flag("--optimal", optimal, "Use the optimal search mode");
  bench_cmd->add_flag("--json", as_json, "Print JSON reports");

  auto *plan_cmd = app.add_subcommand("plan", "Solve a PDDL domain and problem");
  std::string domain_path, problem_path;
  plan_cmd->add_option("--domain", domain_path, "Domain file")->required();
  plan_cmd->add_option("--problem", problem_path, "Problem file")->required();
  plan_cmd->add_flag("--optimal", optimal, "Use the optimal search mode");
  plan_cmd->add_flag("--json", as_json, "Print the plan as JSON");

  auto *export_cmd = app.add_subcommand("export", "Write a session's domain and problems as PDDL");
  std::string session_path, out_dir;
  export_cmd->add_option("--session", session_path, "Session file")->required();
  export_cmd->add_option("--out", out_dir, "Output directory")->required();

  auto *demo_cmd = app.add_subcommand("demo", "Teach an action from a scripted demonstration");
  std::string script_path, demo_out;
  demo_cmd->add_option("--script", script_path, "Demonstration script (JSON)")->required();
  demo_cmd->add_option("--out", demo_out, "Save the resulting session here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve)
      return cmd_serve(port, host, serve_session);
    if (*bench_cmd)
      return cmd_bench(tasks, optimal, as_json);
    if (*plan_cmd)
      return cmd_plan(domain_path, problem_path, optimal, as_json);
    if (*export_cmd)
      return cmd_export(session_path, out_dir);
    if (*demo_cmd)
      return cmd_demo(script_path, demo_out);
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::NoSolution ? kExitNoSolution : kExitInvalid;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return 0;
}
