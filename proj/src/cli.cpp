#include "planim/cli.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "planim/gif.hpp"
#include "planim/pddl.hpp"
#include "planim/plan.hpp"
#include "planim/profile.hpp"
#include "planim/scene.hpp"
#include "planim/sexpr.hpp"
#include "planim/vfg.hpp"

namespace planim::cli {

namespace fs = std::filesystem;

namespace {

/// Input failure already tied to a file name.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename F>
auto parse_file(const fs::path& path, F&& parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw InputError(path.string() + ":" + e.what());
  }
}

struct Inputs {
  pddl::DomainAst domain;
  pddl::ProblemAst problem;
};

Inputs load_task(const fs::path& domain_path, const fs::path& problem_path) {
  Inputs in;
  in.domain = parse_file(domain_path, [](const std::string& t) { return pddl::parse_domain(t); });
  in.problem = parse_file(problem_path,
                          [&](const std::string& t) { return pddl::parse_problem(t, in.domain); });
  return in;
}

void report_plan_error(const plan::PlanError& e, std::size_t plan_length, std::ostream& err) {
  err << "invalid plan: action " << e.step() + 1 << " of " << plan_length << " " << e.action();
  if (e.kind() == plan::PlanError::Kind::Precondition) {
    err << ": missing preconditions:";
    for (const auto& m : e.missing()) err << ' ' << m;
    err << '\n';
  } else {
    err << ": " << e.what() << '\n';
  }
}

}  // namespace

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return ss.str();
}

void write_file_atomic(const fs::path& path, std::string_view bytes) {
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  const fs::path tmp =
      dir / ("." + path.filename().string() + ".tmp-" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("cannot write " + path.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot write " + path.string() + ": " + ec.message());
  }
}

int run_render(const RenderOptions& o, std::ostream&, std::ostream& err) {
  try {
    Inputs in = load_task(o.domain, o.problem);
    const profile::AnimationProfile prof = parse_file(
        o.animation, [](const std::string& t) { return profile::parse_profile(t); });
    const auto diagnostics = profile::check_profile(prof, in.domain, in.problem);
    for (const auto& d : diagnostics) err << o.animation.string() << ": " << d.to_string() << '\n';
    if (profile::has_errors(diagnostics)) return kInputError;

    std::string plan_text;
    fs::path plan_name = o.plan.value_or("<service plan>");
    if (o.plan) {
      plan_text = read_file(*o.plan);
    } else {
      try {
        service::SolveRequest req;
        req.domain_text = read_file(o.domain);
        req.problem_text = read_file(o.problem);
        req.endpoint = o.endpoint.empty() ? service::default_endpoint() : o.endpoint;
        req.timeout = o.timeout;
        service::SolveResponse resp = service::solve_remote(req);
        if (!resp.ok()) {
          err << "planning service reported a failure: " << resp.message << '\n';
          return kNetworkError;
        }
        for (const auto& a : resp.plan) plan_text += a + "\n";
      } catch (const service::SolveError& e) {
        err << service::solve_error_kind_name(e.kind()) << ": " << e.what() << '\n';
        return kNetworkError;
      }
    }
    pddl::PlanText plan;
    try {
      plan = pddl::parse_plan(plan_text, in.domain);
    } catch (const ParseError& e) {
      throw InputError(plan_name.string() + ":" + e.what());
    }

    plan::Trajectory trajectory;
    try {
      trajectory = plan::execute_plan(in.domain, in.problem, plan);
    } catch (const plan::PlanError& e) {
      report_plan_error(e, plan.steps.size(), err);
      return kValidationFailure;
    }

    const scene::SceneSynthesizer synth(prof, in.domain, in.problem, o.seed);
    const scene::SceneSequence seq = scene::synthesize_sequence(trajectory, synth, in.problem.goal);
    const plan::SubgoalTable report = plan::goal_report(trajectory, in.problem.goal);
    const vfg::Metadata meta{in.domain.name, in.problem.name, "planim", o.seed};
    const vfg::VfgDocument doc =
        vfg::build_document(seq, trajectory, report, meta, synth.sprite_payloads());
    const std::string vfg_bytes = vfg::serialize(doc);

    std::vector<render::Frame> frames;
    if (o.frames_dir || o.gif) frames = render::build_frames(seq, render::FrameSettings{o.fps, {}});
    std::vector<std::string> svgs;
    if (o.frames_dir) {
      for (const auto& f : frames) svgs.push_back(render::to_svg(f, doc.sprites));
    }
    std::vector<std::uint8_t> gif;
    if (o.gif) gif = render::export_gif(frames, o.fps);

    if (o.frames_dir) {
      std::error_code ec;
      fs::create_directories(*o.frames_dir, ec);
      if (ec) throw IoError("cannot create " + o.frames_dir->string() + ": " + ec.message());
      for (std::size_t i = 0; i < svgs.size(); ++i) {
        write_file_atomic(*o.frames_dir / render::frame_file_name(i), svgs[i]);
      }
    }
    if (o.gif) {
      write_file_atomic(*o.gif, std::string_view(reinterpret_cast<const char*>(gif.data()),
                                                 gif.size()));
    }
    write_file_atomic(o.out, vfg_bytes);
    return kOk;
  } catch (const InputError& e) {
    err << e.what() << '\n';
  } catch (const IoError& e) {
    err << e.what() << '\n';
  } catch (const scene::SceneError& e) {
    err << "scene error";
    if (e.state_index()) err << " in state " << *e.state_index();
    err << ": " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kInputError;
}

int run_validate(const ValidateOptions& o, std::ostream& out, std::ostream& err) {
  try {
    Inputs in = load_task(o.domain, o.problem);
    const pddl::PlanText plan =
        parse_file(o.plan, [&](const std::string& t) { return pddl::parse_plan(t, in.domain); });
    try {
      const plan::Trajectory t = plan::execute_plan(in.domain, in.problem, plan);
      out << "valid, " << t.states.size() << " states\n";
      return kOk;
    } catch (const plan::PlanError& e) {
      report_plan_error(e, plan.steps.size(), err);
      return kValidationFailure;
    }
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kInputError;
  }
}

int run_check_profile(const CheckProfileOptions& o, std::ostream& out, std::ostream& err) {
  try {
    Inputs in = load_task(o.domain, o.problem);
    const profile::AnimationProfile prof = parse_file(
        o.animation, [](const std::string& t) { return profile::parse_profile(t); });
    const auto diagnostics = profile::check_profile(prof, in.domain, in.problem);
    for (const auto& d : diagnostics) out << d.to_string() << '\n';
    return profile::has_errors(diagnostics) ? kValidationFailure : kOk;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kInputError;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compile PDDL plans and animation profiles into visual scenes.", "planim"};
  app.require_subcommand(1);

  RenderOptions r;
  std::string plan_path, frames_dir, gif_path;
  int timeout_seconds = static_cast<int>(service::kDefaultTimeout.count());
  auto* render_cmd = app.add_subcommand("render", "Build a VFG document, and optionally frames.");
  render_cmd->add_option("--domain", r.domain, "PDDL domain file")->required();
  render_cmd->add_option("--problem", r.problem, "PDDL problem file")->required();
  render_cmd->add_option("--animation", r.animation, "animation profile")->required();
  auto* plan_opt = render_cmd->add_option("--plan", plan_path, "plan file");
  auto* solve_opt = render_cmd->add_flag("--solve", r.solve, "ask the planning service for a plan");
  plan_opt->excludes(solve_opt);
  render_cmd->add_option("--endpoint", r.endpoint, "planning service URL")->needs(solve_opt);
  render_cmd->add_option("--timeout", timeout_seconds, "service timeout in seconds")
      ->check(CLI::PositiveNumber)
      ->needs(solve_opt);
  render_cmd->add_option("--out", r.out, "VFG output file")->required();
  render_cmd->add_option("--frames", frames_dir, "directory for SVG frames");
  render_cmd->add_option("--gif", gif_path, "animated GIF output file");
  render_cmd->add_option("--fps", r.fps, "frames per second")->check(CLI::Range(1, 1000));
  render_cmd->add_option("--seed", r.seed, "seed for random colors");

  ValidateOptions v;
  auto* validate_cmd = app.add_subcommand("validate", "Check a plan against a problem.");
  validate_cmd->add_option("--domain", v.domain, "PDDL domain file")->required();
  validate_cmd->add_option("--problem", v.problem, "PDDL problem file")->required();
  validate_cmd->add_option("--plan", v.plan, "plan file")->required();

  CheckProfileOptions c;
  auto* check_cmd = app.add_subcommand("check-profile", "Report animation profile diagnostics.");
  check_cmd->add_option("--domain", c.domain, "PDDL domain file")->required();
  check_cmd->add_option("--problem", c.problem, "PDDL problem file")->required();
  check_cmd->add_option("--animation", c.animation, "animation profile")->required();

  auto usage = [&](const std::string& message, const CLI::App* cmd) {
    err << message << "\n\n" << (cmd ? cmd->help() : app.help());
    return kInputError;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    const CLI::App* failed = nullptr;
    for (const CLI::App* cmd : {render_cmd, validate_cmd, check_cmd}) {
      if (cmd->parsed()) failed = cmd;
    }
    return usage(e.what(), failed);
  }

  if (render_cmd->parsed()) {
    if (plan_path.empty() && !r.solve) {
      return usage("exactly one of --plan or --solve is required", render_cmd);
    }
    if (!plan_path.empty()) r.plan = plan_path;
    if (!frames_dir.empty()) r.frames_dir = frames_dir;
    if (!gif_path.empty()) r.gif = gif_path;
    r.timeout = std::chrono::seconds(timeout_seconds);
    return run_render(r, out, err);
  }
  if (validate_cmd->parsed()) return run_validate(v, out, err);
  return run_check_profile(c, out, err);
}

}  // namespace planim::cli
