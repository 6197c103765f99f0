// affinelag: batch front end for problem files.
//
//   affinelag <subcommand> [file] [--ring Z|Q] [--json] [--witness] [--all-basis]
//
// Exit codes: 0 success, 1 usage, 2 parse error, 3 validation error, 4 task error.

#include <affinelag/report.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace affinelag;

constexpr int kUsage = 1;
constexpr int kParse = 2;
constexpr int kValidation = 3;
constexpr int kTask = 4;

struct Flags {
  std::string file;
  std::string ring;
  std::string output;
  bool json = false;
  bool witness = false;
  bool all_basis = false;
  bool hopf = false;
  bool list = false;
};

void print(const Json& report, bool json) {
  if (json)
    std::cout << format_json(report) << '\n';
  else
    std::cout << render_text(report);
}

int run(const std::string& command, const Flags& flags) {
  if (command == "generate") {
    if (flags.list) {
      for (const auto& name : model_names()) std::cout << name << '\n';
      return 0;
    }
    if (flags.file.empty()) {
      std::cerr << "affinelag: generate needs a model name (see --list)\n";
      return kUsage;
    }
    std::string text = format_json(serialize_problem(generate_problem(flags.file))) + "\n";
    if (flags.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(flags.output, std::ios::binary);
      if (!out || !(out << text)) {
        std::cerr << "affinelag: cannot write " << flags.output << '\n';
        return kTask;
      }
    }
    return 0;
  }

  ProblemFile problem = [&] {
    if (command == "d2" && flags.hopf) return generate_problem("hopf");
    return read_problem(flags.file);
  }();
  RunOptions options;
  if (flags.ring == "Z") options.ring = Ring::Z;
  if (flags.ring == "Q") options.ring = Ring::Q;
  options.witness = flags.witness;
  options.all_basis = flags.all_basis;
  print(run_command(command, problem, options), flags.json);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twisted cohomology and Lagrangian realizability for integral affine data", "affinelag"};
  app.require_subcommand(1);
  Flags flags;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"validate", "Check a problem file and summarise it"},
      {"cohomology", "Twisted cohomology groups of the linear system"},
      {"radiance", "Radiance class, radiance test and strong integrality"},
      {"obstruction", "Obstruction class of a Chern class, or of every basis class"},
      {"realizable", "Subgroup of realizable Chern classes"},
      {"d2", "Second differential on the q = 1 row"},
      {"generate", "Write a named example problem to stdout"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    if (name == "generate") {
      sub->add_option("model", flags.file, "Model name");
      sub->add_option("-o,--output", flags.output, "Write to a file instead of stdout");
      sub->add_flag("--list", flags.list, "List model names");
      continue;
    }
    auto* file = sub->add_option("file", flags.file, "Problem file (JSON)");
    sub->add_option("--ring", flags.ring, "Coefficient ring for cohomology tasks")->check(CLI::IsMember({"Z", "Q"}));
    sub->add_flag("--json", flags.json, "Machine-readable output");
    sub->add_flag("--witness", flags.witness, "Include representatives and witnesses");
    sub->add_flag("--all-basis", flags.all_basis, "Run obstruction on every basis Chern class");
    if (name == "d2") {
      auto* hopf = sub->add_flag("--hopf", flags.hopf, "Use the built-in Hopf model");
      hopf->excludes(file);
    } else {
      file->required();
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  if (command == "d2" && !flags.hopf && flags.file.empty()) {
    std::cerr << "affinelag: d2 needs a file or --hopf\n";
    return kUsage;
  }
  try {
    return run(command, flags);
  } catch (const ProblemError& e) {
    std::cerr << "affinelag: " << e.what() << '\n';
    return e.kind() == ProblemError::Kind::Semantic ? kValidation : kParse;
  } catch (const TaskError& e) {
    std::cerr << "affinelag: task error: " << e.what() << '\n';
    return kTask;
  } catch (const std::invalid_argument& e) {
    std::cerr << "affinelag: task error: " << e.what() << '\n';
    return kTask;
  }
}
