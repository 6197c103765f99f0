#pragma once

#include <affinelag/problem.hpp>

#include <optional>
#include <string>
#include <vector>

namespace affinelag {

struct RunOptions {
  /// Overrides the ring of cohomology tasks.
  std::optional<Ring> ring;
  bool witness = false;
  bool all_basis = false;
};

/// Runs every task of the file named `command`, in file order, or a single
/// task with default options when the file lists none. Throws TaskError.
Json run_command(const std::string& command, const ProblemFile& problem, const RunOptions& options);

Json run_task(const Task& task, const ProblemFile& problem, const RunOptions& options);

/// Human-readable rendering of a report: one "key: value" line per scalar,
/// nested blocks indented by two spaces.
std::string render_text(const Json& report);

Json shape_json(const GroupShape& shape);
Json coordinates_json(const ClassCoordinates& c);

/// Named example problems: circle_scale1, circle_scale2, circle:<q>,
/// standard_torus<k>, y_hyperbolic, y_unipotent, z:<n1>,<n2>,..., hopf.
ProblemFile generate_problem(const std::string& name);
std::vector<std::string> model_names();

}  // namespace affinelag
