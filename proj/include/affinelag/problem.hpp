#pragma once

#include <affinelag/obstruction.hpp>

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace affinelag {

using Json = nlohmann::ordered_json;

/// Problem-file failure. Syntax and Format errors come from malformed JSON or
/// a wrong document shape; Semantic errors from well-formed input that fails
/// validation (unknown vertex, non-unimodular matrix, cocycle violation).
class ProblemError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Format, Semantic };
  ProblemError(Kind kind, std::string location, const std::string& message);
  Kind kind() const { return kind_; }
  const std::string& location() const { return location_; }
  const std::string& detail() const { return detail_; }

 private:
  Kind kind_;
  std::string location_;
  std::string detail_;
};

/// Raised when a task cannot run on the given input.
class TaskError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Task {
  std::string name;
  Json options = Json::object();
};

struct ProblemFile {
  std::shared_ptr<const SimplicialComplex> complex;
  IntegralAffineData data;
  /// Chern 2-cocycle in the dual of data.linear(), if the file has one.
  std::optional<TwistedCochain> chern;
  std::vector<Task> tasks;
};

ProblemFile parse_problem(const std::string& text);
ProblemFile read_problem(const std::string& path);

/// Inverse of parse_problem for engine data: facets, non-identity transports,
/// nonzero translations and (if present) the Chern cocycle.
Json serialize_problem(const ProblemFile& problem);

/// Facets (maximal simplices) of a complex, in dimension then lexicographic order.
std::vector<Simplex> facets(const SimplicialComplex& complex);

/// Indented JSON with arrays of scalars (and matrices of scalars) kept on one line.
std::string format_json(const Json& j);

/// Nonzero entries of a cochain as [{"simplex": [...], "value": [...]}].
Json cochain_to_json(const TwistedCochain& c);

}  // namespace affinelag
