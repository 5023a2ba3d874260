#include "wdrd/errors.hpp"

#include <sstream>

namespace wdrd {

namespace {

std::string join_violations(const std::vector<std::string>& violations) {
  std::ostringstream out;
  out << "invalid family parameters";
  for (std::size_t k = 0; k < violations.size(); ++k) {
    out << (k == 0 ? ": " : "; ") << violations[k];
  }
  return out.str();
}

}  // namespace

UnreachableError::UnreachableError(std::size_t from, std::size_t to)
    : Error("digraph is not strongly connected: vertex " +
            std::to_string(to) + " is unreachable from vertex " +
            std::to_string(from)),
      from_(from),
      to_(to) {}

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

ParseError::ParseError(const std::string& message, std::string input,
                       std::size_t position)
    : Error(message + " at position " + std::to_string(position) + " in \"" +
            input + "\""),
      input_(std::move(input)),
      position_(position) {}

}  // namespace wdrd
