#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hyperstack {

// Domain-level failure: the input is well formed but violates a precondition
// of the requested operation. `code()` is a stable kebab-case tag.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// Raised by the JSON layer when a document cannot be read as the expected
// schema at all.
class MalformedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A predicate answer together with the human-readable reasons it failed.
struct Verdict {
  bool ok = true;
  std::vector<std::string> reasons;

  void fail(std::string reason) {
    ok = false;
    reasons.push_back(std::move(reason));
  }
  explicit operator bool() const noexcept { return ok; }
};

}  // namespace hyperstack
