#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace geodock {

/// A call violated one of its preconditions.
class ContractError : public std::logic_error {
 public:
  explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

/// Malformed input text. Carries a 1-based line number when one is known.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A parsed value lies outside its documented range.
class RangeError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// A ligand failed its structural invariants; all violations are listed.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& ligand_name, std::vector<std::string> violations)
      : std::runtime_error(compose(ligand_name, violations)),
        ligand_name_(ligand_name),
        violations_(std::move(violations)) {}

  const std::string& ligand_name() const noexcept { return ligand_name_; }
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  static std::string compose(const std::string& name, const std::vector<std::string>& v) {
    std::string msg = "ligand '" + name + "' is invalid:";
    for (const auto& item : v) msg += " [" + item + "]";
    return msg;
  }

  std::string ligand_name_;
  std::vector<std::string> violations_;
};

/// A rotamer bond does not split the molecule (ring bond).
class InvalidRotamerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The two bond atoms coincide, so the rotation axis is undefined.
class DegenerateAxisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace geodock
