#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace seqsum {

// Input-side failures (bad files, bad flags). The CLI maps these to exit code 1.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class EmptyDatasetError : public std::runtime_error {
 public:
  explicit EmptyDatasetError(const std::string& message) : std::runtime_error(message) {}
};

class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& message) : std::runtime_error(message) {}
};

// A structurally invalid summary fed to layout/render/eval (cycle in a tree, dangling edge, ...).
// Still an input error from the CLI's point of view.
class StructuralError : public std::runtime_error {
 public:
  explicit StructuralError(const std::string& message) : std::runtime_error(message) {}
};

// Broken internal contract (e.g. clusters stop partitioning the dataset mid-mining).
// The CLI maps these to exit code 2.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& message) : std::logic_error(message) {}
};

}  // namespace seqsum
