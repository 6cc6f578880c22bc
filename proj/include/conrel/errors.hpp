#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace conrel {

// Every failure names the module that raised it; the CLI prints
// "<module>: <detail>" and exits nonzero.
class error : public std::runtime_error {
 public:
  error(std::string module, const std::string& detail)
      : std::runtime_error(module + ": " + detail), module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

class config_error : public error {
 public:
  explicit config_error(const std::string& detail) : error("config", detail) {}
};

class io_error : public error {
 public:
  explicit io_error(const std::string& detail) : error("io", detail) {}
};

class encoding_error : public error {
 public:
  encoding_error(const std::string& detail, std::size_t byte_offset)
      : error("corpus", detail), offset_(byte_offset) {}

  std::size_t byte_offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class csv_error : public error {
 public:
  explicit csv_error(const std::string& detail) : error("csv", detail) {}
};

class integrity_error : public error {
 public:
  explicit integrity_error(const std::string& detail) : error("graph", detail) {}
};

}  // namespace conrel
