#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace swt {

// Minimal JSON writer with insertion-ordered objects and fixed float
// formatting (%.17g), so equal inputs serialize byte-identically.
class Json {
 public:
  Json() : type_(Type::kNull) {}

  static Json object() { return Json(Type::kObject); }
  static Json array() { return Json(Type::kArray); }
  static Json str(std::string v);
  static Json num(double v);
  static Json integer(std::int64_t v);
  static Json boolean(bool v);

  Json& set(const std::string& key, Json v);
  Json& push(Json v);

  std::string dump(int indent = 2) const;

 private:
  enum class Type { kNull, kBool, kInt, kDouble, kString, kArray, kObject };
  explicit Json(Type t) : type_(t) {}
  void write(std::string& out, int indent, int depth) const;

  Type type_;
  bool b_ = false;
  std::int64_t i_ = 0;
  double d_ = 0.0;
  std::string s_;
  std::vector<Json> items_;
  std::vector<std::pair<std::string, Json>> fields_;
};

std::string format_double(double v);  // %.17g

// Simple CSV emitter; numeric cells use format_double.
class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : header_(std::move(header)) {}
  void row(const std::vector<double>& values);
  void raw_row(const std::vector<std::string>& cells);
  std::string dump() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::string> rows_;
};

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);
void ensure_dir(const std::string& path);

enum class LogLevel { kDebug = 0, kInfo = 1, kWarn = 2, kError = 3, kOff = 4 };
LogLevel log_level();  // from SWTK_LOG (debug|info|warn|error|off), default info
void log(LogLevel level, const std::string& msg);

}  // namespace swt
