#include "swt/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace swt {

Json Json::str(std::string v) {
  Json j(Type::kString);
  j.s_ = std::move(v);
  return j;
}

Json Json::num(double v) {
  if (!std::isfinite(v)) return Json(Type::kNull);
  Json j(Type::kDouble);
  j.d_ = v;
  return j;
}

Json Json::integer(std::int64_t v) {
  Json j(Type::kInt);
  j.i_ = v;
  return j;
}

Json Json::boolean(bool v) {
  Json j(Type::kBool);
  j.b_ = v;
  return j;
}

Json& Json::set(const std::string& key, Json v) {
  if (type_ != Type::kObject) throw std::logic_error("Json::set on non-object");
  fields_.emplace_back(key, std::move(v));
  return *this;
}

Json& Json::push(Json v) {
  if (type_ != Type::kArray) throw std::logic_error("Json::push on non-array");
  items_.push_back(std::move(v));
  return *this;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

}  // namespace

void Json::write(std::string& out, int indent, int depth) const {
  const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  switch (type_) {
    case Type::kNull: out += "null"; break;
    case Type::kBool: out += b_ ? "true" : "false"; break;
    case Type::kInt: out += std::to_string(i_); break;
    case Type::kDouble: out += format_double(d_); break;
    case Type::kString: write_escaped(out, s_); break;
    case Type::kArray: {
      if (items_.empty()) {
        out += "[]";
        break;
      }
      out += "[\n";
      for (std::size_t i = 0; i < items_.size(); ++i) {
        out += pad_in;
        items_[i].write(out, indent, depth + 1);
        if (i + 1 < items_.size()) out += ',';
        out += '\n';
      }
      out += pad + "]";
      break;
    }
    case Type::kObject: {
      if (fields_.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      for (std::size_t i = 0; i < fields_.size(); ++i) {
        out += pad_in;
        write_escaped(out, fields_[i].first);
        out += ": ";
        fields_[i].second.write(out, indent, depth + 1);
        if (i + 1 < fields_.size()) out += ',';
        out += '\n';
      }
      out += pad + "}";
      break;
    }
  }
}

std::string Json::dump(int indent) const {
  std::string out;
  write(out, indent, 0);
  out += '\n';
  return out;
}

void Csv::row(const std::vector<double>& values) {
  std::string r;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) r += ',';
    r += format_double(values[i]);
  }
  rows_.push_back(std::move(r));
}

void Csv::raw_row(const std::vector<std::string>& cells) {
  std::string r;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) r += ',';
    r += cells[i];
  }
  rows_.push_back(std::move(r));
}

std::string Csv::dump() const {
  std::string out;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i) out += ',';
    out += header_[i];
  }
  out += '\n';
  for (const auto& r : rows_) {
    out += r;
    out += '\n';
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write file '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void ensure_dir(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw std::runtime_error("cannot create directory '" + path + "': " + ec.message());
}

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("SWTK_LOG");
    if (!env) return LogLevel::kInfo;
    const std::string v(env);
    if (v == "debug") return LogLevel::kDebug;
    if (v == "info") return LogLevel::kInfo;
    if (v == "warn") return LogLevel::kWarn;
    if (v == "error") return LogLevel::kError;
    if (v == "off") return LogLevel::kOff;
    return LogLevel::kInfo;
  }();
  return level;
}

void log(LogLevel level, const std::string& msg) {
  if (level < log_level()) return;
  static const char* names[] = {"debug", "info", "warn", "error"};
  const int idx = static_cast<int>(level);
  if (idx < 0 || idx > 3) return;
  std::cerr << "[" << names[idx] << "] " << msg << "\n";
}

}  // namespace swt
