#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace armchair {

// Minimal streaming JSON writer: deterministic key order (insertion order),
// floats printed with 17 significant digits so repeated runs are
// byte-identical and values round-trip exactly.
class JsonWriter {
 public:
  explicit JsonWriter(std::ostream& os) : os_(os) {}

  JsonWriter& begin_object() {
    comma();
    os_ << '{';
    fresh_ = true;
    stack_.push_back('}');
    return *this;
  }
  JsonWriter& end_object() { return close(); }
  JsonWriter& begin_array() {
    comma();
    os_ << '[';
    fresh_ = true;
    stack_.push_back(']');
    return *this;
  }
  JsonWriter& end_array() { return close(); }

  JsonWriter& key(const std::string& k) {
    comma();
    write_string(k);
    os_ << ':';
    fresh_ = true;  // suppress the comma before the value
    return *this;
  }

  JsonWriter& value(double v) {
    comma();
    if (std::isfinite(v)) {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      os_ << buf;
    } else {
      os_ << "null";
    }
    return *this;
  }
  JsonWriter& value(int v) {
    comma();
    os_ << v;
    return *this;
  }
  JsonWriter& value(bool v) {
    comma();
    os_ << (v ? "true" : "false");
    return *this;
  }
  JsonWriter& value(const std::string& v) {
    comma();
    write_string(v);
    return *this;
  }
  JsonWriter& value(const char* v) { return value(std::string(v)); }

  template <typename T>
  JsonWriter& kv(const std::string& k, T v) {
    key(k);
    return value(v);
  }

 private:
  JsonWriter& close() {
    os_ << stack_.back();
    stack_.pop_back();
    fresh_ = false;
    return *this;
  }
  void comma() {
    if (!fresh_) os_ << ',';
    fresh_ = false;
  }
  void write_string(const std::string& s) {
    os_ << '"';
    for (char c : s) {
      switch (c) {
        case '"': os_ << "\\\""; break;
        case '\\': os_ << "\\\\"; break;
        case '\n': os_ << "\\n"; break;
        case '\t': os_ << "\\t"; break;
        case '\r': os_ << "\\r"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            os_ << buf;
          } else {
            os_ << c;
          }
      }
    }
    os_ << '"';
  }

  std::ostream& os_;
  std::vector<char> stack_;
  bool fresh_ = true;
};

}  // namespace armchair
