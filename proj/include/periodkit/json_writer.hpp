#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

// Streaming JSON writer with deterministic output: keys appear in insertion
// order, numbers are printed with %.17g (round-trip exact for doubles), and
// non-finite values become null. Two equal invocations produce byte-equal
// documents.
namespace periodkit::jsonw {

class Writer {
 public:
  void begin_object() {
    separate();
    out_ += '{';
    stack_.push_back({true, 0, false});
  }
  void end_object() {
    pop(true);
    newline();
    out_ += '}';
  }
  void begin_array() {
    separate();
    out_ += '[';
    stack_.push_back({false, 0, false});
  }
  void end_array() {
    pop(false);
    newline();
    out_ += ']';
  }
  void key(const std::string& k) {
    if (stack_.empty() || !stack_.back().object || stack_.back().have_key)
      throw std::logic_error("json writer: key outside an object");
    if (stack_.back().count++ > 0) out_ += ',';
    newline();
    append_string(k);
    out_ += ": ";
    stack_.back().have_key = true;
  }
  void value(double v) {
    separate();
    if (!std::isfinite(v)) {
      out_ += "null";
      return;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out_ += buf;
  }
  void value_int(long long v) {
    separate();
    out_ += std::to_string(v);
  }
  void value(bool v) {
    separate();
    out_ += v ? "true" : "false";
  }
  void value(const std::string& v) {
    separate();
    append_string(v);
  }
  void value(const char* v) { value(std::string(v)); }
  void null() {
    separate();
    out_ += "null";
  }
  const std::string& str() const {
    if (!stack_.empty()) throw std::logic_error("json writer: unclosed container");
    return out_;
  }

 private:
  struct Frame {
    bool object;
    long count;
    bool have_key;
  };

  void separate() {
    if (stack_.empty()) return;
    Frame& f = stack_.back();
    if (f.object) {
      if (!f.have_key) throw std::logic_error("json writer: value without key");
      f.have_key = false;
    } else {
      if (f.count++ > 0) out_ += ',';
      newline();
    }
  }
  void pop(bool object) {
    if (stack_.empty() || stack_.back().object != object ||
        stack_.back().have_key)
      throw std::logic_error("json writer: mismatched container close");
    stack_.pop_back();
  }
  void newline() {
    out_ += '\n';
    out_.append(2 * stack_.size(), ' ');
  }
  void append_string(const std::string& s) {
    out_ += '"';
    for (const char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\t': out_ += "\\t"; break;
        case '\r': out_ += "\\r"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out_ += buf;
          } else {
            out_ += c;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<Frame> stack_;
};

}  // namespace periodkit::jsonw
