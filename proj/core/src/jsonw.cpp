#include "fglforge/jsonw.hpp"

#include <cstdio>

namespace fglforge {

std::string json_escape(const std::string& s) {
  std::string r;
  r.reserve(s.size() + 8);
  for (char c : s) {
    switch (c) {
      case '"': r += "\\\""; break;
      case '\\': r += "\\\\"; break;
      case '\n': r += "\\n"; break;
      case '\r': r += "\\r"; break;
      case '\t': r += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          r += buf;
        } else {
          r += c;
        }
    }
  }
  return r;
}

void JsonWriter::comma_if_needed() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!first_.empty()) {
    if (!first_.back()) out_ += ",";
    first_.back() = false;
  }
}

void JsonWriter::push(bool is_object) {
  first_.push_back(true);
  is_obj_.push_back(is_object);
}

void JsonWriter::pop() {
  first_.pop_back();
  is_obj_.pop_back();
}

void JsonWriter::begin_object() {
  comma_if_needed();
  out_ += "{";
  push(true);
}

void JsonWriter::end_object() {
  out_ += "}";
  pop();
}

void JsonWriter::begin_array() {
  comma_if_needed();
  out_ += "[";
  push(false);
}

void JsonWriter::end_array() {
  out_ += "]";
  pop();
}

void JsonWriter::key(const std::string& k) {
  comma_if_needed();
  out_ += "\"" + json_escape(k) + "\":";
  pending_key_ = true;
}

void JsonWriter::value(const std::string& s) {
  comma_if_needed();
  out_ += "\"" + json_escape(s) + "\"";
}

void JsonWriter::value(const char* s) { value(std::string(s)); }

void JsonWriter::value(long v) {
  comma_if_needed();
  out_ += std::to_string(v);
}

void JsonWriter::value(unsigned long v) {
  comma_if_needed();
  out_ += std::to_string(v);
}

void JsonWriter::value(bool b) {
  comma_if_needed();
  out_ += b ? "true" : "false";
}

void JsonWriter::raw(const std::string& chunk) {
  comma_if_needed();
  out_ += chunk;
}

}  // namespace fglforge
