#pragma once

#include <string>
#include <vector>

namespace fglforge {

// Deterministic JSON emitter: fields appear exactly in emission order, all
// numbers are written as decimal strings or integers, no floats, stable
// escaping. Keeps CLI output byte-reproducible across runs.
class JsonWriter {
 public:
  void begin_object();
  void end_object();
  void begin_array();
  void end_array();
  void key(const std::string& k);
  void value(const std::string& s);
  void value(const char* s);
  void value(long v);
  void value(unsigned long v);
  void value(bool b);
  void raw(const std::string& chunk);  // pre-rendered JSON value

  std::string str() const { return out_; }

 private:
  void comma_if_needed();
  void push(bool is_object);
  void pop();

  std::string out_;
  std::vector<bool> first_;   // per nesting level
  std::vector<bool> is_obj_;
  bool pending_key_ = false;
};

std::string json_escape(const std::string& s);

}  // namespace fglforge
