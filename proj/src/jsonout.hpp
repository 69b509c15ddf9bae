#pragma once

#include <string>
#include <utility>
#include <vector>

namespace logblock::jsonout {

// Minimal JSON document builder with insertion-ordered objects and %.17g
// number formatting, so identical invocations serialize byte-identically.
// Non-finite numbers are emitted as the strings "inf", "-inf" and "nan".
class Value {
 public:
  static Value object();
  static Value array();
  static Value number(double v);
  static Value integer(long long v);
  static Value boolean(bool v);
  static Value string(std::string v);
  static Value null();

  Value& set(const std::string& key, Value v);  // object member, keeps order
  Value& push(Value v);                         // array element

  std::string dump(int indent = 2) const;

 private:
  enum class Kind { object, array, number, integer, boolean, string, null };
  Kind kind_ = Kind::null;
  double num_ = 0.0;
  long long int_ = 0;
  bool bool_ = false;
  std::string str_;
  std::vector<std::pair<std::string, Value>> members_;
  std::vector<Value> elements_;

  void write(std::string& out, int indent, int depth) const;
};

std::string escape(const std::string& s);
std::string format_double(double v);  // %.17g with inf/nan spelled out

}  // namespace logblock::jsonout
