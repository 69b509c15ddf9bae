#include "jsonout.hpp"

#include <cmath>
#include <cstdio>

namespace logblock::jsonout {

std::string format_double(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  out += '"';
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
  return out;
}

Value Value::object() {
  Value v;
  v.kind_ = Kind::object;
  return v;
}
Value Value::array() {
  Value v;
  v.kind_ = Kind::array;
  return v;
}
Value Value::number(double x) {
  Value v;
  v.kind_ = Kind::number;
  v.num_ = x;
  return v;
}
Value Value::integer(long long x) {
  Value v;
  v.kind_ = Kind::integer;
  v.int_ = x;
  return v;
}
Value Value::boolean(bool x) {
  Value v;
  v.kind_ = Kind::boolean;
  v.bool_ = x;
  return v;
}
Value Value::string(std::string x) {
  Value v;
  v.kind_ = Kind::string;
  v.str_ = std::move(x);
  return v;
}
Value Value::null() { return {}; }

Value& Value::set(const std::string& key, Value v) {
  members_.emplace_back(key, std::move(v));
  return *this;
}

Value& Value::push(Value v) {
  elements_.push_back(std::move(v));
  return *this;
}

void Value::write(std::string& out, int indent, int depth) const {
  const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  const char* nl = indent > 0 ? "\n" : "";

  switch (kind_) {
    case Kind::object: {
      if (members_.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      out += nl;
      for (std::size_t i = 0; i < members_.size(); ++i) {
        out += pad_in;
        out += escape(members_[i].first);
        out += indent > 0 ? ": " : ":";
        members_[i].second.write(out, indent, depth + 1);
        if (i + 1 < members_.size()) out += ',';
        out += nl;
      }
      out += pad;
      out += '}';
      return;
    }
    case Kind::array: {
      if (elements_.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      out += nl;
      for (std::size_t i = 0; i < elements_.size(); ++i) {
        out += pad_in;
        elements_[i].write(out, indent, depth + 1);
        if (i + 1 < elements_.size()) out += ',';
        out += nl;
      }
      out += pad;
      out += ']';
      return;
    }
    case Kind::number: out += format_double(num_); return;
    case Kind::integer: out += std::to_string(int_); return;
    case Kind::boolean: out += bool_ ? "true" : "false"; return;
    case Kind::string: out += escape(str_); return;
    case Kind::null: out += "null"; return;
  }
}

std::string Value::dump(int indent) const {
  std::string out;
  write(out, indent, 0);
  out += '\n';
  return out;
}

}  // namespace logblock::jsonout
