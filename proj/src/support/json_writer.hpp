#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace geomom {

// Minimal JSON value tree with a deterministic serializer: object keys are
// emitted sorted, doubles as decimal with 17 significant digits (round-trip
// exact for IEEE doubles). Identical trees serialize to identical bytes,
// which the report pipeline relies on.
class Json {
public:
  Json() : kind_(Kind::null) {}
  static Json null() { return Json(); }
  static Json boolean(bool b) {
    Json j;
    j.kind_ = Kind::boolean;
    j.bool_ = b;
    return j;
  }
  static Json integer(std::int64_t v) {
    Json j;
    j.kind_ = Kind::integer;
    j.int_ = v;
    return j;
  }
  static Json number(double v);
  static Json string(std::string s) {
    Json j;
    j.kind_ = Kind::string;
    j.str_ = std::move(s);
    return j;
  }
  static Json array() {
    Json j;
    j.kind_ = Kind::array;
    return j;
  }
  static Json object() {
    Json j;
    j.kind_ = Kind::object;
    return j;
  }

  bool is_object() const { return kind_ == Kind::object; }
  bool is_array() const { return kind_ == Kind::array; }

  Json& push(Json v) {
    arr_.push_back(std::move(v));
    return arr_.back();
  }
  Json& set(std::string key, Json v) {
    obj_.emplace_back(std::move(key), std::move(v));
    return obj_.back().second;
  }

  std::string dump() const;

  // Formats a double with 17 significant digits (the serializer's number
  // format), also used by the CLI contract tests.
  static std::string format_double(double v);

private:
  enum class Kind { null, boolean, integer, number, string, array, object };

  void dump_to(std::string& out) const;

  Kind kind_;
  bool bool_ = false;
  std::int64_t int_ = 0;
  double num_ = 0.0;
  std::string str_;
  std::vector<Json> arr_;
  std::vector<std::pair<std::string, Json>> obj_;
};

} // namespace geomom
