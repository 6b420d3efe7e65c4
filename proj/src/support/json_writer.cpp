#include "support/json_writer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace geomom {

Json Json::number(double v) {
  Json j;
  if (std::isfinite(v)) {
    j.kind_ = Kind::number;
    j.num_ = v;
  }
  // non-finite numbers have no JSON encoding; keep null
  return j;
}

std::string Json::format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

static void escape_into(const std::string& s, std::string& out) {
  out.push_back('"');
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
}

void Json::dump_to(std::string& out) const {
  switch (kind_) {
    case Kind::null: out += "null"; break;
    case Kind::boolean: out += bool_ ? "true" : "false"; break;
    case Kind::integer: out += std::to_string(int_); break;
    case Kind::number: out += format_double(num_); break;
    case Kind::string: escape_into(str_, out); break;
    case Kind::array: {
      out.push_back('[');
      for (std::size_t i = 0; i < arr_.size(); ++i) {
        if (i) out.push_back(',');
        arr_[i].dump_to(out);
      }
      out.push_back(']');
      break;
    }
    case Kind::object: {
      std::vector<const std::pair<std::string, Json>*> entries;
      entries.reserve(obj_.size());
      for (const auto& kv : obj_) entries.push_back(&kv);
      std::stable_sort(entries.begin(), entries.end(),
                       [](auto* a, auto* b) { return a->first < b->first; });
      out.push_back('{');
      for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) out.push_back(',');
        escape_into(entries[i]->first, out);
        out.push_back(':');
        entries[i]->second.dump_to(out);
      }
      out.push_back('}');
      break;
    }
  }
}

std::string Json::dump() const {
  std::string out;
  dump_to(out);
  return out;
}

} // namespace geomom
