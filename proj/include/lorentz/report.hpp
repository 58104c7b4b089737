#pragma once

// Machine-readable reports: a small ordered JSON document model with fixed
// float formatting (17 significant digits), the per-check record table, and
// text/CSV renderings.  Identical inputs produce byte-identical JSON; wall
// time is only embedded on request since it would break that guarantee.

#include <cstdio>
#include <memory>
#include <sstream>
#include <utility>

#include "lorentz/types.hpp"

namespace lorentz {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class JsonValue {
 public:
  enum class Kind { null, boolean, integer, real, str, array, object };

  JsonValue() : kind_(Kind::null) {}
  JsonValue(bool b) : kind_(Kind::boolean), bool_(b) {}
  JsonValue(int i) : kind_(Kind::integer), int_(i) {}
  JsonValue(long i) : kind_(Kind::integer), int_(i) {}
  JsonValue(double d) : kind_(Kind::real), real_(d) {}
  JsonValue(const char* s) : kind_(Kind::str), str_(s) {}
  JsonValue(std::string s) : kind_(Kind::str), str_(std::move(s)) {}

  static JsonValue array() {
    JsonValue v;
    v.kind_ = Kind::array;
    return v;
  }
  static JsonValue object() {
    JsonValue v;
    v.kind_ = Kind::object;
    return v;
  }
  static JsonValue complex(cplx z) {
    JsonValue v = object();
    v.set("re", z.real());
    v.set("im", z.imag());
    return v;
  }

  JsonValue& push(JsonValue v) {
    items_.push_back(std::move(v));
    return *this;
  }

  JsonValue& set(std::string key, JsonValue v) {
    keys_.push_back(std::move(key));
    items_.push_back(std::move(v));
    return *this;
  }

  void dump(std::string& out, int indent, int depth) const {
    switch (kind_) {
      case Kind::null: out += "null"; break;
      case Kind::boolean: out += bool_ ? "true" : "false"; break;
      case Kind::integer: out += std::to_string(int_); break;
      case Kind::real: out += format_double(real_); break;
      case Kind::str: dump_string(out, str_); break;
      case Kind::array: {
        out += '[';
        for (std::size_t i = 0; i < items_.size(); ++i) {
          if (i) out += ',';
          newline(out, indent, depth + 1);
          items_[i].dump(out, indent, depth + 1);
        }
        if (!items_.empty()) newline(out, indent, depth);
        out += ']';
        break;
      }
      case Kind::object: {
        out += '{';
        for (std::size_t i = 0; i < items_.size(); ++i) {
          if (i) out += ',';
          newline(out, indent, depth + 1);
          dump_string(out, keys_[i]);
          out += indent > 0 ? ": " : ":";
          items_[i].dump(out, indent, depth + 1);
        }
        if (!items_.empty()) newline(out, indent, depth);
        out += '}';
        break;
      }
    }
  }

  std::string dump(int indent = 2) const {
    std::string out;
    dump(out, indent, 0);
    out += '\n';
    return out;
  }

 private:
  static void newline(std::string& out, int indent, int depth) {
    if (indent <= 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent) * depth, ' ');
  }

  static void dump_string(std::string& out, const std::string& s) {
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
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            out += buf;
          } else {
            out += c;
          }
      }
    }
    out += '"';
  }

  Kind kind_;
  bool bool_ = false;
  long int_ = 0;
  double real_ = 0.0;
  std::string str_;
  std::vector<std::string> keys_;
  std::vector<JsonValue> items_;
};

// ---------------------------------------------------------------------------

inline constexpr const char* kToolName = "lorentz-levy";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

struct CheckRecord {
  std::string name;
  std::string identity;  // the identity or quantity the record verifies
  double value = 0.0;    // measured residual / quantity
  double threshold = 0.0;
  bool pass = false;
};

struct ReportDocument {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;  // echoed settings
  std::vector<CheckRecord> checks;
  std::vector<std::string> flags;  // discrepancy notes and disclosures
  JsonValue payload;               // command-specific tables
  bool has_payload = false;
  long wall_time_ms = -1;          // embedded only when >= 0

  void config_kv(std::string k, std::string v) {
    config.emplace_back(std::move(k), std::move(v));
  }

  CheckRecord& check(std::string name, std::string identity, double value,
                     double threshold) {
    checks.push_back(CheckRecord{std::move(name), std::move(identity), value,
                                 threshold, value <= threshold});
    return checks.back();
  }

  bool all_pass() const {
    for (const CheckRecord& c : checks)
      if (!c.pass) return false;
    return true;
  }

  int exit_code() const { return all_pass() ? 0 : 1; }

  JsonValue to_json() const {
    JsonValue root = JsonValue::object();
    root.set("tool", kToolName);
    root.set("version", kToolVersion);
    root.set("schema", kReportSchema);
    root.set("command", command);
    JsonValue cfg = JsonValue::object();
    for (const auto& [k, v] : config) cfg.set(k, v);
    root.set("config", std::move(cfg));
    JsonValue arr = JsonValue::array();
    for (const CheckRecord& c : checks) {
      JsonValue rec = JsonValue::object();
      rec.set("name", c.name);
      rec.set("identity", c.identity);
      rec.set("value", c.value);
      rec.set("threshold", c.threshold);
      rec.set("pass", c.pass);
      arr.push(std::move(rec));
    }
    root.set("checks", std::move(arr));
    JsonValue fl = JsonValue::array();
    for (const std::string& f : flags) fl.push(f);
    root.set("flags", std::move(fl));
    if (has_payload) root.set("payload", payload);
    root.set("all_pass", all_pass());
    if (wall_time_ms >= 0) root.set("wall_time_ms", wall_time_ms);
    return root;
  }

  std::string to_text() const {
    std::ostringstream os;
    os << kToolName << " " << kToolVersion << "  " << command << "\n";
    for (const auto& [k, v] : config) os << "  " << k << " = " << v << "\n";
    for (const CheckRecord& c : checks) {
      os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  value="
         << format_double(c.value) << " threshold=" << format_double(c.threshold)
         << "  (" << c.identity << ")\n";
    }
    for (const std::string& f : flags) os << "[flag] " << f << "\n";
    os << (all_pass() ? "ALL PASS" : "FAILURES PRESENT") << "\n";
    return os.str();
  }

  std::string to_csv() const {
    std::ostringstream os;
    os << "name,identity,value,threshold,pass\n";
    for (const CheckRecord& c : checks) {
      std::string ident = c.identity;
      for (char& ch : ident)
        if (ch == ',') ch = ';';
      os << c.name << "," << ident << "," << format_double(c.value) << ","
         << format_double(c.threshold) << "," << (c.pass ? 1 : 0) << "\n";
    }
    return os.str();
  }
};

}  // namespace lorentz
