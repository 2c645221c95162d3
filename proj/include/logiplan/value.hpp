#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <variant>
#include <vector>

#include "logiplan/error.hpp"

namespace logiplan {

/// A table cell. Lists appear in the fee-rule tables (account types, ACIs, MCCs).
class Value {
public:
    using List = std::vector<Value>;

    Value() : v_(std::monostate{}) {}
    Value(bool b) : v_(b) {}
    Value(std::int64_t i) : v_(i) {}
    Value(int i) : v_(static_cast<std::int64_t>(i)) {}
    Value(double d) : v_(d) {}
    Value(std::string s) : v_(std::move(s)) {}
    Value(const char* s) : v_(std::string(s)) {}
    Value(List xs) : v_(std::move(xs)) {}

    bool is_null() const { return std::holds_alternative<std::monostate>(v_); }
    bool is_bool() const { return std::holds_alternative<bool>(v_); }
    bool is_int() const { return std::holds_alternative<std::int64_t>(v_); }
    bool is_double() const { return std::holds_alternative<double>(v_); }
    bool is_string() const { return std::holds_alternative<std::string>(v_); }
    bool is_list() const { return std::holds_alternative<List>(v_); }
    bool is_numeric() const { return is_int() || is_double() || is_bool(); }

    bool as_bool() const { return std::get<bool>(v_); }
    std::int64_t as_int() const { return std::get<std::int64_t>(v_); }
    double as_double() const { return std::get<double>(v_); }
    const std::string& as_string() const { return std::get<std::string>(v_); }
    const List& as_list() const { return std::get<List>(v_); }

    /// Numeric view: bools count as 0/1 so boolean columns can be aggregated.
    double numeric() const {
        if (is_bool()) return as_bool() ? 1.0 : 0.0;
        if (is_int()) return static_cast<double>(as_int());
        if (is_double()) return as_double();
        throw Error(ErrorKind::type, "numeric value expected, got " + repr());
    }

    std::string repr() const {
        if (is_null()) return "null";
        if (is_bool()) return as_bool() ? "true" : "false";
        if (is_int()) return std::to_string(as_int());
        if (is_double()) return format_double(as_double());
        if (is_string()) return as_string();
        std::string out = "[";
        const auto& xs = as_list();
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i) out += ", ";
            out += xs[i].repr();
        }
        return out + "]";
    }

    static std::string format_double(double d) {
        if (std::isfinite(d) && d == std::floor(d) && std::fabs(d) < 1e15) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.1f", d);
            return buf;
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.15g", d);
        return buf;
    }

    friend bool operator==(const Value& a, const Value& b) {
        if (a.is_numeric() && b.is_numeric()) return a.numeric() == b.numeric();
        if (a.v_.index() != b.v_.index()) return false;
        return a.v_ == b.v_;
    }
    friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }

    /// Total order: numeric when both sides are numeric, lexicographic for
    /// strings, otherwise by type rank (null < bool/number < string < list).
    friend bool operator<(const Value& a, const Value& b) { return compare(a, b) < 0; }

    static int compare(const Value& a, const Value& b) {
        if (a.is_numeric() && b.is_numeric()) {
            double x = a.numeric(), y = b.numeric();
            return x < y ? -1 : x > y ? 1 : 0;
        }
        int ra = rank(a), rb = rank(b);
        if (ra != rb) return ra < rb ? -1 : 1;
        if (a.is_string()) return a.as_string().compare(b.as_string());
        if (a.is_list()) {
            const auto& xs = a.as_list();
            const auto& ys = b.as_list();
            for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
                if (int c = compare(xs[i], ys[i])) return c;
            }
            return xs.size() < ys.size() ? -1 : xs.size() > ys.size() ? 1 : 0;
        }
        return 0;  // both null
    }

private:
    static int rank(const Value& v) {
        if (v.is_null()) return 0;
        if (v.is_numeric()) return 1;
        if (v.is_string()) return 2;
        return 3;
    }

    std::variant<std::monostate, bool, std::int64_t, double, std::string, List> v_;
};

}  // namespace logiplan
