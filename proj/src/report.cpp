#include "clab/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace clab {

std::string format_double(double v)
{
    if (std::isnan(v)) return "null";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fnv1a_hex(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void json_quote(std::string& out, std::string_view s)
{
    out.push_back('"');
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
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

void JsonWriter::newline_indent()
{
    out_.push_back('\n');
    out_.append(2 * stack_.size(), ' ');
}

void JsonWriter::prepare_value()
{
    if (pending_key_) {
        pending_key_ = false;
        return;
    }
    if (!stack_.empty()) {
        if (stack_.back().second++ > 0) out_.push_back(',');
        newline_indent();
    }
}

JsonWriter& JsonWriter::begin_object()
{
    prepare_value();
    out_.push_back('{');
    stack_.push_back({'o', 0});
    return *this;
}

JsonWriter& JsonWriter::end_object()
{
    const bool empty = stack_.back().second == 0;
    stack_.pop_back();
    if (!empty) newline_indent();
    out_.push_back('}');
    return *this;
}

JsonWriter& JsonWriter::begin_array()
{
    prepare_value();
    out_.push_back('[');
    stack_.push_back({'a', 0});
    return *this;
}

JsonWriter& JsonWriter::end_array()
{
    const bool empty = stack_.back().second == 0;
    stack_.pop_back();
    if (!empty) newline_indent();
    out_.push_back(']');
    return *this;
}

JsonWriter& JsonWriter::key(std::string_view k)
{
    if (stack_.back().second++ > 0) out_.push_back(',');
    newline_indent();
    json_quote(out_, k);
    out_ += ": ";
    pending_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(double v)
{
    prepare_value();
    out_ += format_double(v);
    return *this;
}

JsonWriter& JsonWriter::value(int v) { return value(static_cast<std::int64_t>(v)); }

JsonWriter& JsonWriter::value(std::int64_t v)
{
    prepare_value();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v)
{
    prepare_value();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(bool v)
{
    prepare_value();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(std::string_view v)
{
    prepare_value();
    json_quote(out_, v);
    return *this;
}

JsonWriter& JsonWriter::raw_value(std::string_view json)
{
    prepare_value();
    const std::string pad(2 * stack_.size(), ' ');
    for (char c : json) {
        out_.push_back(c);
        if (c == '\n') out_ += pad;
    }
    return *this;
}

void write_check(JsonWriter& w, const CheckReport& r)
{
    w.begin_object();
    w.key("name").value(r.name);
    w.key("lhs").value(r.lhs);
    w.key("rhs").value(r.rhs);
    w.key("margin").value(r.margin);
    w.key("residual").value(r.residual);
    w.key("relative_scale").value(r.relative_scale);
    w.key("tolerance").value(r.tolerance);
    w.key("identity").value(r.identity);
    w.key("verdict").value(to_string(r.verdict));
    w.key("flags").begin_array();
    for (const auto& f : r.flags) w.value(f);
    w.end_array();
    if (!r.aux.empty()) {
        w.key("aux").begin_object();
        for (const auto& [k, v] : r.aux) w.key(k).value(v);
        w.end_object();
    }
    w.end_object();
}

std::string curve_csv(const ScanCurve& c)
{
    std::string out = "t,value,second_diff\n";
    for (std::size_t i = 0; i < c.t.size(); ++i) {
        out += format_double(c.t[i]);
        out.push_back(',');
        out += format_double(c.v[i]);
        out.push_back(',');
        out += std::isnan(c.d2[i]) ? "nan" : format_double(c.d2[i]);
        out.push_back('\n');
    }
    return out;
}

void write_text_file(const std::string& path, std::string_view text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace clab
