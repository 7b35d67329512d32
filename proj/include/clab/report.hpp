#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "clab/check_report.hpp"
#include "clab/scan.hpp"

namespace clab {

/** Doubles in reports carry 17 significant digits so they round-trip exactly. */
std::string format_double(double v);

/** FNV-1a 64-bit hash, hex-encoded; used to stamp reports with their config. */
std::string fnv1a_hex(std::string_view bytes);

/**
 * Minimal streaming JSON writer with fixed key order and deterministic
 * number formatting, so identical inputs produce byte-identical reports.
 */
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(std::string_view k);
    JsonWriter& value(double v);
    JsonWriter& value(int v);
    JsonWriter& value(std::int64_t v);
    JsonWriter& value(std::uint64_t v);
    JsonWriter& value(bool v);
    JsonWriter& value(std::string_view v);
    JsonWriter& value(const char* v) { return value(std::string_view(v)); }
    /** Splices pre-rendered JSON, re-indented to the current depth. */
    JsonWriter& raw_value(std::string_view json);

    std::string str() const { return out_; }

private:
    void prepare_value();
    void newline_indent();

    std::string out_;
    std::vector<std::pair<char, int>> stack_;   // ('o'|'a', item count)
    bool pending_key_ = false;
};

void json_quote(std::string& out, std::string_view s);

/** Serializes one check as a JSON object (name, lhs, rhs, margin, ...). */
void write_check(JsonWriter& w, const CheckReport& r);

/** Curve CSV with header "t,value,second_diff"; endpoints print nan. */
std::string curve_csv(const ScanCurve& c);

void write_text_file(const std::string& path, std::string_view text);
std::string read_text_file(const std::string& path);

} // namespace clab
