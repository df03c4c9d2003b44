#pragma once

// Deterministic run reports.
//
// A Report is a sorted key -> value map plus a fold of every checked
// identity.  Keys are dotted paths ("stability.sample.007"); numeric path
// segments are zero-padded so lexicographic order equals numeric order.  Two
// emitters share the map: "kv" is line-oriented `key=value` (machine-first,
// round-trips through parse_kv_report), "text" groups keys by their first
// path segment for reading.  Neither emitter adds timing, paths, or any
// other run-dependent noise: emission is a pure function of the map, which
// is what makes byte-identical reruns possible.

#include <map>
#include <string>

namespace qv {

enum class ReportFormat { Text, Kv };

/// Accepts "text" or "kv".
ReportFormat parse_report_format(const std::string& text);

struct Report {
    std::map<std::string, std::string> kv;
    bool all_passed = true; // conjunction of every check() so far

    /// Inserts key=value.  Keys must be nonempty and free of '=', newlines,
    /// and leading/trailing blanks; values must be newline-free.  Repeated
    /// keys are rejected: every fact is recorded exactly once.
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, long long value);

    /// Records a verified identity as "pass"/"fail" and folds it into
    /// all_passed.
    void check(const std::string& key, bool ok);

    bool has(const std::string& key) const { return kv.find(key) != kv.end(); }
};

/// Zero-pads a nonnegative index to `width` digits (wider if it needs more).
std::string pad_index(long long i, int width = 3);

std::string emit_report(const Report& r, ReportFormat fmt);

/// Inverse of the kv emitter: returns the key -> value map, rejecting
/// malformed lines (no '='), empty keys, and duplicate keys with an error
/// naming the line.  The synthetic "report.entries=0" line emitted for an
/// empty report parses back to a one-entry map by design.
std::map<std::string, std::string> parse_kv_report(const std::string& text);

} // namespace qv
