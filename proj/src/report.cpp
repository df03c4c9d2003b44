#include "qv/report.hpp"

#include <sstream>
#include <stdexcept>

namespace qv {

ReportFormat parse_report_format(const std::string& text) {
    if (text == "text") return ReportFormat::Text;
    if (text == "kv") return ReportFormat::Kv;
    throw std::invalid_argument("format '" + text + "': expected 'text' or 'kv'");
}

namespace {

void validate_key(const std::string& key) {
    if (key.empty()) throw std::invalid_argument("report key must be nonempty");
    if (key.find('=') != std::string::npos || key.find('\n') != std::string::npos)
        throw std::invalid_argument("report key '" + key + "' contains '=' or a newline");
    if (key.front() == ' ' || key.back() == ' ')
        throw std::invalid_argument("report key '" + key + "' has leading/trailing blanks");
}

} // namespace

void Report::set(const std::string& key, const std::string& value) {
    validate_key(key);
    if (value.find('\n') != std::string::npos)
        throw std::invalid_argument("report value for '" + key + "' contains a newline");
    if (!kv.emplace(key, value).second)
        throw std::invalid_argument("report key '" + key + "' set twice");
}

void Report::set(const std::string& key, long long value) { set(key, std::to_string(value)); }

void Report::check(const std::string& key, bool ok) {
    set(key, ok ? std::string("pass") : std::string("fail"));
    all_passed = all_passed && ok;
}

std::string pad_index(long long i, int width) {
    if (i < 0) throw std::invalid_argument("pad_index: negative index");
    std::string digits = std::to_string(i);
    while (static_cast<int>(digits.size()) < width) digits.insert(digits.begin(), '0');
    return digits;
}

namespace {

std::string emit_kv(const Report& r) {
    if (r.kv.empty()) return "report.entries=0\n";
    std::string out;
    for (const auto& [k, v] : r.kv) out += k + "=" + v + "\n";
    return out;
}

std::string emit_text(const Report& r) {
    std::string out = "quiverlab report\n================\n";
    if (r.kv.empty()) {
        out += "entries: 0\n";
        return out;
    }
    std::string section;
    for (const auto& [k, v] : r.kv) {
        const std::string head = k.substr(0, k.find('.'));
        if (head != section) {
            section = head;
            out += "\n[" + section + "]\n";
        }
        const std::string rest = k.size() > head.size() ? k.substr(head.size() + 1) : k;
        out += "  " + rest + " = " + v + "\n";
    }
    return out;
}

} // namespace

std::string emit_report(const Report& r, ReportFormat fmt) {
    return fmt == ReportFormat::Kv ? emit_kv(r) : emit_text(r);
}

std::map<std::string, std::string> parse_kv_report(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("report line " + std::to_string(lineno) +
                                        ": missing '='");
        const std::string key = line.substr(0, eq);
        if (key.empty())
            throw std::invalid_argument("report line " + std::to_string(lineno) + ": empty key");
        if (!out.emplace(key, line.substr(eq + 1)).second)
            throw std::invalid_argument("report line " + std::to_string(lineno) +
                                        ": duplicate key '" + key + "'");
    }
    return out;
}

} // namespace qv
