#include "qv/qfile.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qv {

namespace {

[[noreturn]] void fail(int lineno, const std::string& message) {
    throw std::invalid_argument("line " + std::to_string(lineno) + ": " + message);
}

bool valid_id(const std::string& id) {
    if (id.empty()) return false;
    for (const char c : id)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.' && c != '-')
            return false;
    return true;
}

long long parse_number(const std::string& token, int lineno, const std::string& what) {
    std::size_t used = 0;
    long long value = 0;
    try {
        value = std::stoll(token, &used);
    } catch (const std::exception&) {
        fail(lineno, what + " '" + token + "' is not an integer");
    }
    if (used != token.size()) fail(lineno, what + " '" + token + "' is not an integer");
    if (value < -1000000000LL || value > 1000000000LL)
        fail(lineno, what + " '" + token + "' is out of range");
    return value;
}

} // namespace

QuiverFile parse_quiver_file(const std::string& text) {
    QuiverFile out;
    // Parallel to vertex order: the declared value and whether a directive
    // already claimed it (repeats are rejected, not silently overwritten).
    std::vector<int> dim, frame, theta;
    std::vector<bool> dim_set, frame_set, theta_set;

    const auto vertex_of = [&](const std::string& id, int lineno) {
        const auto idx = out.q0.find_vertex(id);
        if (!idx) fail(lineno, "reference to undeclared vertex '" + id + "'");
        return *idx;
    };

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream words(line);
        std::string directive;
        if (!(words >> directive)) continue;
        std::vector<std::string> args;
        for (std::string word; words >> word;) args.push_back(word);

        const auto expect_args = [&](std::size_t n) {
            if (args.size() != n)
                fail(lineno, "'" + directive + "' takes " + std::to_string(n) + " argument" +
                                 (n == 1 ? "" : "s") + ", got " + std::to_string(args.size()));
        };

        if (directive == "vertex") {
            expect_args(1);
            if (!valid_id(args[0]))
                fail(lineno, "invalid identifier '" + args[0] +
                                 "' (allowed: letters, digits, '_', '.', '-')");
            if (args[0] == kFramingVertex)
                fail(lineno, "vertex id 'inf' is reserved for the framing vertex");
            if (out.q0.find_vertex(args[0])) fail(lineno, "duplicate vertex '" + args[0] + "'");
            out.q0.add_vertex(args[0]);
            dim.push_back(0);
            frame.push_back(0);
            theta.push_back(0);
            dim_set.push_back(false);
            frame_set.push_back(false);
            theta_set.push_back(false);
        } else if (directive == "arrow") {
            expect_args(3);
            if (!valid_id(args[0]))
                fail(lineno, "invalid identifier '" + args[0] +
                                 "' (allowed: letters, digits, '_', '.', '-')");
            if (out.q0.find_arrow(args[0])) fail(lineno, "duplicate arrow '" + args[0] + "'");
            vertex_of(args[1], lineno);
            vertex_of(args[2], lineno);
            out.q0.add_arrow(args[0], args[1], args[2]);
        } else if (directive == "dim" || directive == "frame" || directive == "theta") {
            expect_args(2);
            const int i = vertex_of(args[0], lineno);
            const long long value = parse_number(args[1], lineno, directive + " value");
            if (directive != "theta" && value < 0)
                fail(lineno, directive + " value must be nonnegative");
            std::vector<int>& slot = directive == "dim" ? dim
                                     : directive == "frame" ? frame
                                                            : theta;
            std::vector<bool>& seen = directive == "dim" ? dim_set
                                      : directive == "frame" ? frame_set
                                                             : theta_set;
            if (seen[static_cast<std::size_t>(i)])
                fail(lineno, "repeated '" + directive + "' for vertex '" + args[0] + "'");
            seen[static_cast<std::size_t>(i)] = true;
            slot[static_cast<std::size_t>(i)] = static_cast<int>(value);
        } else {
            fail(lineno, "unknown directive '" + directive + "'");
        }
    }
    if (out.q0.num_vertices() == 0)
        throw std::invalid_argument("quiver file declares no vertices");
    out.v = DimVec(dim);
    out.w = DimVec(frame);
    out.theta0.c = theta;
    return out;
}

} // namespace qv
