#pragma once

// Line-oriented quiver description files.
//
// Grammar (one directive per line, '#' starts a comment, blank lines
// ignored):
//
//   vertex <id>
//   arrow  <id> <src> <dst>
//   dim    <vertex> <nat>     # module dimension at the vertex   (default 0)
//   frame  <vertex> <nat>     # framing multiplicity             (default 0)
//   theta  <vertex> <int>     # linearization weight             (default 0)
//
// Vertices must be declared before anything references them; ids are drawn
// from [A-Za-z0-9_.-] so they can never collide with generated names (which
// use ':' and '@'), and "inf" is reserved for the framing vertex the library
// adds itself.  Files describe only the base quiver: framing arrows, the
// doubling, and the grading are applied by the pipeline, never written out.
// All errors carry the 1-based line number.

#include <string>

#include "qv/quiver.hpp"
#include "qv/stability.hpp"

namespace qv {

struct QuiverFile {
    Quiver q0;    // base quiver as declared
    DimVec v;     // dim entries, vertex order
    DimVec w;     // frame entries, vertex order
    Theta theta0; // theta entries, vertex order
};

QuiverFile parse_quiver_file(const std::string& text);

} // namespace qv
