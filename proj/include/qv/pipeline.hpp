#pragma once

// End-to-end verification pipeline.
//
// A JobSpec bundles everything a run depends on: the quiver description, the
// field, the seed, the grading window, sample/budget sizes, and which stages
// to report.  run_pipeline executes the stages in a fixed order —
//
//   describe   combinatorics of the framed double and its graded triple
//   nondegen   linearization gate: refuses degenerate theta with a witness
//   theta_gtr  three-band symbolic functional and its exhaustive sign check
//   moment     exact sampling of the zero moment fiber
//   stability  verdicts (fast path, plus enumeration agreement over F_p)
//   complex    two-step fiber complexes: composite, ranks, section, probe
//   chern      symbolic class of the standard complex, inverse and Kunneth
//              identities
//
// — computing only what the selected stages need, except that the
// nondegeneracy gate always runs before any stage that depends on the
// linearization.  Every verified identity lands in the Report via check();
// the run "passes" when all of them do.  For a fixed JobSpec the emitted
// bytes are identical run to run: all randomness flows from the seed through
// per-item child streams, and parallel sections merge deterministically.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "qv/field.hpp"
#include "qv/qfile.hpp"
#include "qv/report.hpp"

namespace qv {

extern const std::vector<std::string> kPipelineStages;

struct JobSpec {
    std::string quiver_text;          // contents of the quiver description file
    FieldSpec field;                  // default: rationals
    std::uint64_t seed = 0;
    int window_a = 0;                 // grading window; complex/chern require [0,2]
    int window_b = 2;
    int samples = 12;                 // zero-fiber points per batch (two batches)
    unsigned long budget = 1000000;   // cap on every exhaustive enumeration
    std::set<std::string> stages;     // subset of kPipelineStages; empty = all
    ReportFormat format = ReportFormat::Text;
};

/// Runs the selected stages and returns the filled report.  Throws
/// std::invalid_argument for an unusable spec (bad quiver text, unknown
/// stage, a<b violated, non-default window with complex/chern selected).
Report run_pipeline(const JobSpec& job);

/// run_pipeline + emit_report in the requested format.
std::string run_job(const JobSpec& job);

} // namespace qv
