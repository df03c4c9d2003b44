// The driver layer: deterministic reports, the quiver file grammar, and the
// end-to-end pipeline contract (stage selection, gating, determinism).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>

#include "test_support.hpp"

using namespace qv;

// ---------------------------------------------------------------------------
// Reports.

TEST_CASE("report keys are validated and recorded once") {
    Report r;
    r.set("a.b", "x");
    r.set("a.count", 7LL);
    CHECK(r.has("a.b"));
    CHECK(!r.has("missing"));
    CHECK_THROWS_AS(r.set("a.b", "again"), std::invalid_argument);
    CHECK_THROWS_AS(r.set("", "v"), std::invalid_argument);
    CHECK_THROWS_AS(r.set("k=v", "v"), std::invalid_argument);
    CHECK_THROWS_AS(r.set("k\nq", "v"), std::invalid_argument);
    CHECK_THROWS_AS(r.set(" k", "v"), std::invalid_argument);
    CHECK_THROWS_AS(r.set("v.nl", "a\nb"), std::invalid_argument);

    CHECK(r.all_passed);
    r.check("c.good", true);
    CHECK(r.all_passed);
    CHECK(r.kv.at("c.good") == "pass");
    r.check("c.bad", false);
    CHECK(!r.all_passed);
    CHECK(r.kv.at("c.bad") == "fail");
    r.check("c.good2", true);
    CHECK(!r.all_passed); // a failure is never washed out
}

TEST_CASE("index padding") {
    CHECK(pad_index(0) == "000");
    CHECK(pad_index(42) == "042");
    CHECK(pad_index(1234) == "1234");
    CHECK(pad_index(5, 2) == "05");
}

TEST_CASE("kv emission is sorted and round-trips") {
    Report r;
    r.set("b.two", "2");
    r.set("a.one", "1 with spaces");
    r.check("z.last", true);
    const std::string kv = emit_report(r, ReportFormat::Kv);
    CHECK(kv == "a.one=1 with spaces\nb.two=2\nz.last=pass\n");
    const auto parsed = parse_kv_report(kv);
    CHECK(parsed == r.kv);

    const Report empty;
    CHECK(emit_report(empty, ReportFormat::Kv) == "report.entries=0\n");
    CHECK(parse_kv_report("report.entries=0\n").size() == 1);

    CHECK_THROWS_AS(parse_kv_report("no-separator\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_kv_report("=value\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_kv_report("k=1\nk=2\n"), std::invalid_argument);
}

TEST_CASE("text emission groups by the first path segment") {
    Report r;
    r.set("beta.x", "1");
    r.set("alpha.y", "2");
    r.set("alpha.z", "3");
    const std::string text = emit_report(r, ReportFormat::Text);
    const auto alpha = text.find("[alpha]");
    const auto beta = text.find("[beta]");
    REQUIRE(alpha != std::string::npos);
    REQUIRE(beta != std::string::npos);
    CHECK(alpha < beta);
    CHECK(text.find("y = 2") != std::string::npos);

    CHECK(parse_report_format("kv") == ReportFormat::Kv);
    CHECK(parse_report_format("text") == ReportFormat::Text);
    CHECK_THROWS_AS(parse_report_format("json"), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Quiver files.

TEST_CASE("quiver file: happy path") {
    const QuiverFile qf = parse_quiver_file(qvtest::jordan_file(2, 1));
    CHECK(qf.q0.num_vertices() == 1);
    CHECK(qf.q0.num_arrows() == 1);
    CHECK(qf.v.d == std::vector<int>{2});
    CHECK(qf.w.d == std::vector<int>{1});
    CHECK(qf.theta0.c == std::vector<int>{1});

    // Comments, blank lines, and defaulted values.
    const QuiverFile qd = parse_quiver_file("# header\n\nvertex a\nvertex b\narrow e a b\n");
    CHECK(qd.v.d == std::vector<int>{0, 0});
    CHECK(qd.w.d == std::vector<int>{0, 0});
    CHECK(qd.theta0.c == std::vector<int>{0, 0});
}

TEST_CASE("quiver file: every error carries its line number") {
    auto fails_with = [](const std::string& text, const std::string& line) {
        try {
            parse_quiver_file(text);
            FAIL_CHECK("expected rejection: " << text);
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find(line) == 0);
        }
    };
    fails_with("vertex a\nvertex a\n", "line 2:");
    fails_with("vertex a\narrow e a a\narrow e a a\n", "line 3:");
    fails_with("vertex a\narrow e a b\n", "line 2:");          // unknown endpoint
    fails_with("vertex inf\n", "line 1:");                     // reserved id
    fails_with("vertex a\ndim a 1x\n", "line 2:");             // bad number
    fails_with("vertex a\ndim a 1\ndim a 2\n", "line 3:");     // repeated directive
    fails_with("vertex a\ndim a -1\n", "line 2:");             // negative dimension
    fails_with("vertex a\nvolume a 3\n", "line 2:");           // unknown directive
    fails_with("vertex a\ndim a\n", "line 2:");                // wrong arity
    fails_with("vertex a$\n", "line 1:");                      // bad id charset
    fails_with("dim a 1\n", "line 1:");                        // use before declaration
    fails_with("# nothing\n", "quiver file declares no vertices");
}

// ---------------------------------------------------------------------------
// Pipeline.

TEST_CASE("full run over the rationals passes and is byte-stable") {
    JobSpec job;
    job.quiver_text = qvtest::jordan_file(2, 1);
    job.samples = 4;
    job.format = ReportFormat::Kv;
    const std::string first = run_job(job);
    const std::string second = run_job(job);
    CHECK(first == second);

    const auto kv = parse_kv_report(first);
    CHECK(kv.at("describe.field") == "q");
    CHECK(kv.at("describe.alpha") == "2,1");
    CHECK(kv.at("nondegen.ok") == "pass");
    CHECK(kv.at("moment.ok") == "pass");
    CHECK(kv.at("chern.inverse_ok") == "pass");
    CHECK(kv.count("stability.brute.status")); // no enumeration over Q
    for (const auto& [k, v] : kv)
        if (v == "fail") FAIL_CHECK("failed identity: " << k);

    // Different seeds change sampled data but not the verdict structure.
    JobSpec other = job;
    other.seed = 5;
    const auto kv2 = parse_kv_report(run_job(other));
    CHECK(kv2.at("moment.ok") == "pass");
}

TEST_CASE("finite-field run adds enumeration agreement") {
    JobSpec job;
    job.quiver_text = qvtest::jordan_file(2, 1);
    job.field = FieldSpec::prime(101);
    job.samples = 3;
    job.format = ReportFormat::Kv;
    const auto kv = parse_kv_report(run_job(job));
    CHECK(kv.at("describe.field") == "fp:101");
    CHECK(kv.at("stability.brute.ok") == "pass");
    for (const auto& [k, v] : kv)
        if (v == "fail") FAIL_CHECK("failed identity: " << k);
}

TEST_CASE("degenerate linearization is refused with a witness") {
    JobSpec job;
    job.quiver_text = qvtest::jordan_file(2, 1, 0); // theta = 0
    job.samples = 2;
    job.format = ReportFormat::Kv;
    Report r = run_pipeline(job);
    CHECK(!r.all_passed);
    CHECK(r.kv.at("nondegen.ok") == "fail");
    CHECK(r.has("nondegen.witness"));
    CHECK(r.kv.at("stability.status") == "refused_degenerate_linearization");
    CHECK(r.kv.at("complex.status") == "refused_degenerate_linearization");
    CHECK(r.kv.at("theta_gtr.status") == "refused_degenerate_linearization");
    // Stages independent of the linearization still run.
    CHECK(r.kv.at("moment.ok") == "pass");
    CHECK(r.has("chern.inverse_ok"));
}

TEST_CASE("stage selection, windows, and spec validation") {
    JobSpec base;
    base.quiver_text = qvtest::jordan_file(1, 1);
    base.samples = 2;

    JobSpec only_describe = base;
    only_describe.stages = {"describe"};
    Report r = run_pipeline(only_describe);
    CHECK(r.has("describe.alpha"));
    CHECK(!r.has("moment.ok"));

    JobSpec bad_stage = base;
    bad_stage.stages = {"mystery"};
    CHECK_THROWS_AS(run_pipeline(bad_stage), std::invalid_argument);

    JobSpec bad_window = base;
    bad_window.window_a = 2;
    bad_window.window_b = 2;
    CHECK_THROWS_AS(run_pipeline(bad_window), std::invalid_argument);

    JobSpec wide = base;
    wide.window_a = -1;
    wide.window_b = 2;
    wide.stages = {"theta_gtr"}; // fine: only complex/chern force [0,2]
    const Report wr = run_pipeline(wide);
    CHECK(wr.has("theta_gtr.C"));

    JobSpec wide_complex = wide;
    wide_complex.stages = {"complex"};
    CHECK_THROWS_AS(run_pipeline(wide_complex), std::invalid_argument);

    JobSpec no_samples = base;
    no_samples.samples = 0;
    no_samples.stages = {"moment"};
    const Report nr = run_pipeline(no_samples);
    CHECK(nr.kv.at("moment.samples") == "0");

    JobSpec bad_text = base;
    bad_text.quiver_text = "vertex inf\n";
    CHECK_THROWS_AS(run_pipeline(bad_text), std::invalid_argument);
}

TEST_CASE("stage list is the documented fixed order") {
    REQUIRE(kPipelineStages.size() == 7);
    CHECK(kPipelineStages.front() == "describe");
    CHECK(kPipelineStages.back() == "chern");
}
