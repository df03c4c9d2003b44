// qv-bench: times the subrepresentation-enumeration kernel in its serial and
// OpenMP-parallel configurations on the same inputs and checks that both
// return the identical verdict and witness.  The parallel kernel merges
// per-thread results deterministically, so agreement is exact, not
// approximate.  Usage: qv-bench [samples-per-instance]  (default 4)

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#ifdef QV_HAVE_OPENMP
#include <omp.h>
#endif

#include "qv/rep.hpp"
#include "qv/stability.hpp"

using namespace qv;

namespace {

struct Instance {
    std::string label;
    std::shared_ptr<const DoubledQuiver> dq;
    DimVec alpha;
    Theta th;
};

Instance jordan_instance(int v, int w) {
    Quiver q0;
    q0.add_vertex("1");
    q0.add_arrow("loop", "1", "1");
    const Quiver framed = crawley_boevey(q0, DimVec({w})).first;
    Instance inst;
    inst.label = "jordan v=" + std::to_string(v) + " w=" + std::to_string(w);
    inst.dq = std::make_shared<const DoubledQuiver>(double_quiver(framed));
    inst.alpha = cb_dimension(DimVec({v}));
    inst.th = cb_theta(Theta{{1}}, DimVec({v}));
    return inst;
}

Instance a2_instance(int v1, int v2) {
    Quiver q0;
    q0.add_vertex("1");
    q0.add_vertex("2");
    q0.add_arrow("a", "1", "2");
    const Quiver framed = crawley_boevey(q0, DimVec({1, 0})).first;
    Instance inst;
    inst.label = "a2 v=(" + std::to_string(v1) + "," + std::to_string(v2) + ") w=(1,0)";
    inst.dq = std::make_shared<const DoubledQuiver>(double_quiver(framed));
    inst.alpha = cb_dimension(DimVec({v1, v2}));
    inst.th = cb_theta(Theta{{1, 1}}, DimVec({v1, v2}));
    return inst;
}

double run_ms(const CBRep<Fp>& x, const Theta& th, std::uint32_t p, bool parallel,
              BruteVerdict& out) {
    const auto t0 = std::chrono::steady_clock::now();
    out = is_stable_bruteforce(x, th, p, 100000000UL, parallel);
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    const int samples = argc > 1 ? std::atoi(argv[1]) : 4;
    const std::uint32_t p = 101;
    const FieldCtx<Fp> ctx{p};

#ifdef QV_HAVE_OPENMP
    std::cout << "openmp threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "openmp: not available (parallel path falls back to serial)\n";
#endif
    std::cout << "kernel: subrepresentation enumeration over F_" << p << "\n\n";

    const std::vector<Instance> instances = {
        jordan_instance(2, 1),
        jordan_instance(2, 2),
        jordan_instance(3, 1),
        a2_instance(2, 2),
    };

    bool all_agree = true;
    for (const Instance& inst : instances) {
        double serial_total = 0, parallel_total = 0;
        int agree = 0;
        for (int i = 0; i < samples; ++i) {
            const CBRep<Fp> x =
                sample_moment_fiber<Fp>(inst.dq, inst.alpha, 7000 + static_cast<unsigned>(i), ctx);
            BruteVerdict a, b;
            serial_total += run_ms(x, inst.th, p, false, a);
            parallel_total += run_ms(x, inst.th, p, true, b);
            const bool same = a.verdict == b.verdict && a.witness_dim == b.witness_dim &&
                              a.witness_sign == b.witness_sign;
            agree += same ? 1 : 0;
        }
        all_agree = all_agree && agree == samples;
        std::cout << inst.label << ": samples " << samples << ", serial "
                  << serial_total << " ms, parallel " << parallel_total << " ms, speedup "
                  << (parallel_total > 0 ? serial_total / parallel_total : 0.0) << "x, agree "
                  << agree << "/" << samples << "\n";
    }
    std::cout << "\n" << (all_agree ? "all verdicts agree" : "VERDICT MISMATCH") << "\n";
    return all_agree ? 0 : 1;
}
