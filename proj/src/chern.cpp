#include "qv/chern.hpp"

#include <algorithm>
#include <stdexcept>

namespace qv {

namespace {

int side_index(Side s) { return s == Side::Left ? 0 : 1; }

/// Merges two sorted monomials, adding exponents.
ChernMonomial merge_monomials(const ChernMonomial& a, const ChernMonomial& b) {
    ChernMonomial out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) out.push_back(a[i++]);
        else if (b[j].first < a[i].first) out.push_back(b[j++]);
        else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i; ++j;
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return out;
}

// ---- formal-root polynomials (dense exponent vectors, lex-ordered map) ----

using RootMono = std::vector<int>;
using RootPoly = std::map<RootMono, Int>;

int root_degree(const RootMono& m) {
    int d = 0;
    for (int e : m) d += e;
    return d;
}

void root_add(RootPoly& p, const RootMono& m, const Int& c) {
    if (sgn(c) == 0) return;
    auto it = p.find(m);
    if (it == p.end()) p.emplace(m, c);
    else {
        it->second += c;
        if (sgn(it->second) == 0) p.erase(it);
    }
}

RootPoly root_mul(const RootPoly& a, const RootPoly& b, int nvars, int cap) {
    RootPoly out;
    RootMono m(static_cast<std::size_t>(nvars));
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            int deg = 0;
            for (int v = 0; v < nvars; ++v) {
                m[static_cast<std::size_t>(v)] = ma[static_cast<std::size_t>(v)] +
                                                 mb[static_cast<std::size_t>(v)];
                deg += m[static_cast<std::size_t>(v)];
            }
            if (deg > cap) continue;
            root_add(out, m, ca * cb);
        }
    return out;
}

/// Elementary symmetric polynomial e_k of the variables in [lo, hi).
RootPoly elementary_symmetric(int nvars, int lo, int hi, int k) {
    std::vector<RootPoly> dp(static_cast<std::size_t>(k) + 1);
    dp[0].emplace(RootMono(static_cast<std::size_t>(nvars)), Int(1));
    for (int v = lo; v < hi; ++v)
        for (int j = std::min(k, v - lo + 1); j >= 1; --j) {
            for (const auto& [m, c] : dp[static_cast<std::size_t>(j) - 1]) {
                RootMono m2 = m;
                m2[static_cast<std::size_t>(v)] += 1;
                root_add(dp[static_cast<std::size_t>(j)], m2, c);
            }
        }
    return dp[static_cast<std::size_t>(k)];
}

} // namespace

// ---------------------------------------------------------------------------
// GradedClass basics.
// ---------------------------------------------------------------------------

int monomial_weight(const ChernMonomial& m) {
    int w = 0;
    for (const auto& [v, e] : m) w += v.k * e;
    return w;
}

int monomial_weight(const ChernMonomial& m, int side) {
    int w = 0;
    for (const auto& [v, e] : m)
        if (v.side == side) w += v.k * e;
    return w;
}

ChernMonomial monomial_side(const ChernMonomial& m, int side) {
    ChernMonomial out;
    for (const auto& [v, e] : m)
        if (v.side == side) out.emplace_back(v, e);
    return out;
}

GradedClass::GradedClass(int trunc) : trunc_(trunc) {
    if (trunc < 0) throw std::invalid_argument("GradedClass: negative truncation");
}

GradedClass GradedClass::unit(int trunc) {
    GradedClass g(trunc);
    g.terms_.emplace(ChernMonomial{}, Int(1));
    return g;
}

Int GradedClass::coefficient(const ChernMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Int(0) : it->second;
}

void GradedClass::add_term(const ChernMonomial& m, const Int& c) {
    if (sgn(c) == 0 || monomial_weight(m) > trunc_) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) terms_.emplace(m, c);
    else {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

GradedClass operator+(const GradedClass& a, const GradedClass& b) {
    if (a.trunc_ != b.trunc_) throw std::invalid_argument("GradedClass: truncation mismatch");
    GradedClass out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
}

GradedClass operator-(const GradedClass& a, const GradedClass& b) {
    if (a.trunc_ != b.trunc_) throw std::invalid_argument("GradedClass: truncation mismatch");
    GradedClass out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, Int(-c));
    return out;
}

GradedClass operator*(const GradedClass& a, const GradedClass& b) {
    if (a.trunc_ != b.trunc_) throw std::invalid_argument("GradedClass: truncation mismatch");
    GradedClass out(a.trunc_);
    for (const auto& [ma, ca] : a.terms_) {
        const int wa = monomial_weight(ma);
        for (const auto& [mb, cb] : b.terms_) {
            if (wa + monomial_weight(mb) > a.trunc_) continue;
            out.add_term(merge_monomials(ma, mb), ca * cb);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Core operations.
// ---------------------------------------------------------------------------

GradedClass total_chern(const BundleSymbol& b, int trunc) {
    if (b.rank < 0) throw std::invalid_argument("total_chern: negative rank");
    GradedClass g = GradedClass::unit(trunc);
    for (int k = 1; k <= std::min(b.rank, trunc); ++k)
        g.add_term({{ChernVar{side_index(b.side), b.name, k}, 1}}, Int(1));
    return g;
}

GradedClass whitney(const GradedClass& a, const GradedClass& b) {
    if (a.truncation() != b.truncation())
        throw std::invalid_argument("whitney: truncation mismatch");
    return a * b;
}

GradedClass segre_inverse(const GradedClass& a) {
    if (!(a.coefficient({}) == 1))
        throw std::invalid_argument("segre_inverse: constant term must be 1");
    const GradedClass one = GradedClass::unit(a.truncation());
    const GradedClass m = one - a;  // weight >= 1 part, negated
    GradedClass out = one;
    GradedClass pow = one;
    for (int j = 1; j <= a.truncation(); ++j) {
        pow = pow * m;
        if (pow.is_zero()) break;
        out = out + pow;
    }
    return out;
}

GradedClass chern_tensor(const BundleSymbol& e, const BundleSymbol& f, int trunc) {
    if (e.rank < 0 || f.rank < 0) throw std::invalid_argument("chern_tensor: negative rank");
    if (e.name == f.name && e.side == f.side)
        throw std::invalid_argument("chern_tensor: bundle symbols must be distinct");
    if (e.rank == 0 || f.rank == 0) return GradedClass::unit(trunc);  // zero bundle
    GradedClass result(trunc);  // the weight-0 reduction contributes the constant 1

    const int ne = e.rank, nf = f.rank, nvars = ne + nf;
    const int cap = trunc;

    // prod_{p,q} (1 + x_p + y_q), truncated.
    RootPoly prod;
    prod.emplace(RootMono(static_cast<std::size_t>(nvars)), Int(1));
    for (int p = 0; p < ne; ++p)
        for (int q = 0; q < nf; ++q) {
            RootPoly factor;
            RootMono one(static_cast<std::size_t>(nvars));
            factor.emplace(one, Int(1));
            RootMono xm = one;
            xm[static_cast<std::size_t>(p)] = 1;
            factor.emplace(xm, Int(1));
            RootMono ym = one;
            ym[static_cast<std::size_t>(ne + q)] = 1;
            factor.emplace(ym, Int(1));
            prod = root_mul(prod, factor, nvars, cap);
        }

    // Homogeneous components, reduced separately so the truncation never
    // interferes with the leading-term subtraction.
    std::map<int, RootPoly> homog;
    for (const auto& [m, c] : prod) homog[root_degree(m)].emplace(m, c);

    for (auto& [w, pw] : homog) {
        (void)w;
        long long guard = 0;
        while (!pw.empty()) {
            if (++guard > 2000000)
                throw std::logic_error("chern_tensor: symmetric reduction failed to terminate");
            const auto lead = *pw.rbegin();  // lex-greatest monomial
            const RootMono& m = lead.first;
            // Symmetric polynomials have weakly decreasing leading exponents
            // within each root family.
            for (int v = 1; v < ne; ++v)
                if (m[static_cast<std::size_t>(v - 1)] < m[static_cast<std::size_t>(v)])
                    throw std::logic_error("chern_tensor: symmetric reduction failure");
            for (int v = ne + 1; v < nvars; ++v)
                if (m[static_cast<std::size_t>(v - 1)] < m[static_cast<std::size_t>(v)])
                    throw std::logic_error("chern_tensor: symmetric reduction failure");

            // Conjugate-partition exponents: the x-part lambda maps to the
            // product of e_{lambda'_j}; same for the y-part.
            std::map<ChernVar, int> vars;
            RootPoly q;
            q.emplace(RootMono(static_cast<std::size_t>(nvars)), Int(1));
            const int lx = m[0];
            for (int j = 1; j <= lx; ++j) {
                int cnt = 0;
                for (int v = 0; v < ne; ++v)
                    if (m[static_cast<std::size_t>(v)] >= j) ++cnt;
                vars[ChernVar{side_index(e.side), e.name, cnt}] += 1;
                q = root_mul(q, elementary_symmetric(nvars, 0, ne, cnt), nvars, cap);
            }
            const int ly = m[static_cast<std::size_t>(ne)];
            for (int j = 1; j <= ly; ++j) {
                int cnt = 0;
                for (int v = ne; v < nvars; ++v)
                    if (m[static_cast<std::size_t>(v)] >= j) ++cnt;
                vars[ChernVar{side_index(f.side), f.name, cnt}] += 1;
                q = root_mul(q, elementary_symmetric(nvars, ne, nvars, cnt), nvars, cap);
            }

            const Int coef = lead.second;
            ChernMonomial mono(vars.begin(), vars.end());
            result.add_term(mono, coef);
            for (const auto& [qm, qc] : q) root_add(pw, qm, Int(-coef * qc));
        }
    }
    return result;
}

GradedClass chern_of_complex(const std::vector<RTerm>& terms, int trunc) {
    GradedClass out = GradedClass::unit(trunc);
    for (const RTerm& t : terms) {
        if (t.degree < -1 || t.degree > 1)
            throw std::invalid_argument("chern_of_complex: degree must be -1, 0 or +1");
        GradedClass c(trunc);
        if (t.left.rank == 0 && t.right.rank == 0) c = GradedClass::unit(trunc);
        else if (t.right.rank == 0) c = total_chern(t.left, trunc);
        else if (t.left.rank == 0) c = total_chern(t.right, trunc);
        else c = chern_tensor(t.left, t.right, trunc);
        out = out * (t.degree == 0 ? c : segre_inverse(c));
    }
    return out;
}

GradedClass top_class(const GradedClass& a, int d) {
    GradedClass out(a.truncation());
    for (const auto& [m, c] : a.terms())
        if (monomial_weight(m) == d) out.add_term(m, c);
    return out;
}

std::vector<std::pair<GradedClass, GradedClass>> kunneth_decompose(const GradedClass& a) {
    std::map<ChernMonomial, GradedClass> byright;
    for (const auto& [m, c] : a.terms()) {
        const ChernMonomial right = monomial_side(m, 1);
        auto it = byright.find(right);
        if (it == byright.end())
            it = byright.emplace(right, GradedClass(a.truncation())).first;
        it->second.add_term(monomial_side(m, 0), c);
    }
    std::vector<std::pair<GradedClass, GradedClass>> out;
    out.reserve(byright.size());
    for (const auto& [right, left] : byright) {
        GradedClass rc(a.truncation());
        rc.add_term(right, Int(1));
        out.emplace_back(left, rc);
    }
    return out;
}

std::vector<GradedClass> kunneth_left_components(const GradedClass& a) {
    std::vector<GradedClass> out;
    for (auto& [left, right] : kunneth_decompose(a)) {
        (void)right;
        out.push_back(left);
    }
    return out;
}

std::string class_str(const GradedClass& a) {
    if (a.is_zero()) return "0";
    // Graded-lex order: weight first, then the map's variable order.
    std::vector<std::pair<ChernMonomial, Int>> terms(a.terms().begin(), a.terms().end());
    std::stable_sort(terms.begin(), terms.end(),
                     [](const auto& x, const auto& y) {
                         return monomial_weight(x.first) < monomial_weight(y.first);
                     });
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms) {
        Int mag = c < 0 ? Int(-c) : c;
        if (first) {
            if (c < 0) out += "-";
            first = false;
        } else {
            out += c < 0 ? " - " : " + ";
        }
        std::string mono;
        for (const auto& [v, e] : m) {
            if (!mono.empty()) mono += "*";
            mono += "c" + std::to_string(v.k) + "(" + v.bundle + ")";
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty()) out += mag.get_str();
        else {
            if (!(mag == 1)) out += mag.get_str() + "*";
            out += mono;
        }
    }
    return out;
}

std::vector<RTerm> standard_complex_terms(const DoubledQuiver& dq, const DimVec& alpha) {
    const Quiver& g = dq.graph;
    if (alpha.size() != g.num_vertices())
        throw std::invalid_argument("standard_complex_terms: dimension vector size mismatch");
    const int fr = g.vertex_index(kFramingVertex);

    auto e_symbol = [&](int i) {
        return BundleSymbol{"E[" + g.vertex(i) + "]", i == fr ? 0 : alpha.at(i), Side::Left};
    };
    auto f_symbol = [&](int i, int n) {
        return BundleSymbol{"F[" + g.vertex(i) + "," + std::to_string(n) + "]",
                            i == fr ? 0 : alpha.at(i), Side::Right};
    };

    std::vector<RTerm> terms;
    for (int i = 0; i < g.num_vertices(); ++i)
        if (i != fr) terms.push_back({e_symbol(i), f_symbol(i, 0), -1});
    for (int h = 0; h < g.num_arrows(); ++h) {
        const Arrow& ar = g.arrow(h);
        terms.push_back({e_symbol(ar.src), f_symbol(ar.tgt, 1), 0});
    }
    for (int i = 0; i < g.num_vertices(); ++i)
        if (i != fr) terms.push_back({e_symbol(i), f_symbol(i, 2), +1});
    return terms;
}

} // namespace qv
