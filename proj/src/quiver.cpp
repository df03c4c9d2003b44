#include "qv/quiver.hpp"

#include <stdexcept>

namespace qv {

int Quiver::add_vertex(const VertexId& id) {
    if (id.empty()) throw std::invalid_argument("quiver: empty vertex id");
    if (vertex_lookup_.count(id))
        throw std::invalid_argument("quiver: duplicate vertex id '" + id + "'");
    const int idx = num_vertices();
    vertices_.push_back(id);
    vertex_lookup_.emplace(id, idx);
    return idx;
}

int Quiver::add_arrow(const ArrowId& id, const VertexId& src, const VertexId& tgt) {
    if (id.empty()) throw std::invalid_argument("quiver: empty arrow id");
    if (arrow_lookup_.count(id))
        throw std::invalid_argument("quiver: duplicate arrow id '" + id + "'");
    const int idx = num_arrows();
    arrows_.push_back(Arrow{id, vertex_index(src), vertex_index(tgt)});
    arrow_lookup_.emplace(id, idx);
    return idx;
}

std::optional<int> Quiver::find_vertex(const VertexId& id) const {
    const auto it = vertex_lookup_.find(id);
    if (it == vertex_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> Quiver::find_arrow(const ArrowId& id) const {
    const auto it = arrow_lookup_.find(id);
    if (it == arrow_lookup_.end()) return std::nullopt;
    return it->second;
}

int Quiver::vertex_index(const VertexId& id) const {
    const auto idx = find_vertex(id);
    if (!idx) throw std::invalid_argument("quiver: unknown vertex '" + id + "'");
    return *idx;
}

int Quiver::arrow_index(const ArrowId& id) const {
    const auto idx = find_arrow(id);
    if (!idx) throw std::invalid_argument("quiver: unknown arrow '" + id + "'");
    return *idx;
}

Quiver DoubledQuiver::original() const {
    Quiver q;
    for (int i = 0; i < graph.num_vertices(); ++i) q.add_vertex(graph.vertex(i));
    for (int h = 0; h < num_original; ++h) {
        const Arrow& ar = graph.arrow(h);
        q.add_arrow(ar.id, graph.vertex(ar.src), graph.vertex(ar.tgt));
    }
    return q;
}

DoubledQuiver double_quiver(const Quiver& q) {
    DoubledQuiver d;
    d.num_original = q.num_arrows();
    for (int i = 0; i < q.num_vertices(); ++i) d.graph.add_vertex(q.vertex(i));
    for (int h = 0; h < q.num_arrows(); ++h) {
        const Arrow& ar = q.arrow(h);
        d.graph.add_arrow(ar.id, q.vertex(ar.src), q.vertex(ar.tgt));
    }
    for (int h = 0; h < q.num_arrows(); ++h) {
        const Arrow& ar = q.arrow(h);
        d.graph.add_arrow("bar:" + ar.id, q.vertex(ar.tgt), q.vertex(ar.src));
    }
    const int m = d.num_original;
    d.bar.resize(static_cast<std::size_t>(2 * m));
    d.eps.resize(static_cast<std::size_t>(2 * m));
    for (int h = 0; h < m; ++h) {
        d.bar[static_cast<std::size_t>(h)] = h + m;
        d.bar[static_cast<std::size_t>(h + m)] = h;
        d.eps[static_cast<std::size_t>(h)] = +1;
        d.eps[static_cast<std::size_t>(h + m)] = -1;
    }
    return d;
}

DimVec::DimVec(std::vector<int> dims) : d(std::move(dims)) {
    for (int x : d)
        if (x < 0) throw std::invalid_argument("dimension vector: negative entry");
}

int DimVec::total() const {
    int t = 0;
    for (int x : d) t += x;
    return t;
}

bool leq(const DimVec& a, const DimVec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dimension vectors: size mismatch");
    for (int i = 0; i < a.size(); ++i)
        if (a.at(i) > b.at(i)) return false;
    return true;
}

std::pair<Quiver, VertexId> crawley_boevey(const Quiver& q0, const DimVec& w) {
    if (w.size() != q0.num_vertices())
        throw std::invalid_argument("crawley_boevey: framing vector size mismatch");
    if (w.is_zero())
        throw std::invalid_argument("crawley_boevey: framing dimension vector is identically zero");
    if (q0.find_vertex(kFramingVertex))
        throw std::invalid_argument("crawley_boevey: base quiver already uses the reserved vertex 'inf'");
    Quiver cb;
    for (int i = 0; i < q0.num_vertices(); ++i) cb.add_vertex(q0.vertex(i));
    const int inf = cb.add_vertex(kFramingVertex);
    (void)inf;
    for (int h = 0; h < q0.num_arrows(); ++h) {
        const Arrow& ar = q0.arrow(h);
        cb.add_arrow(ar.id, q0.vertex(ar.src), q0.vertex(ar.tgt));
    }
    for (int i = 0; i < q0.num_vertices(); ++i)
        for (int j = 1; j <= w.at(i); ++j)
            cb.add_arrow("cb:" + q0.vertex(i) + ":" + std::to_string(j), kFramingVertex,
                         q0.vertex(i));
    return {cb, kFramingVertex};
}

DimVec cb_dimension(const DimVec& v) {
    DimVec alpha = v;
    alpha.d.push_back(1);
    return alpha;
}

GtrQuiver graded_triple(const DoubledQuiver& d, int a, int b) {
    if (a >= b) throw std::invalid_argument("graded_triple: window requires a < b");
    GtrQuiver g;
    g.base = d;
    g.a = a;
    g.b = b;
    const int nv = d.graph.num_vertices();
    for (int n = a; n <= b; ++n)
        for (int i = 0; i < nv; ++i)
            g.graph.add_vertex(d.graph.vertex(i) + "@" + std::to_string(n));
    for (int n = a; n < b; ++n) {
        for (int h = 0; h < d.graph.num_arrows(); ++h) {
            const Arrow& ar = d.graph.arrow(h);
            g.graph.add_arrow(ar.id + "@" + std::to_string(n),
                              g.graph.vertex(g.vertex_at(ar.src, n)),
                              g.graph.vertex(g.vertex_at(ar.tgt, n + 1)));
            g.info.push_back(GtrArrow{GtrArrow::Kind::Doubled, h, n,
                                      d.eps[static_cast<std::size_t>(h)]});
        }
        for (int i = 0; i < nv; ++i) {
            g.graph.add_arrow("e:" + d.graph.vertex(i) + "@" + std::to_string(n),
                              g.graph.vertex(g.vertex_at(i, n)),
                              g.graph.vertex(g.vertex_at(i, n + 1)));
            g.info.push_back(GtrArrow{GtrArrow::Kind::Shift, i, n, 0});
        }
    }
    return g;
}

bool same_quiver(const Quiver& a, const Quiver& b) {
    if (a.num_vertices() != b.num_vertices() || a.num_arrows() != b.num_arrows()) return false;
    for (int i = 0; i < a.num_vertices(); ++i)
        if (a.vertex(i) != b.vertex(i)) return false;
    for (int h = 0; h < a.num_arrows(); ++h) {
        const Arrow& x = a.arrow(h);
        const Arrow& y = b.arrow(h);
        if (x.id != y.id || x.src != y.src || x.tgt != y.tgt) return false;
    }
    return true;
}

DimVec constant_gtr_dimension(const DimVec& alpha, int a, int b) {
    if (a >= b) throw std::invalid_argument("constant_gtr_dimension: window requires a < b");
    DimVec g;
    for (int n = a; n <= b; ++n)
        for (int i = 0; i < alpha.size(); ++i) g.d.push_back(alpha.at(i));
    return g;
}

} // namespace qv
