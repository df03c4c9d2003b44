#pragma once

// Combinatorial quiver constructions: doubling with the sign function eps,
// Crawley-Boevey framing, graded tripling over an integer window [a,b], and
// dimension-vector arithmetic.
//
// Identifiers are opaque strings, unique per quiver.  Generated names are
// deterministic so that reports are reproducible:
//   - reversal of arrow h:            "bar:<h>"
//   - framing arrow number j into i:  "cb:<i>:<j>"      (j starts at 1)
//   - slice-n copy of arrow h:        "<h>@<n>"
//   - slice-n shift arrow at vertex i:"e:<i>@<n>"
//   - slice-n copy of vertex i:       "<i>@<n>"
// The framing vertex is always called "inf"; user input must not claim it.

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace qv {

using VertexId = std::string;
using ArrowId = std::string;

struct Arrow {
    ArrowId id;
    int src = 0; // vertex index
    int tgt = 0;
};

inline const VertexId kFramingVertex = "inf";

class Quiver {
public:
    int add_vertex(const VertexId& id);
    int add_arrow(const ArrowId& id, const VertexId& src, const VertexId& tgt);

    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    int num_arrows() const { return static_cast<int>(arrows_.size()); }

    const VertexId& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
    const Arrow& arrow(int i) const { return arrows_[static_cast<std::size_t>(i)]; }

    std::optional<int> find_vertex(const VertexId& id) const;
    std::optional<int> find_arrow(const ArrowId& id) const;
    int vertex_index(const VertexId& id) const; // throws if absent
    int arrow_index(const ArrowId& id) const;   // throws if absent

private:
    std::vector<VertexId> vertices_;
    std::vector<Arrow> arrows_;
    std::unordered_map<VertexId, int> vertex_lookup_;
    std::unordered_map<ArrowId, int> arrow_lookup_;
};

/// Doubled quiver: same vertices, arrow set H = Ω ⊎ Ω̄ with the original
/// arrows first (eps +1) and their reversals after (eps -1), so
/// bar(i) = i ± num_original and stripping the tail recovers the input.
struct DoubledQuiver {
    Quiver graph;
    std::vector<int> bar; // arrow index -> arrow index, fixed-point-free involution
    std::vector<int> eps; // +1 on Ω, -1 on Ω̄
    int num_original = 0;

    Quiver original() const;
};

DoubledQuiver double_quiver(const Quiver& q);

/// Dimension vector aligned with a quiver's vertex order.
struct DimVec {
    std::vector<int> d;

    DimVec() = default;
    explicit DimVec(std::vector<int> dims);
    static DimVec zeros(int n) { return DimVec(std::vector<int>(static_cast<std::size_t>(n), 0)); }

    int size() const { return static_cast<int>(d.size()); }
    int at(int i) const { return d[static_cast<std::size_t>(i)]; }
    int total() const;
    bool is_zero() const { return total() == 0; }

    friend bool operator==(const DimVec& a, const DimVec& b) { return a.d == b.d; }
    friend bool operator!=(const DimVec& a, const DimVec& b) { return !(a == b); }
};

/// Componentwise order: true when every entry of a is <= the matching entry of b.
bool leq(const DimVec& a, const DimVec& b);

/// Frame q0 by w: add the vertex "inf" and w_i arrows "cb:<i>:<j>" from inf
/// to each vertex i.  Returns the framed quiver and the framing vertex id.
std::pair<Quiver, VertexId> crawley_boevey(const Quiver& q0, const DimVec& w);

/// Extend v over the framed quiver: v on the original vertices, 1 at "inf".
DimVec cb_dimension(const DimVec& v);

/// Structured view of one graded-triple arrow.
struct GtrArrow {
    enum class Kind { Doubled, Shift };
    Kind kind = Kind::Doubled;
    int base = 0;  // arrow index in the double (Doubled) or vertex index (Shift)
    int slice = 0; // n: the arrow runs from slice n to slice n+1
    int eps = 0;   // sign of the base arrow (Doubled); 0 for Shift
};

/// Graded triple of a doubled quiver over the window [a,b]: vertices (i,n)
/// for n in [a,b] (slice-major order), arrows (h,n) and shift arrows (i,n)
/// for n in [a,b-1], each running from slice n to slice n+1.  Within a slice
/// the doubled copies come first, then the shift arrows.
struct GtrQuiver {
    DoubledQuiver base;
    int a = 0;
    int b = 0;
    Quiver graph;
    std::vector<GtrArrow> info; // parallel to graph arrow order

    int slices() const { return b - a + 1; }
    int vertex_at(int base_vertex, int n) const {
        return (n - a) * base.graph.num_vertices() + base_vertex;
    }

    int arrows_per_slice() const { return base.graph.num_arrows() + base.graph.num_vertices(); }
    /// Index of the slice-n copy of doubled arrow h (runs n -> n+1).
    int a_arrow(int h, int n) const { return (n - a) * arrows_per_slice() + h; }
    /// Index of the slice-n shift arrow at base vertex i (runs n -> n+1).
    int e_arrow(int i, int n) const {
        return (n - a) * arrows_per_slice() + base.graph.num_arrows() + i;
    }
};

GtrQuiver graded_triple(const DoubledQuiver& d, int a, int b);

/// Structural equality: same vertex list, same arrow list (ids + endpoints),
/// in the same order.
bool same_quiver(const Quiver& a, const Quiver& b);

/// Constant extension across slices: value alpha_i at every vertex (i,n).
DimVec constant_gtr_dimension(const DimVec& alpha, int a, int b);

} // namespace qv
