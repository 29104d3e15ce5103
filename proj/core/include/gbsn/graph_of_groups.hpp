#ifndef GBSN_GRAPH_OF_GROUPS_HPP
#define GBSN_GRAPH_OF_GROUPS_HPP

#include <map>
#include <optional>
#include <string>

#include "gbsn/matrix.hpp"

namespace gbsn {

struct Vertex {
    std::string id;
};

/* Oriented edge with two injective inclusions of the edge lattice: alpha into
 * the origin vertex lattice, omega into the terminus lattice. Loops and
 * parallel edges are allowed. */
struct Edge {
    std::string id;
    std::string from;
    std::string to;
    IntMatrix alpha;
    IntMatrix omega;
};

/* Finite connected graph with all vertex and edge groups free abelian of the
 * same rank. Declaration order of vertices and edges is significant: it fixes
 * spanning-tree construction and generator ordering. */
struct GraphOfGroups {
    std::size_t rank = 0;
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;

    std::optional<std::size_t> vertex_index(const std::string& id) const;
};

struct ValidationIssue {
    std::string category; // EmptyGraph, DuplicateId, UnknownVertex, RankMismatch, SingularInclusion, Disconnected
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

/* Structural checks; reports the first failing item per category. */
ValidationReport validate(const GraphOfGroups& g);

/* Deterministic breadth-first spanning tree rooted at the lexicographically
 * least vertex id (ties between edges broken by declaration order), together
 * with rational path matrices carrying each vertex's coordinates into base
 * coordinates. For every tree edge e from u to w, P_u^{-1} P_w equals the
 * edge's change of coordinates alpha_e omega_e^{-1} exactly. */
struct SpanningData {
    std::size_t base = 0;                 // vertex index
    std::vector<std::size_t> visit_order; // vertex indices in discovery order
    std::vector<bool> in_tree;            // indexed by edge declaration order
    std::vector<RatMatrix> path;          // indexed by vertex declaration order
};

SpanningData spanning_tree(const GraphOfGroups& g,
                           std::optional<std::string> base_override = std::nullopt);

/* Finite presentation on the vertex lattice bases plus one stable letter per
 * edge: lattice commutators, one conjugation relation per edge basis vector,
 * and trivialized stable letters on tree edges. */
struct Presentation {
    std::vector<std::string> generators;
    std::vector<std::string> relators;
};

Presentation presentation(const GraphOfGroups& g);

} // namespace gbsn

#endif
