#include "gbsn/graph_of_groups.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace gbsn {

std::optional<std::size_t> GraphOfGroups::vertex_index(const std::string& id) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].id == id) return i;
    return std::nullopt;
}

ValidationReport validate(const GraphOfGroups& g) {
    ValidationReport rep;
    auto add_once = [&](const std::string& cat, const std::string& detail) {
        for (const auto& i : rep.issues)
            if (i.category == cat) return;
        rep.issues.push_back({cat, detail});
    };
    if (g.rank == 0) add_once("RankMismatch", "rank must be at least 1");
    if (g.vertices.empty()) {
        add_once("EmptyGraph", "graph has no vertices");
        return rep;
    }
    {
        std::set<std::string> ids;
        for (const auto& v : g.vertices)
            if (!ids.insert(v.id).second) add_once("DuplicateId", "vertex " + v.id);
        std::set<std::string> eids;
        for (const auto& e : g.edges)
            if (!eids.insert(e.id).second) add_once("DuplicateId", "edge " + e.id);
    }
    bool endpoints_ok = true;
    for (const auto& e : g.edges) {
        if (!g.vertex_index(e.from)) {
            add_once("UnknownVertex", "edge " + e.id + " origin " + e.from);
            endpoints_ok = false;
        }
        if (!g.vertex_index(e.to)) {
            add_once("UnknownVertex", "edge " + e.id + " terminus " + e.to);
            endpoints_ok = false;
        }
        if (e.alpha.rows() != g.rank || e.alpha.cols() != g.rank ||
            e.omega.rows() != g.rank || e.omega.cols() != g.rank) {
            add_once("RankMismatch", "edge " + e.id + " inclusion shape");
            continue;
        }
        if (e.alpha.determinant() == 0)
            add_once("SingularInclusion", "edge " + e.id + " origin inclusion");
        if (e.omega.determinant() == 0)
            add_once("SingularInclusion", "edge " + e.id + " terminus inclusion");
    }
    if (endpoints_ok) {
        std::vector<bool> seen(g.vertices.size(), false);
        std::deque<std::size_t> queue{0};
        seen[0] = true;
        while (!queue.empty()) {
            std::size_t u = queue.front();
            queue.pop_front();
            for (const auto& e : g.edges) {
                std::size_t a = *g.vertex_index(e.from);
                std::size_t b = *g.vertex_index(e.to);
                if (a == u && !seen[b]) {
                    seen[b] = true;
                    queue.push_back(b);
                }
                if (b == u && !seen[a]) {
                    seen[a] = true;
                    queue.push_back(a);
                }
            }
        }
        for (std::size_t i = 0; i < g.vertices.size(); ++i)
            if (!seen[i]) {
                add_once("Disconnected", "vertex " + g.vertices[i].id + " unreachable");
                break;
            }
    }
    return rep;
}

SpanningData spanning_tree(const GraphOfGroups& g, std::optional<std::string> base_override) {
    ValidationReport rep = validate(g);
    if (!rep.ok())
        throw precondition_error("graph failed validation: " + rep.issues.front().category +
                                 " (" + rep.issues.front().detail + ")");
    SpanningData sp;
    std::size_t base = 0;
    if (base_override) {
        auto idx = g.vertex_index(*base_override);
        if (!idx) throw precondition_error("base vertex not found: " + *base_override);
        base = *idx;
    } else {
        for (std::size_t i = 1; i < g.vertices.size(); ++i)
            if (g.vertices[i].id < g.vertices[base].id) base = i;
    }
    sp.base = base;
    sp.in_tree.assign(g.edges.size(), false);
    sp.path.assign(g.vertices.size(), RatMatrix());
    std::vector<bool> seen(g.vertices.size(), false);
    sp.path[base] = RatMatrix::identity(g.rank);
    seen[base] = true;
    sp.visit_order.push_back(base);
    std::deque<std::size_t> queue{base};
    while (!queue.empty()) {
        std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
            const Edge& e = g.edges[ei];
            std::size_t a = *g.vertex_index(e.from);
            std::size_t b = *g.vertex_index(e.to);
            if (a == u && !seen[b]) {
                sp.in_tree[ei] = true;
                seen[b] = true;
                sp.path[b] = sp.path[a] * (RatMatrix::from(e.alpha) * rat_inverse(e.omega));
                sp.visit_order.push_back(b);
                queue.push_back(b);
            } else if (b == u && !seen[a]) {
                sp.in_tree[ei] = true;
                seen[a] = true;
                sp.path[a] = sp.path[b] * (RatMatrix::from(e.omega) * rat_inverse(e.alpha));
                sp.visit_order.push_back(a);
                queue.push_back(a);
            }
        }
    }
    return sp;
}

namespace {

std::string power_word(const std::vector<std::string>& letters, const IntMatrix& col) {
    std::ostringstream os;
    bool any = false;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        const Int& c = col(i, 0);
        if (c == 0) continue;
        if (any) os << ' ';
        os << letters[i];
        if (c != 1) os << '^' << c.get_str();
        any = true;
    }
    return any ? os.str() : std::string("1");
}

} // namespace

Presentation presentation(const GraphOfGroups& g) {
    SpanningData sp = spanning_tree(g);
    Presentation p;
    bool lone_vertex = g.vertices.size() == 1;
    bool lone_edge = g.edges.size() == 1;
    std::vector<std::vector<std::string>> vertex_letters(g.vertices.size());
    for (std::size_t vi = 0; vi < g.vertices.size(); ++vi) {
        for (std::size_t i = 1; i <= g.rank; ++i) {
            std::string name;
            if (lone_vertex)
                name = g.rank <= 26 ? std::string(1, static_cast<char>('a' + i - 1))
                                    : "a" + std::to_string(i);
            else
                name = g.vertices[vi].id + ".a" + std::to_string(i);
            vertex_letters[vi].push_back(name);
            p.generators.push_back(name);
        }
    }
    std::vector<std::string> stable_names(g.edges.size());
    for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
        stable_names[ei] = lone_edge ? "t" : g.edges[ei].id + ".t";
        p.generators.push_back(stable_names[ei]);
    }
    for (std::size_t vi = 0; vi < g.vertices.size(); ++vi)
        for (std::size_t i = 0; i < g.rank; ++i)
            for (std::size_t j = i + 1; j < g.rank; ++j)
                p.relators.push_back("[" + vertex_letters[vi][i] + "," + vertex_letters[vi][j] + "]");
    for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
        const Edge& e = g.edges[ei];
        std::size_t u = *g.vertex_index(e.from);
        std::size_t w = *g.vertex_index(e.to);
        for (std::size_t j = 0; j < g.rank; ++j) {
            std::string lhs = power_word(vertex_letters[u], e.alpha.column(j));
            std::string rhs = power_word(vertex_letters[w], e.omega.column(j));
            p.relators.push_back(stable_names[ei] + " " + lhs + " " + stable_names[ei] +
                                 "^-1 = " + rhs);
        }
    }
    for (std::size_t ei = 0; ei < g.edges.size(); ++ei)
        if (sp.in_tree[ei]) p.relators.push_back(stable_names[ei] + " = 1");
    return p;
}

} // namespace gbsn
