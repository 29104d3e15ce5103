#include "gbsn/monodromy.hpp"

#include "gbsn/errors.hpp"
#include "gbsn/polynomial.hpp"

#include <deque>
#include <map>

namespace gbsn {

unsigned long default_classification_cap(std::size_t rank) {
    const unsigned long limit = 100000000UL;
    Int c = 10;
    c <<= rank;
    for (std::size_t k = 2; k <= rank; ++k) c *= static_cast<unsigned long>(k);
    if (c > limit) return limit;
    return c.get_ui();
}

std::vector<MonodromyGenerator> monodromy_generators(const GraphOfGroups& g,
                                                     const SpanningData& sp) {
    std::vector<MonodromyGenerator> out;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        if (sp.in_tree[i]) continue;
        const Edge& e = g.edges[i];
        const RatMatrix& pu = sp.path[*g.vertex_index(e.from)];
        const RatMatrix& pw = sp.path[*g.vertex_index(e.to)];
        RatMatrix m = pw * RatMatrix::from(e.omega) * rat_inverse(RatMatrix::from(e.alpha)) * rat_inverse(pu);
        out.push_back({e.id, std::move(m)});
    }
    return out;
}

std::vector<MonodromyGenerator> monodromy_generators(const GraphOfGroups& g) {
    return monodromy_generators(g, spanning_tree(g));
}

Classification classify_monodromy(const std::vector<MonodromyGenerator>& gens,
                                  std::size_t rank, unsigned long cap) {
    if (cap == 0) cap = default_classification_cap(rank);

    bool trivial = true;
    for (const auto& gen : gens)
        if (!gen.matrix.is_identity()) { trivial = false; break; }
    if (trivial) return {Classification::Kind::Trivial, 1, cap};

    std::vector<RatMatrix> step;
    for (const auto& gen : gens) {
        step.push_back(gen.matrix);
        step.push_back(rat_inverse(gen.matrix));
    }

    auto infinite_order = [&](const RatMatrix& m) {
        return !analyze_finite_order(m).finite_order;
    };

    for (const auto& m : step)
        if (infinite_order(m)) return {Classification::Kind::Infinite, 0, cap};

    std::map<std::string, RatMatrix> seen;
    std::deque<const RatMatrix*> queue;
    RatMatrix id = RatMatrix::identity(rank);
    auto [it, fresh] = seen.emplace(to_string(id), std::move(id));
    (void)fresh;
    queue.push_back(&it->second);

    while (!queue.empty()) {
        const RatMatrix* cur = queue.front();
        queue.pop_front();
        for (const auto& s : step) {
            RatMatrix next = *cur * s;
            std::string key = to_string(next);
            if (seen.count(key)) continue;
            if (infinite_order(next)) return {Classification::Kind::Infinite, 0, cap};
            if (seen.size() + 1 > cap)
                return {Classification::Kind::Inconclusive, 0, cap};
            auto [jt, added] = seen.emplace(std::move(key), std::move(next));
            (void)added;
            queue.push_back(&jt->second);
        }
    }
    return {Classification::Kind::Finite, Int(static_cast<unsigned long>(seen.size())), cap};
}

MonodromyReport monodromy_report(const GraphOfGroups& g, unsigned long cap) {
    MonodromyReport r;
    r.generators = monodromy_generators(g);
    r.classification = classify_monodromy(r.generators, g.rank, cap);
    return r;
}

Lattice central_witness(const GraphOfGroups& g) {
    SpanningData sp = spanning_tree(g);
    auto gens = monodromy_generators(g, sp);
    for (const auto& gen : gens)
        if (!gen.matrix.is_identity())
            throw precondition_error("central witness requires trivial monodromy");

    Lattice acc = Lattice::full(g.rank);
    for (const Edge& e : g.edges) {
        const RatMatrix& pu = sp.path[*g.vertex_index(e.from)];
        const RatMatrix& pw = sp.path[*g.vertex_index(e.to)];
        acc = lattice_intersection(acc, integral_image_points(pu * RatMatrix::from(e.alpha)));
        acc = lattice_intersection(acc, integral_image_points(pw * RatMatrix::from(e.omega)));
    }
    if (acc.rank() != g.rank)
        throw precondition_error("central lattice degenerated; monodromy data inconsistent");
    RatMatrix basis = RatMatrix::from(acc.basis());
    for (const auto& gen : gens)
        if (!(gen.matrix * basis == basis))
            throw precondition_error("central lattice not fixed by monodromy");
    return acc;
}

std::string to_string(Answer a) {
    switch (a) {
        case Answer::Yes: return "yes";
        case Answer::No: return "no";
        case Answer::Unknown: return "unknown";
        case Answer::NotApplicable: return "not-applicable";
    }
    return "unknown";
}

namespace {

bool monodromy_trivial(const GraphOfGroups& g) {
    for (const auto& gen : monodromy_generators(g))
        if (!gen.matrix.is_identity()) return false;
    return true;
}

PropertyVerdict separability_verdict(const GraphOfGroups& g, std::string property) {
    PropertyVerdict v;
    v.property = std::move(property);
    if (monodromy_trivial(g)) {
        v.answer = Answer::Yes;
        v.reason = "monodromy is trivial; a full-rank central lattice exists";
        v.witness = central_witness(g);
    } else {
        v.answer = Answer::No;
        v.reason = "monodromy is nontrivial, so no finite-index subgroup has the required center";
    }
    return v;
}

bool strictly_ascending_shape(const GraphOfGroups& g) {
    if (g.vertices.size() != 1 || g.edges.size() != 1) return false;
    const Edge& e = g.edges[0];
    Int da = abs(e.alpha.determinant());
    Int dw = abs(e.omega.determinant());
    return (da == 1 && dw > 1) || (dw == 1 && da > 1);
}

} // namespace

PropertyVerdict decide_vrc(const GraphOfGroups& g) {
    return separability_verdict(g, "VRC");
}

PropertyVerdict decide_lerf(const GraphOfGroups& g) {
    return separability_verdict(g, "LERF");
}

PropertyVerdict decide_residually_finite(const GraphOfGroups& g, unsigned long cap) {
    PropertyVerdict v;
    v.property = "RF";
    if (strictly_ascending_shape(g)) {
        v.answer = Answer::Yes;
        v.reason = "strictly ascending one-loop presentation; such extensions are residually finite";
        return v;
    }
    Classification c = classify_monodromy(monodromy_generators(g), g.rank, cap);
    switch (c.kind) {
        case Classification::Kind::Trivial:
            v.answer = Answer::Yes;
            v.reason = "monodromy is trivial";
            break;
        case Classification::Kind::Finite:
            v.answer = Answer::Yes;
            v.reason = "monodromy is finite of order " + c.order.get_str();
            break;
        case Classification::Kind::Infinite:
            v.answer = Answer::No;
            v.reason = "monodromy is infinite and the presentation is not a strictly ascending loop";
            break;
        case Classification::Kind::Inconclusive:
            v.answer = Answer::Unknown;
            v.reason = "monodromy classification exceeded the closure cap of " + std::to_string(c.cap);
            break;
    }
    return v;
}

PropertyVerdict decide_grothendieck_rigid(const GraphOfGroups& g, unsigned long cap) {
    PropertyVerdict rf = decide_residually_finite(g, cap);
    PropertyVerdict v;
    v.property = "GR";
    switch (rf.answer) {
        case Answer::Yes:
            v.answer = Answer::Yes;
            v.reason = "residually finite; no proper finite-index inclusion induces an isomorphism of completions";
            break;
        case Answer::No:
            v.answer = Answer::NotApplicable;
            v.reason = "not residually finite, so the rigidity question degenerates";
            break;
        default:
            v.answer = Answer::Unknown;
            v.reason = "residual finiteness undecided: " + rf.reason;
            break;
    }
    return v;
}

std::vector<PropertyVerdict> decide_all(const GraphOfGroups& g, unsigned long cap) {
    std::vector<PropertyVerdict> out;
    out.push_back(decide_vrc(g));
    out.push_back(decide_lerf(g));
    out.push_back(decide_residually_finite(g, cap));
    out.push_back(decide_grothendieck_rigid(g, cap));
    return out;
}

} // namespace gbsn
