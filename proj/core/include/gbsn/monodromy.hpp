#ifndef GBSN_MONODROMY_HPP
#define GBSN_MONODROMY_HPP

#include "gbsn/graph_of_groups.hpp"
#include "gbsn/lattice.hpp"

namespace gbsn {

/* Image of one non-tree stable letter under the modular homomorphism,
 * written in base-vertex coordinates. */
struct MonodromyGenerator {
    std::string edge_id;
    RatMatrix matrix;
};

struct Classification {
    enum class Kind { Trivial, Finite, Infinite, Inconclusive };
    Kind kind = Kind::Trivial;
    Int order = 1;          // meaningful for Trivial (1) and Finite
    unsigned long cap = 0;  // meaningful for Inconclusive
};

struct MonodromyReport {
    std::vector<MonodromyGenerator> generators;
    Classification classification;
};

/* Closure cap used when none is supplied: 10 * 2^n * n!, saturated. */
unsigned long default_classification_cap(std::size_t rank);

/* One generator per non-tree edge e from u to w, in edge declaration order:
 * P_w (omega_e alpha_e^{-1}) P_u^{-1}. Tree edges contribute the identity by
 * the path-matrix consistency relation and are omitted, as are all vertex
 * generators (they are elliptic). For a one-vertex one-loop graph with
 * alpha = I this is exactly omega. */
std::vector<MonodromyGenerator> monodromy_generators(const GraphOfGroups& g,
                                                     const SpanningData& sp);
std::vector<MonodromyGenerator> monodromy_generators(const GraphOfGroups& g);

/* Exact classification of the group generated by the monodromy matrices.
 * Any element whose characteristic polynomial has a non-cyclotomic factor, or
 * which fails the diagonalizability refinement, has infinite order and forces
 * Infinite. Otherwise breadth-first closure either completes (Finite) or
 * overruns the cap (Inconclusive). cap = 0 selects the default. */
Classification classify_monodromy(const std::vector<MonodromyGenerator>& gens,
                                  std::size_t rank, unsigned long cap = 0);

MonodromyReport monodromy_report(const GraphOfGroups& g, unsigned long cap = 0);

/* Full-rank central lattice witnessing trivial monodromy: the integral points
 * of every edge-lattice embedding in base coordinates, intersected over all
 * edges and with the base vertex lattice. Requires trivial monodromy and a
 * full-rank result fixed pointwise by every generator matrix; throws
 * precondition_error otherwise. */
Lattice central_witness(const GraphOfGroups& g);

enum class Answer { Yes, No, Unknown, NotApplicable };

std::string to_string(Answer a);

struct PropertyVerdict {
    std::string property;
    Answer answer = Answer::Unknown;
    std::string reason;
    std::optional<Lattice> witness;
};

PropertyVerdict decide_vrc(const GraphOfGroups& g);
PropertyVerdict decide_lerf(const GraphOfGroups& g);
PropertyVerdict decide_residually_finite(const GraphOfGroups& g, unsigned long cap = 0);
PropertyVerdict decide_grothendieck_rigid(const GraphOfGroups& g, unsigned long cap = 0);
std::vector<PropertyVerdict> decide_all(const GraphOfGroups& g, unsigned long cap = 0);

} // namespace gbsn

#endif
