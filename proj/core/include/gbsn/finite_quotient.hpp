#ifndef GBSN_FINITE_QUOTIENT_HPP
#define GBSN_FINITE_QUOTIENT_HPP

#include "gbsn/hnn.hpp"

namespace gbsn {

/* Finite quotient (Z/p^l)^n x| Z/r of an ascending HNN extension of Z^n,
 * where r is the multiplicative order of phi modulo p^l. Defined whenever p is
 * prime and coprime to det phi. */
struct LevelQuotient {
    Int p;
    unsigned long level = 1;
    std::size_t rank = 0;
    Int modulus;      // p^level
    IntMatrix mat;    // phi reduced modulo p^level
    Int stable_order; // r, order of mat in GL(n, Z/p^level)
    Int group_order;  // p^(level * n) * r
};

LevelQuotient build_level_quotient(const AscendingHnn& g, const Int& p, unsigned long level);

/* Element of a semidirect product quotient: base coordinates q and stable
 * exponent s. For a LevelQuotient q has length n with entries mod p^l; for a
 * SemidirectQuotient q holds torsion coordinates, one per invariant factor. */
struct FqElement {
    std::vector<Int> q;
    Int s;
    bool operator==(const FqElement&) const = default;
};

bool operator<(const FqElement& a, const FqElement& b);
std::string to_string(const FqElement& e); // (q1,...,qn;s)

FqElement fq_identity(const LevelQuotient& lq);
FqElement fq_mul(const LevelQuotient& lq, const FqElement& x, const FqElement& y);
FqElement fq_inverse(const LevelQuotient& lq, const FqElement& x);

/* Image of a word under the quotient map: base generators go to the standard
 * basis residues, the stable letter to (0, 1). */
FqElement fq_project(const LevelQuotient& lq, const Word& w);

struct QuotientImage {
    Int group_order;
    Int image_order;
    Int index; // group_order / image_order
    std::vector<FqElement> generator_images;
};

/* Closure of the generator images; throws budget_error if the closure set
 * would exceed `budget` elements. */
QuotientImage subgroup_image(const LevelQuotient& lq, const std::vector<Word>& gens,
                             const Int& budget);

/* Finite quotient built from a phi-invariant finite-index lattice L on which
 * phi induces an automorphism: (Z^n / L) x| Z/m with m the order of the
 * induced automorphism. */
struct SemidirectQuotient {
    Lattice lattice = Lattice::zero(0);
    AbelianQuotient structure;
    IntMatrix induced;             // action of phi on transform coordinates
    Int automorphism_order;        // m
    Int group_order;               // |Z^n / L| * m
    std::vector<IntMatrix> powers; // induced^s, rows reduced, s in [0, m)
};

SemidirectQuotient build_semidirect_quotient(const AscendingHnn& g, const Lattice& l);

FqElement sd_identity(const SemidirectQuotient& sq);
FqElement sd_mul(const SemidirectQuotient& sq, const FqElement& x, const FqElement& y);
FqElement sd_inverse(const SemidirectQuotient& sq, const FqElement& x);
FqElement sd_project(const SemidirectQuotient& sq, const Word& w);
QuotientImage sd_subgroup_image(const SemidirectQuotient& sq, const std::vector<Word>& gens,
                                const Int& budget);

/* Descriptions of the finite quotient backing a certificate. */
struct HeightQuotient {
    Int modulus; // Z/modulus, image of the height map
    bool operator==(const HeightQuotient&) const = default;
};
struct LevelQuotientDesc {
    Int p;
    unsigned long level = 1;
    bool operator==(const LevelQuotientDesc&) const = default;
};
struct SemidirectQuotientDesc {
    Lattice lattice = Lattice::zero(0);
    bool operator==(const SemidirectQuotientDesc&) const = default;
};
using QuotientDesc = std::variant<HeightQuotient, LevelQuotientDesc, SemidirectQuotientDesc>;

/* Witness that the listed generators hit a proper subgroup of some finite
 * quotient, so the inclusion of the subgroup they generate is not a
 * completion-equivalence. Replayable from the quotient description alone. */
struct Certificate {
    QuotientDesc quotient;
    std::vector<std::string> generator_images; // rendered, one per generator
    Int group_order;
    Int image_order;
    Int index; // > 1
    std::string reason;
};

struct SearchBudget {
    std::vector<Int> primes;  // empty selects the first 5 primes coprime to det phi
    unsigned long max_level = 3;
    unsigned long word_budget = 6;
    Int enumeration_budget = 1000000;
};

struct SearchResult {
    std::optional<Certificate> certificate;
    SearchBudget budget;          // as used, with the prime list filled in
    std::vector<std::string> log; // one line per attempt, in search order
};

std::vector<Int> default_primes(const AscendingHnn& g, std::size_t count = 5);

/* Height stage only: succeeds iff the generator heights fail to generate Z. */
std::optional<Certificate> height_certificate(const AscendingHnn& g,
                                              const std::vector<Word>& gens);

/* Staged search: height map, then level quotients over (p, level) in
 * lexicographic order, then a semidirect quotient grown from the detected
 * kernel lattice. Every returned certificate has been replayed. A NoneFound
 * result only reports exhaustion of the recorded budget. */
SearchResult certificate_search(const AscendingHnn& g, const std::vector<Word>& gens,
                                SearchBudget budget = {});

/* Recomputes the quotient named by the certificate and checks every stored
 * quantity. Returns false instead of throwing on malformed certificates. */
bool verify_certificate(const AscendingHnn& g, const std::vector<Word>& gens,
                        const Certificate& c);

} // namespace gbsn

#endif
