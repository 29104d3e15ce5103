#ifndef GBSN_LATTICE_HPP
#define GBSN_LATTICE_HPP

#include <optional>

#include "gbsn/matrix.hpp"

namespace gbsn {

/* Sublattice of Z^n. The stored basis is the canonical column Hermite form
 * with zero columns dropped, so two lattices are equal iff their bases are
 * identical. Rank-deficient lattices are allowed. */
class Lattice {
  public:
    /* Lattice generated by the columns of `gens` inside Z^ambient. */
    static Lattice from_generators(std::size_t ambient, const IntMatrix& gens);
    static Lattice full(std::size_t ambient);          // Z^n
    static Lattice zero(std::size_t ambient);          // rank 0
    static Lattice scaled(std::size_t ambient, const Int& k); // k Z^n

    std::size_t ambient_rank() const { return ambient_; }
    std::size_t rank() const { return basis_.cols(); }
    const IntMatrix& basis() const { return basis_; }
    bool is_full() const { return rank() == ambient_ && basis_.is_identity(); }

    bool operator==(const Lattice&) const = default;

  private:
    Lattice(std::size_t ambient, IntMatrix basis)
        : ambient_(ambient), basis_(std::move(basis)) {}
    std::size_t ambient_ = 0;
    IntMatrix basis_; // ambient x rank, canonical column HNF
};

/* Structure of the finite-or-free abelian quotient Z^n / L:
 * invariant factors d_1 | d_2 | ... (each >= 2), free rank, and a projection
 * matrix sending Z^n coordinates to quotient coordinates (torsion rows first,
 * reduced modulo their invariant, then free rows). The full unimodular change
 * of basis and per-row moduli are kept for computing induced maps. */
struct AbelianQuotient {
    std::size_t ambient = 0;
    std::size_t free_rank = 0;
    std::vector<Int> invariants; // ascending divisibility chain, entries >= 2
    IntMatrix projection;        // (invariants + free) rows x ambient cols
    IntMatrix transform;         // unimodular n x n, row i taken modulo row_moduli[i]
    std::vector<Int> row_moduli; // modulus per transform row; 0 marks a free row

    /* Quotient coordinates of an ambient vector, one entry per projection row. */
    std::vector<Int> coordinates(const std::vector<Int>& x) const;
    Int order() const; // product of invariants; meaningful when free_rank == 0
    bool is_trivial() const { return free_rank == 0 && invariants.empty(); }
};

Lattice lattice_join(const Lattice& a, const Lattice& b);
Lattice lattice_intersection(const Lattice& a, const Lattice& b);

/* Index [Z^n : L]; nullopt encodes infinite index (rank-deficient L). */
std::optional<Int> lattice_index(const Lattice& l);

bool lattice_contains(const Lattice& l, const std::vector<Int>& v);

/* Whether phi maps L into L. */
bool is_invariant(const IntMatrix& phi, const Lattice& l);

/* {x in Z^n : phi x in L}; phi must be square nonsingular. */
Lattice lattice_preimage(const IntMatrix& phi, const Lattice& l);

/* Smallest phi-invariant lattice containing L (ascending chain of joins). */
Lattice invariant_closure(const IntMatrix& phi, const Lattice& l);

/* Enlarges a phi-invariant lattice until it is closed under phi-preimages,
 * which makes the induced map on the quotient injective. */
Lattice preimage_saturation(const IntMatrix& phi, const Lattice& l);

/* Integral points of the rational image lattice R(Z^n); R square nonsingular. */
Lattice integral_image_points(const RatMatrix& r);

AbelianQuotient quotient_structure(const Lattice& l);

/* Order of the automorphism induced by phi on the finite quotient Z^n / L.
 * Preconditions: L is phi-invariant with finite index, and the induced map is
 * bijective (throws not_invertible_error otherwise, e.g. phi=[2], L=4Z). */
Int induced_automorphism_order(const IntMatrix& phi, const Lattice& l);

} // namespace gbsn

#endif
