#ifndef GBSN_HNN_HPP
#define GBSN_HNN_HPP

#include <optional>
#include <string>
#include <variant>

#include "gbsn/lattice.hpp"
#include "gbsn/matrix.hpp"

namespace gbsn {

/* A power of the stable letter; exp is never 0 inside a Word. */
struct StableLetter {
    long exp;
    bool operator==(const StableLetter&) const = default;
};

/* A nonzero vector of the base Z^n written multiplicatively. */
struct Syllable {
    std::vector<Int> v;
    bool operator==(const Syllable&) const = default;
};

using Letter = std::variant<StableLetter, Syllable>;

/* Free word over the base and the stable letter. Adjacent base syllables are
 * merged and zero syllables dropped on construction; no group-level
 * cancellation is performed here. */
class Word {
  public:
    Word() = default;
    static Word from_letters(std::vector<Letter> ls);
    static Word syllable(std::vector<Int> v);
    static Word stable(long exp);

    const std::vector<Letter>& letters() const { return ls_; }
    bool empty() const { return ls_.empty(); }
    Word operator*(const Word& o) const;
    Word inverse() const;
    long height() const; // exponent sum of the stable letter

    bool operator==(const Word&) const = default;

  private:
    std::vector<Letter> ls_;
};

/* Britton normal form t^{-i} a t^{j} with i, j >= 0; when both i and j are
 * positive, a has no preimage under the defining endomorphism, which makes
 * the form unique. */
struct NormalForm {
    unsigned long neg = 0; // i
    std::vector<Int> a;
    unsigned long pos = 0; // j
    long height() const { return static_cast<long>(pos) - static_cast<long>(neg); }
    bool operator==(const NormalForm&) const = default;
};

/* Element of the ascending union of preimages of the base: the pair (level, a)
 * stands for the l-fold preimage of a. Canonical when level = 0 or a has no
 * further preimage. */
struct LimitElement {
    unsigned long level = 0;
    std::vector<Int> a;
    bool operator==(const LimitElement&) const = default;
};

/* Ascending HNN extension of Z^n along an injective endomorphism phi. */
class AscendingHnn {
  public:
    explicit AscendingHnn(IntMatrix phi);

    std::size_t rank() const { return phi_.rows(); }
    const IntMatrix& phi() const { return phi_; }
    const Int& det() const { return det_; }
    bool strictly_ascending() const; // |det phi| > 1

    std::vector<Int> phi_apply(const std::vector<Int>& a) const;
    std::vector<Int> phi_power_apply(std::vector<Int> a, unsigned long k) const;
    /* Integer preimage under phi when one exists. */
    std::optional<std::vector<Int>> phi_preimage(const std::vector<Int>& a) const;

  private:
    IntMatrix phi_;
    RatMatrix inv_;
    Int det_;
};

NormalForm normalize(const AscendingHnn& g, const Word& w);
NormalForm nf_multiply(const AscendingHnn& g, const NormalForm& x, const NormalForm& y);
NormalForm nf_invert(const AscendingHnn& g, const NormalForm& x);
Word nf_to_word(const NormalForm& x);

/* Conversion of a height-0 element into the ascending union;
 * throws not_in_kernel_error on nonzero height. */
LimitElement to_limit_element(const AscendingHnn& g, const NormalForm& nf);
LimitElement to_limit_element(const AscendingHnn& g, const Word& w);

LimitElement limit_canonicalize(const AscendingHnn& g, LimitElement x);
LimitElement limit_add(const AscendingHnn& g, const LimitElement& x, const LimitElement& y);
LimitElement limit_conjugate_by_t(const AscendingHnn& g, const LimitElement& x, long k);

/* Finitely generated subgroup data recovered by bounded enumeration. The
 * kernel lattice is a lower bound only: products of generators and inverses up
 * to the word budget are inspected, and the note records the truncation. */
struct SubgroupAnalysis {
    std::vector<Word> generators;
    long height_gcd = 0;             // gcd of generator heights, 0 when all are 0
    std::optional<Word> transversal; // height-1 product of at most two generators
    Lattice kernel_bound = Lattice::zero(0);
    unsigned long word_budget = 0;
    std::string note;
};

SubgroupAnalysis analyze_subgroup(const AscendingHnn& g, const std::vector<Word>& gens,
                                  unsigned long word_budget);

struct ConjugationCheck {
    unsigned long samples = 0;
    unsigned long failures = 0;
    std::optional<std::vector<Int>> counterexample;
    bool passed() const { return failures == 0; }
};

/* Samples vectors a from the kernel lattice bound and verifies that the
 * recovered transversal conjugates a exactly as phi does. Requires
 * height_gcd = 1 and a transversal; throws precondition_error otherwise. */
ConjugationCheck conjugation_check(const AscendingHnn& g, const SubgroupAnalysis& sub,
                                   unsigned long samples, unsigned long seed);

} // namespace gbsn

#endif
