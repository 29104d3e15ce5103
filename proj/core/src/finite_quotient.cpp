#include "gbsn/finite_quotient.hpp"

#include "gbsn/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace gbsn {

namespace {

bool is_prime(const Int& p) {
    if (p < 2) return false;
    return mpz_probab_prime_p(p.get_mpz_t(), 40) > 0;
}

Int int_power(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

/* mat^e modulo `modulus` by binary powering over the bits of e; e >= 0. */
IntMatrix mod_power(const IntMatrix& mat, const Int& e, const Int& modulus) {
    IntMatrix acc = IntMatrix::identity(mat.rows());
    acc = mod_reduce(acc, modulus);
    IntMatrix sq = mod_reduce(mat, modulus);
    mp_bitcnt_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (mp_bitcnt_t b = 0; b < bits; ++b) {
        if (mpz_tstbit(e.get_mpz_t(), b)) acc = mod_mul(acc, sq, modulus);
        if (b + 1 < bits) sq = mod_mul(sq, sq, modulus);
    }
    return acc;
}

std::vector<Int> mod_vec(std::vector<Int> v, const Int& modulus) {
    for (auto& x : v) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
    return v;
}

} // namespace

LevelQuotient build_level_quotient(const AscendingHnn& g, const Int& p, unsigned long level) {
    if (!is_prime(p)) throw prime_error(p.get_str() + " is not prime");
    if (g.det() % p == 0)
        throw prime_error(p.get_str() + " divides the determinant of the endomorphism");
    if (level == 0) throw precondition_error("level must be at least 1");

    LevelQuotient lq;
    lq.p = p;
    lq.level = level;
    lq.rank = g.rank();
    lq.modulus = int_power(p, level);
    lq.mat = mod_reduce(g.phi(), lq.modulus);
    lq.stable_order = matrix_order_mod(lq.mat, lq.modulus);
    lq.group_order = int_power(lq.modulus, static_cast<unsigned long>(lq.rank)) * lq.stable_order;
    return lq;
}

bool operator<(const FqElement& a, const FqElement& b) {
    if (a.s != b.s) return a.s < b.s;
    return a.q < b.q;
}

std::string to_string(const FqElement& e) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < e.q.size(); ++i) {
        if (i) os << ',';
        os << e.q[i].get_str();
    }
    os << ';' << e.s.get_str() << ')';
    return os.str();
}

FqElement fq_identity(const LevelQuotient& lq) {
    return {std::vector<Int>(lq.rank, 0), 0};
}

FqElement fq_mul(const LevelQuotient& lq, const FqElement& x, const FqElement& y) {
    IntMatrix twist = mod_power(lq.mat, x.s, lq.modulus);
    std::vector<Int> q = twist.apply(y.q);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] += x.q[i];
    return {mod_vec(std::move(q), lq.modulus), (x.s + y.s) % lq.stable_order};
}

FqElement fq_inverse(const LevelQuotient& lq, const FqElement& x) {
    Int s = (lq.stable_order - x.s) % lq.stable_order;
    IntMatrix twist = mod_power(lq.mat, s, lq.modulus);
    std::vector<Int> q = twist.apply(x.q);
    for (auto& c : q) c = -c;
    return {mod_vec(std::move(q), lq.modulus), s};
}

FqElement fq_project(const LevelQuotient& lq, const Word& w) {
    FqElement acc = fq_identity(lq);
    for (const Letter& l : w.letters()) {
        FqElement next;
        if (std::holds_alternative<Syllable>(l)) {
            next = {mod_vec(std::get<Syllable>(l).v, lq.modulus), 0};
        } else {
            Int s = std::get<StableLetter>(l).exp % lq.stable_order;
            if (s < 0) s += lq.stable_order;
            next = {std::vector<Int>(lq.rank, 0), s};
        }
        acc = fq_mul(lq, acc, next);
    }
    return acc;
}

namespace {

template <typename Mul, typename Inv>
QuotientImage closure_image(const Int& group_order, const FqElement& id,
                            const std::vector<FqElement>& gen_images, const Int& budget,
                            Mul mul, Inv inv) {
    std::vector<FqElement> step;
    for (const auto& e : gen_images) {
        step.push_back(e);
        step.push_back(inv(e));
    }
    std::set<FqElement> seen{id};
    std::deque<FqElement> queue{id};
    while (!queue.empty()) {
        FqElement cur = queue.front();
        queue.pop_front();
        for (const auto& s : step) {
            FqElement next = mul(cur, s);
            if (seen.count(next)) continue;
            if (Int(static_cast<unsigned long>(seen.size())) + 1 > budget)
                throw budget_error("enumeration budget exceeded while closing the image");
            seen.insert(next);
            queue.push_back(std::move(next));
        }
    }
    QuotientImage out;
    out.group_order = group_order;
    out.image_order = Int(static_cast<unsigned long>(seen.size()));
    out.index = group_order / out.image_order;
    out.generator_images = gen_images;
    return out;
}

} // namespace

QuotientImage subgroup_image(const LevelQuotient& lq, const std::vector<Word>& gens,
                             const Int& budget) {
    std::vector<FqElement> images;
    for (const Word& w : gens) images.push_back(fq_project(lq, w));
    return closure_image(
        lq.group_order, fq_identity(lq), images, budget,
        [&](const FqElement& a, const FqElement& b) { return fq_mul(lq, a, b); },
        [&](const FqElement& a) { return fq_inverse(lq, a); });
}

namespace {

void reduce_rows(IntMatrix& m, const std::vector<Int>& moduli) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (moduli[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            mpz_mod(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), moduli[i].get_mpz_t());
    }
}

std::vector<Int> reduce_vec(std::vector<Int> v, const std::vector<Int>& moduli) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (moduli[i] != 0)
            mpz_mod(v[i].get_mpz_t(), v[i].get_mpz_t(), moduli[i].get_mpz_t());
    return v;
}

/* Torsion coordinates live on the transform rows whose modulus is >= 2. */
std::vector<Int> lift_coords(const SemidirectQuotient& sq, const std::vector<Int>& coords) {
    std::vector<Int> full(sq.structure.ambient, 0);
    std::size_t k = 0;
    for (std::size_t i = 0; i < full.size(); ++i)
        if (sq.structure.row_moduli[i] >= 2) full[i] = coords[k++];
    return full;
}

std::vector<Int> extract_coords(const SemidirectQuotient& sq, const std::vector<Int>& full) {
    std::vector<Int> coords;
    for (std::size_t i = 0; i < full.size(); ++i)
        if (sq.structure.row_moduli[i] >= 2) coords.push_back(full[i]);
    return coords;
}

std::vector<Int> sd_twist(const SemidirectQuotient& sq, const Int& s, const std::vector<Int>& coords) {
    std::vector<Int> full = sq.powers[s.get_ui()].apply(lift_coords(sq, coords));
    return extract_coords(sq, reduce_vec(std::move(full), sq.structure.row_moduli));
}

const unsigned long max_power_table = 65536;

} // namespace

SemidirectQuotient build_semidirect_quotient(const AscendingHnn& g, const Lattice& l) {
    if (l.ambient_rank() != g.rank())
        throw rank_mismatch_error("lattice ambient rank does not match the group rank");
    if (l.rank() != l.ambient_rank())
        throw precondition_error("semidirect quotient requires a finite-index lattice");
    if (!is_invariant(g.phi(), l))
        throw precondition_error("semidirect quotient requires an invariant lattice");

    SemidirectQuotient sq;
    sq.lattice = l;
    sq.structure = quotient_structure(l);
    sq.automorphism_order = induced_automorphism_order(g.phi(), l);

    RatMatrix u = RatMatrix::from(sq.structure.transform);
    RatMatrix a = u * RatMatrix::from(g.phi()) * rat_inverse(u);
    sq.induced = a.to_integral();

    if (sq.automorphism_order > max_power_table)
        throw budget_error("induced automorphism order too large to tabulate");
    unsigned long m = sq.automorphism_order.get_ui();
    sq.powers.reserve(m);
    IntMatrix pw = IntMatrix::identity(sq.structure.ambient);
    reduce_rows(pw, sq.structure.row_moduli);
    for (unsigned long s = 0; s < m; ++s) {
        sq.powers.push_back(pw);
        if (s + 1 < m) {
            pw = pw * sq.induced;
            reduce_rows(pw, sq.structure.row_moduli);
        }
    }
    sq.group_order = sq.structure.order() * sq.automorphism_order;
    return sq;
}

FqElement sd_identity(const SemidirectQuotient& sq) {
    return {std::vector<Int>(sq.structure.invariants.size(), 0), 0};
}

FqElement sd_mul(const SemidirectQuotient& sq, const FqElement& x, const FqElement& y) {
    std::vector<Int> q = sd_twist(sq, x.s, y.q);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] += x.q[i];
    std::size_t k = 0;
    for (std::size_t i = 0; i < sq.structure.row_moduli.size(); ++i)
        if (sq.structure.row_moduli[i] >= 2) {
            mpz_mod(q[k].get_mpz_t(), q[k].get_mpz_t(), sq.structure.row_moduli[i].get_mpz_t());
            ++k;
        }
    return {std::move(q), (x.s + y.s) % sq.automorphism_order};
}

FqElement sd_inverse(const SemidirectQuotient& sq, const FqElement& x) {
    Int s = (sq.automorphism_order - x.s) % sq.automorphism_order;
    std::vector<Int> q = sd_twist(sq, s, x.q);
    for (auto& c : q) c = -c;
    FqElement neg{std::move(q), s};
    FqElement id = sd_identity(sq);
    return sd_mul(sq, id, neg); // renormalizes the coordinates
}

FqElement sd_project(const SemidirectQuotient& sq, const Word& w) {
    FqElement acc = sd_identity(sq);
    for (const Letter& l : w.letters()) {
        FqElement next;
        if (std::holds_alternative<Syllable>(l)) {
            std::vector<Int> coords = sq.structure.coordinates(std::get<Syllable>(l).v);
            coords.resize(sq.structure.invariants.size());
            next = {std::move(coords), 0};
        } else {
            Int s = std::get<StableLetter>(l).exp % sq.automorphism_order;
            if (s < 0) s += sq.automorphism_order;
            next = {std::vector<Int>(sq.structure.invariants.size(), 0), s};
        }
        acc = sd_mul(sq, acc, next);
    }
    return acc;
}

QuotientImage sd_subgroup_image(const SemidirectQuotient& sq, const std::vector<Word>& gens,
                                const Int& budget) {
    std::vector<FqElement> images;
    for (const Word& w : gens) images.push_back(sd_project(sq, w));
    return closure_image(
        sq.group_order, sd_identity(sq), images, budget,
        [&](const FqElement& a, const FqElement& b) { return sd_mul(sq, a, b); },
        [&](const FqElement& a) { return sd_inverse(sq, a); });
}

std::vector<Int> default_primes(const AscendingHnn& g, std::size_t count) {
    std::vector<Int> out;
    Int p = 2;
    while (out.size() < count) {
        if (g.det() % p != 0) out.push_back(p);
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    }
    return out;
}

namespace {

long height_gcd_of(const std::vector<Word>& gens) {
    long m = 0;
    for (const Word& w : gens) m = std::gcd(m, w.height());
    return std::abs(m);
}

} // namespace

std::optional<Certificate> height_certificate(const AscendingHnn& g,
                                              const std::vector<Word>& gens) {
    (void)g;
    long m = height_gcd_of(gens);
    if (m == 1) return std::nullopt;
    Int k = (m == 0) ? Int(2) : Int(m);
    Certificate c;
    c.quotient = HeightQuotient{k};
    for (const Word& w : gens) {
        Int res = Int(w.height()) % k;
        if (res < 0) res += k;
        c.generator_images.push_back(res.get_str());
    }
    c.group_order = k;
    c.image_order = 1;
    c.index = k;
    if (m == 0)
        c.reason = "every generator has height 0, so the image in the height quotient Z/2 is trivial";
    else
        c.reason = "generator heights generate " + std::to_string(m) +
                   "Z, so the image in the height quotient Z/" + std::to_string(m) + " is trivial";
    return c;
}

SearchResult certificate_search(const AscendingHnn& g, const std::vector<Word>& gens,
                                SearchBudget budget) {
    SearchResult r;
    r.budget = budget;
    if (r.budget.primes.empty()) r.budget.primes = default_primes(g);

    if (auto c = height_certificate(g, gens)) {
        r.log.push_back("height: proper image modulo " + std::get<HeightQuotient>(c->quotient).modulus.get_str());
        r.certificate = std::move(c);
        return r;
    }
    r.log.push_back("height: generator heights generate Z");

    for (const Int& p : r.budget.primes) {
        if (!is_prime(p)) throw prime_error(p.get_str() + " is not prime");
        if (g.det() % p == 0) {
            r.log.push_back("level p=" + p.get_str() + ": skipped, p divides det");
            continue;
        }
        for (unsigned long l = 1; l <= r.budget.max_level; ++l) {
            LevelQuotient lq = build_level_quotient(g, p, l);
            std::string tag = "level p=" + p.get_str() + " l=" + std::to_string(l);
            if (lq.group_order > r.budget.enumeration_budget) {
                r.log.push_back(tag + ": skipped, group order " + lq.group_order.get_str() +
                                " exceeds the enumeration budget");
                continue;
            }
            QuotientImage img = subgroup_image(lq, gens, r.budget.enumeration_budget);
            if (img.index > 1) {
                Certificate c;
                c.quotient = LevelQuotientDesc{p, l};
                for (const auto& e : img.generator_images)
                    c.generator_images.push_back(to_string(e));
                c.group_order = img.group_order;
                c.image_order = img.image_order;
                c.index = img.index;
                c.reason = "image has index " + img.index.get_str() + " in the level quotient at p=" +
                           p.get_str() + ", l=" + std::to_string(l);
                r.log.push_back(tag + ": proper image of index " + img.index.get_str());
                r.certificate = std::move(c);
                return r;
            }
            r.log.push_back(tag + ": image is the full group");
        }
    }

    SubgroupAnalysis sub = analyze_subgroup(g, gens, r.budget.word_budget);
    if (sub.kernel_bound.rank() == 0) {
        r.log.push_back("semidirect: no base elements found within the word budget");
        return r;
    }
    Lattice grown = preimage_saturation(g.phi(), invariant_closure(g.phi(), sub.kernel_bound));
    if (grown.is_full()) {
        r.log.push_back("semidirect: saturated kernel lattice is all of Z^n");
        return r;
    }
    if (grown.rank() != grown.ambient_rank()) {
        r.log.push_back("semidirect: saturated kernel lattice has infinite index");
        return r;
    }
    SemidirectQuotient sq = build_semidirect_quotient(g, grown);
    if (sq.group_order > r.budget.enumeration_budget) {
        r.log.push_back("semidirect: skipped, group order " + sq.group_order.get_str() +
                        " exceeds the enumeration budget");
        return r;
    }
    QuotientImage img = sd_subgroup_image(sq, gens, r.budget.enumeration_budget);
    if (img.index > 1) {
        Certificate c;
        c.quotient = SemidirectQuotientDesc{grown};
        for (const auto& e : img.generator_images)
            c.generator_images.push_back(to_string(e));
        c.group_order = img.group_order;
        c.image_order = img.image_order;
        c.index = img.index;
        c.reason = "image has index " + img.index.get_str() +
                   " in the semidirect quotient over the saturated kernel lattice";
        r.log.push_back("semidirect: proper image of index " + img.index.get_str());
        r.certificate = std::move(c);
        return r;
    }
    r.log.push_back("semidirect: image is the full group");
    return r;
}

bool verify_certificate(const AscendingHnn& g, const std::vector<Word>& gens,
                        const Certificate& c) {
    try {
        if (c.index <= 1) return false;
        if (c.group_order != c.image_order * c.index) return false;
        if (std::holds_alternative<HeightQuotient>(c.quotient)) {
            const Int& k = std::get<HeightQuotient>(c.quotient).modulus;
            if (k < 2 || c.group_order != k) return false;
            std::vector<std::string> images;
            for (const Word& w : gens) {
                Int res = Int(w.height()) % k;
                if (res < 0) res += k;
                images.push_back(res.get_str());
            }
            if (images != c.generator_images) return false;
            Int hg = height_gcd_of(gens);
            Int img = k / gcd(k, hg);
            return img == c.image_order;
        }
        if (std::holds_alternative<LevelQuotientDesc>(c.quotient)) {
            const auto& d = std::get<LevelQuotientDesc>(c.quotient);
            LevelQuotient lq = build_level_quotient(g, d.p, d.level);
            if (lq.group_order != c.group_order) return false;
            QuotientImage img = subgroup_image(lq, gens, lq.group_order);
            std::vector<std::string> images;
            for (const auto& e : img.generator_images) images.push_back(to_string(e));
            if (images != c.generator_images) return false;
            return img.image_order == c.image_order && img.index == c.index;
        }
        const auto& d = std::get<SemidirectQuotientDesc>(c.quotient);
        SemidirectQuotient sq = build_semidirect_quotient(g, d.lattice);
        if (sq.group_order != c.group_order) return false;
        QuotientImage img = sd_subgroup_image(sq, gens, sq.group_order);
        std::vector<std::string> images;
        for (const auto& e : img.generator_images) images.push_back(to_string(e));
        if (images != c.generator_images) return false;
        return img.image_order == c.image_order && img.index == c.index;
    } catch (const error&) {
        return false;
    }
}

} // namespace gbsn
