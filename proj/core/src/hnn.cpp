#include "gbsn/hnn.hpp"

#include <map>
#include <numeric>
#include <random>
#include <tuple>

namespace gbsn {

namespace {

bool is_zero_vec(const std::vector<Int>& v) {
    for (const Int& x : v)
        if (x != 0) return false;
    return true;
}

} // namespace

Word Word::from_letters(std::vector<Letter> ls) {
    Word w;
    for (Letter& l : ls) {
        if (auto* s = std::get_if<StableLetter>(&l)) {
            if (s->exp == 0) continue;
            if (!w.ls_.empty())
                if (auto* prev = std::get_if<StableLetter>(&w.ls_.back())) {
                    prev->exp += s->exp;
                    if (prev->exp == 0) w.ls_.pop_back();
                    continue;
                }
            w.ls_.push_back(*s);
        } else {
            Syllable& v = std::get<Syllable>(l);
            if (is_zero_vec(v.v)) continue;
            if (!w.ls_.empty())
                if (auto* prev = std::get_if<Syllable>(&w.ls_.back())) {
                    for (std::size_t i = 0; i < prev->v.size(); ++i) prev->v[i] += v.v[i];
                    if (is_zero_vec(prev->v)) w.ls_.pop_back();
                    continue;
                }
            w.ls_.push_back(std::move(v));
        }
    }
    return w;
}

Word Word::syllable(std::vector<Int> v) { return from_letters({Syllable{std::move(v)}}); }

Word Word::stable(long exp) { return from_letters({StableLetter{exp}}); }

Word Word::operator*(const Word& o) const {
    std::vector<Letter> ls = ls_;
    ls.insert(ls.end(), o.ls_.begin(), o.ls_.end());
    return from_letters(std::move(ls));
}

Word Word::inverse() const {
    std::vector<Letter> ls;
    ls.reserve(ls_.size());
    for (auto it = ls_.rbegin(); it != ls_.rend(); ++it) {
        if (const auto* s = std::get_if<StableLetter>(&*it))
            ls.push_back(StableLetter{-s->exp});
        else {
            const Syllable& v = std::get<Syllable>(*it);
            std::vector<Int> neg(v.v.size());
            for (std::size_t i = 0; i < v.v.size(); ++i) neg[i] = -v.v[i];
            ls.push_back(Syllable{std::move(neg)});
        }
    }
    return from_letters(std::move(ls));
}

long Word::height() const {
    long h = 0;
    for (const Letter& l : ls_)
        if (const auto* s = std::get_if<StableLetter>(&l)) h += s->exp;
    return h;
}

AscendingHnn::AscendingHnn(IntMatrix phi) : phi_(std::move(phi)) {
    if (!phi_.is_square() || phi_.rows() == 0)
        throw rank_mismatch_error("endomorphism matrix must be square of positive rank");
    det_ = phi_.determinant();
    if (det_ == 0) throw singular_matrix_error("endomorphism matrix is singular");
    inv_ = rat_inverse(phi_);
}

bool AscendingHnn::strictly_ascending() const {
    return det_ > 1 || det_ < -1;
}

std::vector<Int> AscendingHnn::phi_apply(const std::vector<Int>& a) const {
    return phi_.apply(a);
}

std::vector<Int> AscendingHnn::phi_power_apply(std::vector<Int> a, unsigned long k) const {
    for (unsigned long s = 0; s < k; ++s) a = phi_.apply(a);
    return a;
}

std::optional<std::vector<Int>> AscendingHnn::phi_preimage(const std::vector<Int>& a) const {
    std::vector<Rat> ra(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) ra[i] = Rat(a[i]);
    std::vector<Rat> x = inv_.apply(ra);
    std::vector<Int> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].get_den() != 1) return std::nullopt;
        out[i] = x[i].get_num();
    }
    return out;
}

namespace {

/* Pinch t^{-1} phi(b) t whenever both stable powers are positive. */
void reduce(const AscendingHnn& g, NormalForm& nf) {
    while (nf.neg > 0 && nf.pos > 0) {
        auto pre = g.phi_preimage(nf.a);
        if (!pre) break;
        nf.a = std::move(*pre);
        --nf.neg;
        --nf.pos;
    }
}

void append_syllable(const AscendingHnn& g, NormalForm& nf, const std::vector<Int>& v) {
    std::vector<Int> shifted = g.phi_power_apply(v, nf.pos);
    for (std::size_t i = 0; i < nf.a.size(); ++i) nf.a[i] += shifted[i];
    reduce(g, nf);
}

void append_stable(const AscendingHnn& g, NormalForm& nf, long exp) {
    for (; exp > 0; --exp) {
        ++nf.pos;
        reduce(g, nf);
    }
    for (; exp < 0; ++exp) {
        if (nf.pos > 0) {
            --nf.pos;
        } else {
            nf.a = g.phi_apply(nf.a);
            ++nf.neg;
        }
    }
}

} // namespace

NormalForm normalize(const AscendingHnn& g, const Word& w) {
    NormalForm nf;
    nf.a.assign(g.rank(), Int(0));
    for (const Letter& l : w.letters()) {
        if (const auto* s = std::get_if<StableLetter>(&l))
            append_stable(g, nf, s->exp);
        else
            append_syllable(g, nf, std::get<Syllable>(l).v);
    }
    return nf;
}

NormalForm nf_multiply(const AscendingHnn& g, const NormalForm& x, const NormalForm& y) {
    NormalForm nf = x;
    append_stable(g, nf, -static_cast<long>(y.neg));
    append_syllable(g, nf, y.a);
    append_stable(g, nf, static_cast<long>(y.pos));
    return nf;
}

NormalForm nf_invert(const AscendingHnn& g, const NormalForm& x) {
    NormalForm nf;
    nf.neg = x.pos;
    nf.pos = x.neg;
    nf.a.resize(x.a.size());
    for (std::size_t i = 0; i < x.a.size(); ++i) nf.a[i] = -x.a[i];
    reduce(g, nf);
    return nf;
}

Word nf_to_word(const NormalForm& x) {
    std::vector<Letter> ls;
    if (x.neg > 0) ls.push_back(StableLetter{-static_cast<long>(x.neg)});
    ls.push_back(Syllable{x.a});
    if (x.pos > 0) ls.push_back(StableLetter{static_cast<long>(x.pos)});
    return Word::from_letters(std::move(ls));
}

LimitElement limit_canonicalize(const AscendingHnn& g, LimitElement x) {
    while (x.level > 0) {
        auto pre = g.phi_preimage(x.a);
        if (!pre) break;
        x.a = std::move(*pre);
        --x.level;
    }
    return x;
}

LimitElement to_limit_element(const AscendingHnn& g, const NormalForm& nf) {
    if (nf.height() != 0)
        throw not_in_kernel_error("word has nonzero stable-letter exponent sum");
    return limit_canonicalize(g, LimitElement{nf.neg, nf.a});
}

LimitElement to_limit_element(const AscendingHnn& g, const Word& w) {
    return to_limit_element(g, normalize(g, w));
}

LimitElement limit_add(const AscendingHnn& g, const LimitElement& x, const LimitElement& y) {
    unsigned long level = std::max(x.level, y.level);
    std::vector<Int> ax = g.phi_power_apply(x.a, level - x.level);
    std::vector<Int> ay = g.phi_power_apply(y.a, level - y.level);
    for (std::size_t i = 0; i < ax.size(); ++i) ax[i] += ay[i];
    return limit_canonicalize(g, LimitElement{level, std::move(ax)});
}

LimitElement limit_conjugate_by_t(const AscendingHnn& g, const LimitElement& x, long k) {
    // t^k phi^{-l}(a) t^{-k} = phi^{k-l}(a)
    if (k >= 0) {
        unsigned long uk = static_cast<unsigned long>(k);
        unsigned long drop = std::min(uk, x.level);
        std::vector<Int> a = g.phi_power_apply(x.a, uk - drop);
        return limit_canonicalize(g, LimitElement{x.level - drop, std::move(a)});
    }
    return limit_canonicalize(g, LimitElement{x.level + static_cast<unsigned long>(-k), x.a});
}

namespace {

using NfKey = std::tuple<unsigned long, unsigned long, std::vector<Int>>;

NfKey key_of(const NormalForm& nf) { return {nf.neg, nf.pos, nf.a}; }

} // namespace

SubgroupAnalysis analyze_subgroup(const AscendingHnn& g, const std::vector<Word>& gens,
                                  unsigned long word_budget) {
    SubgroupAnalysis out;
    out.generators = gens;
    out.word_budget = word_budget;
    long m = 0;
    for (const Word& w : gens) m = std::gcd(m, w.height());
    out.height_gcd = m < 0 ? -m : m;

    // transversal: first product of at most two generators or inverses with
    // height exactly 1, singles before pairs, declaration order within each
    if (out.height_gcd == 1) {
        std::vector<Word> pool;
        for (const Word& w : gens) {
            pool.push_back(w);
            pool.push_back(w.inverse());
        }
        for (const Word& w : pool)
            if (w.height() == 1) {
                out.transversal = w;
                break;
            }
        if (!out.transversal)
            for (const Word& x : pool) {
                for (const Word& y : pool)
                    if (x.height() + y.height() == 1) {
                        out.transversal = x * y;
                        break;
                    }
                if (out.transversal) break;
            }
    }

    // bounded enumeration of the subgroup: elements reachable by at most
    // word_budget multiplications by a generator or inverse
    std::vector<NormalForm> step;
    for (const Word& w : gens) {
        NormalForm nf = normalize(g, w);
        step.push_back(nf);
        step.push_back(nf_invert(g, nf));
    }
    std::map<NfKey, NormalForm> seen;
    NormalForm id;
    id.a.assign(g.rank(), Int(0));
    seen.emplace(key_of(id), id);
    std::vector<NormalForm> frontier{id};
    for (unsigned long len = 1; len <= word_budget && !frontier.empty(); ++len) {
        std::vector<NormalForm> next;
        for (const NormalForm& x : frontier)
            for (const NormalForm& s : step) {
                NormalForm y = nf_multiply(g, x, s);
                auto [it, inserted] = seen.emplace(key_of(y), y);
                if (inserted) next.push_back(y);
            }
        frontier = std::move(next);
    }
    std::size_t n = g.rank();
    std::vector<std::vector<Int>> vecs;
    for (const auto& [k, nf] : seen) {
        if (nf.height() != 0) continue;
        LimitElement e = to_limit_element(g, nf);
        if (e.level == 0 && !is_zero_vec(e.a)) vecs.push_back(e.a);
    }
    IntMatrix gen_mat(n, vecs.size());
    for (std::size_t j = 0; j < vecs.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) gen_mat(i, j) = vecs[j][i];
    out.kernel_bound = Lattice::from_generators(n, gen_mat);
    out.note = "kernel lattice is a lower bound from products of length <= " +
               std::to_string(word_budget) + "; not certified complete";
    return out;
}

ConjugationCheck conjugation_check(const AscendingHnn& g, const SubgroupAnalysis& sub,
                                   unsigned long samples, unsigned long seed) {
    if (sub.height_gcd != 1)
        throw precondition_error("conjugation check requires height gcd 1");
    if (!sub.transversal)
        throw precondition_error("conjugation check requires a recovered transversal");
    ConjugationCheck out;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-3, 3);
    const Word& th = *sub.transversal;
    Word th_inv = th.inverse();
    const IntMatrix& basis = sub.kernel_bound.basis();
    std::size_t n = g.rank();
    for (unsigned long s = 0; s < samples; ++s) {
        std::vector<Int> a(n, Int(0));
        for (std::size_t j = 0; j < basis.cols(); ++j) {
            int c = coeff(rng);
            for (std::size_t i = 0; i < n; ++i) a[i] += c * basis(i, j);
        }
        Word lhs = th * Word::syllable(a) * th_inv;
        Word rhs = Word::syllable(g.phi_apply(a));
        ++out.samples;
        if (!(normalize(g, lhs) == normalize(g, rhs))) {
            ++out.failures;
            if (!out.counterexample) out.counterexample = a;
        }
    }
    return out;
}

} // namespace gbsn
