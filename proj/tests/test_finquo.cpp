#include "doctest.h"

#include <random>

#include "gbsn/finite_quotient.hpp"
#include "gbsn/io.hpp"

using namespace gbsn;

namespace {

AscendingHnn bs2() { return AscendingHnn(IntMatrix::of({{2}})); }
AscendingHnn triple2() { return AscendingHnn(IntMatrix::of({{3, 0}, {0, 3}})); }

std::vector<Word> words(const AscendingHnn& g, std::initializer_list<const char*> ws) {
    std::vector<Word> out;
    for (const char* w : ws) out.push_back(parse_word(w, g.rank()));
    return out;
}

Word random_word(std::mt19937& rng, std::size_t rank, int len) {
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<long> entry(-2, 2);
    std::vector<Letter> ls;
    for (int i = 0; i < len; ++i) {
        if (kind(rng) == 0) {
            ls.push_back(StableLetter{entry(rng) < 0 ? -1l : 1l});
        } else {
            std::vector<Int> v(rank);
            for (auto& e : v) e = entry(rng);
            ls.push_back(Syllable{v});
        }
    }
    return Word::from_letters(std::move(ls));
}

} // namespace

TEST_CASE("level quotient construction") {
    AscendingHnn g = bs2();
    LevelQuotient q1 = build_level_quotient(g, 3, 1);
    CHECK(q1.modulus == 3);
    CHECK(q1.stable_order == 2);
    CHECK(q1.group_order == 6);
    CHECK(q1.mat == IntMatrix::of({{2}}));

    LevelQuotient q2 = build_level_quotient(g, 3, 2);
    CHECK(q2.modulus == 9);
    CHECK(q2.stable_order == 6);
    CHECK(q2.group_order == 54);

    // brute-force oracle for the stable orders
    for (unsigned long level : {1ul, 2ul}) {
        Int mod = level == 1 ? 3 : 9;
        Int pw = 1, steps = 0;
        do {
            pw = pw * 2 % mod;
            ++steps;
        } while (pw != 1);
        CHECK(build_level_quotient(g, 3, level).stable_order == steps);
    }

    LevelQuotient q5 = build_level_quotient(g, 5, 1);
    CHECK(q5.stable_order == 4);
    CHECK(q5.group_order == 20);

    LevelQuotient t1 = build_level_quotient(triple2(), 2, 1);
    CHECK(t1.stable_order == 1);
    CHECK(t1.group_order == 4);
}

TEST_CASE("level quotient rejects bad moduli") {
    CHECK_THROWS_AS(build_level_quotient(bs2(), 4, 1), prime_error);
    CHECK_THROWS_AS(build_level_quotient(bs2(), 2, 1), prime_error);
    CHECK_THROWS_AS(build_level_quotient(triple2(), 3, 2), prime_error);
    CHECK_THROWS_AS(build_level_quotient(bs2(), 3, 0), precondition_error);
}

TEST_CASE("element arithmetic in a level quotient") {
    LevelQuotient lq = build_level_quotient(bs2(), 3, 2);
    FqElement id = fq_identity(lq);
    CHECK(id.q == std::vector<Int>{0});
    CHECK(id.s == 0);

    FqElement a{{Int(1)}, Int(0)};
    FqElement t{{Int(0)}, Int(1)};
    // t * a * t^-1 = phi(a) in the quotient
    FqElement lhs = fq_mul(lq, fq_mul(lq, t, a), fq_inverse(lq, t));
    CHECK(lhs == FqElement{{Int(2)}, Int(0)});
    CHECK(fq_mul(lq, a, fq_inverse(lq, a)) == id);
    CHECK(fq_mul(lq, t, fq_inverse(lq, t)) == id);
    CHECK(to_string(FqElement{{Int(2), Int(0)}, Int(1)}) == "(2,0;1)");
}

TEST_CASE("projection is a homomorphism") {
    std::mt19937 rng(73);
    const std::pair<long, unsigned long> cases[] = {{3, 1}, {3, 2}, {5, 1}};
    for (const auto& [p, l] : cases) {
        LevelQuotient lq = build_level_quotient(bs2(), p, l);
        for (int it = 0; it < 150; ++it) {
            Word u = random_word(rng, 1, 1 + it % 8);
            Word v = random_word(rng, 1, 1 + (it / 3) % 8);
            CHECK(fq_project(lq, u * v) == fq_mul(lq, fq_project(lq, u), fq_project(lq, v)));
        }
        // defining relator maps to the identity
        Word rel = parse_word("t a t^-1 a^-2", 1);
        CHECK(fq_project(lq, rel) == fq_identity(lq));
    }
}

TEST_CASE("negative stable exponents reduce into range") {
    LevelQuotient lq = build_level_quotient(bs2(), 3, 1);
    FqElement e = fq_project(lq, parse_word("t^-1", 1));
    CHECK(e.s == 1); // r = 2
    CHECK(fq_mul(lq, fq_project(lq, parse_word("t", 1)), e) == fq_identity(lq));
}

TEST_CASE("subgroup images in level quotients") {
    AscendingHnn g = bs2();
    SUBCASE("full generators have full image") {
        const std::pair<long, unsigned long> cases[] = {{3, 1}, {3, 2}, {5, 1}, {7, 1}};
        for (const auto& [p, l] : cases) {
            LevelQuotient lq = build_level_quotient(g, p, l);
            QuotientImage img = subgroup_image(lq, words(g, {"a", "t"}), lq.group_order);
            CHECK(img.image_order == lq.group_order);
            CHECK(img.index == 1);
            REQUIRE(img.generator_images.size() == 2);
            CHECK(img.generator_images[0] == FqElement{{Int(1)}, Int(0)});
            CHECK(img.generator_images[1] == FqElement{{Int(0)}, Int(1)});
        }
    }
    SUBCASE("proper subgroup at the matching prime") {
        LevelQuotient lq = build_level_quotient(g, 3, 1);
        QuotientImage img = subgroup_image(lq, words(g, {"a^3", "t"}), 100);
        CHECK(img.image_order == 2);
        CHECK(img.index == 3);
    }
    SUBCASE("rank two proper image") {
        LevelQuotient lq = build_level_quotient(triple2(), 2, 1);
        QuotientImage img = subgroup_image(lq, words(triple2(), {"a1^2", "a2", "t"}), 100);
        CHECK(img.group_order == 4);
        CHECK(img.image_order == 2);
        CHECK(img.index == 2);
    }
    SUBCASE("budget overruns throw") {
        LevelQuotient lq = build_level_quotient(g, 3, 2);
        CHECK_THROWS_AS(subgroup_image(lq, words(g, {"a", "t"}), 10), budget_error);
        CHECK_NOTHROW(subgroup_image(lq, words(g, {"a", "t"}), 54));
    }
}

TEST_CASE("semidirect quotient structure") {
    SUBCASE("rotation on the doubled lattice") {
        AscendingHnn g(IntMatrix::of({{0, -1}, {1, 0}}));
        SemidirectQuotient sq = build_semidirect_quotient(g, Lattice::scaled(2, 2));
        CHECK(sq.structure.invariants == std::vector<Int>{2, 2});
        CHECK(sq.automorphism_order == 2);
        CHECK(sq.group_order == 8);
        CHECK(sq.powers.size() == 2);
        FqElement id = sd_identity(sq);
        CHECK(sd_mul(sq, id, id) == id);
    }
    SUBCASE("doubling on a coprime lattice matches the level quotient") {
        AscendingHnn g = bs2();
        SemidirectQuotient sq = build_semidirect_quotient(g, Lattice::scaled(1, 3));
        CHECK(sq.structure.invariants == std::vector<Int>{3});
        CHECK(sq.automorphism_order == 2);
        CHECK(sq.group_order == 6);
        QuotientImage img = sd_subgroup_image(sq, words(g, {"a", "t"}), 10);
        CHECK(img.image_order == 6);
        CHECK(img.index == 1);
    }
    SUBCASE("preconditions") {
        AscendingHnn g = bs2();
        CHECK_THROWS_AS(build_semidirect_quotient(g, Lattice::scaled(2, 3)), rank_mismatch_error);
        CHECK_THROWS_AS(build_semidirect_quotient(g, Lattice::zero(1)), precondition_error);
        CHECK_THROWS_AS(build_semidirect_quotient(g, Lattice::scaled(1, 4)), not_invertible_error);
        AscendingHnn rot(IntMatrix::of({{0, -1}, {1, 0}}));
        Lattice skew = Lattice::from_generators(2, IntMatrix::of({{1, 0}, {0, 2}}));
        CHECK_THROWS_AS(build_semidirect_quotient(rot, skew), precondition_error);
    }
}

TEST_CASE("semidirect projection is a homomorphism") {
    std::mt19937 rng(79);
    AscendingHnn rot(IntMatrix::of({{0, -1}, {1, 0}}));
    SemidirectQuotient sq = build_semidirect_quotient(rot, Lattice::scaled(2, 2));
    for (int it = 0; it < 200; ++it) {
        Word u = random_word(rng, 2, 1 + it % 7);
        Word v = random_word(rng, 2, 1 + (it / 2) % 7);
        CHECK(sd_project(sq, u * v) == sd_mul(sq, sd_project(sq, u), sd_project(sq, v)));
        FqElement x = sd_project(sq, u);
        CHECK(sd_mul(sq, x, sd_inverse(sq, x)) == sd_identity(sq));
    }
    // image order divides group order
    QuotientImage img = sd_subgroup_image(sq, {parse_word("a1", 2)}, 10);
    CHECK(sq.group_order % img.image_order == 0);
    CHECK(img.image_order == 2);
}

TEST_CASE("default prime selection skips determinant divisors") {
    CHECK(default_primes(bs2()) == std::vector<Int>{3, 5, 7, 11, 13});
    CHECK(default_primes(triple2()) == std::vector<Int>{2, 5, 7, 11, 13});
    CHECK(default_primes(AscendingHnn(IntMatrix::of({{6}}))) == std::vector<Int>{5, 7, 11, 13, 17});
    CHECK(default_primes(bs2(), 2) == std::vector<Int>{3, 5});
}

TEST_CASE("height certificates") {
    AscendingHnn g = bs2();
    SUBCASE("all heights zero") {
        auto c = height_certificate(g, words(g, {"a"}));
        REQUIRE(c.has_value());
        CHECK(c->quotient == QuotientDesc{HeightQuotient{2}});
        CHECK(c->generator_images == std::vector<std::string>{"0"});
        CHECK(c->group_order == 2);
        CHECK(c->image_order == 1);
        CHECK(c->index == 2);
        CHECK(verify_certificate(g, words(g, {"a"}), *c));
    }
    SUBCASE("even heights") {
        auto c = height_certificate(g, words(g, {"a", "t^2"}));
        REQUIRE(c.has_value());
        CHECK(c->quotient == QuotientDesc{HeightQuotient{2}});
        CHECK(c->generator_images == std::vector<std::string>{"0", "0"});
        CHECK(c->index == 2);
        CHECK(verify_certificate(g, words(g, {"a", "t^2"}), *c));
    }
    SUBCASE("height three") {
        auto c = height_certificate(g, words(g, {"t^3", "a t^-3 a"}));
        REQUIRE(c.has_value());
        CHECK(c->quotient == QuotientDesc{HeightQuotient{3}});
        CHECK(verify_certificate(g, words(g, {"t^3", "a t^-3 a"}), *c));
    }
    SUBCASE("coprime heights give nothing") {
        CHECK_FALSE(height_certificate(g, words(g, {"t^2", "t^3"})).has_value());
        CHECK_FALSE(height_certificate(g, words(g, {"t"})).has_value());
    }
    SUBCASE("no generators at all") {
        auto c = height_certificate(g, {});
        REQUIRE(c.has_value());
        CHECK(c->generator_images.empty());
        CHECK(verify_certificate(g, {}, *c));
    }
}

TEST_CASE("staged search finds height certificates first") {
    AscendingHnn g = bs2();
    SearchResult r = certificate_search(g, words(g, {"a"}));
    REQUIRE(r.certificate.has_value());
    CHECK(std::holds_alternative<HeightQuotient>(r.certificate->quotient));
    REQUIRE(r.log.size() == 1);
    CHECK(r.log[0] == "height: proper image modulo 2");
    CHECK(r.budget.primes == std::vector<Int>{3, 5, 7, 11, 13});
    CHECK(verify_certificate(g, words(g, {"a"}), *r.certificate));
}

TEST_CASE("staged search finds level certificates") {
    AscendingHnn g = bs2();
    std::vector<Word> gens = words(g, {"a^3", "t"});
    SearchResult r = certificate_search(g, gens);
    REQUIRE(r.certificate.has_value());
    REQUIRE(std::holds_alternative<LevelQuotientDesc>(r.certificate->quotient));
    const auto& d = std::get<LevelQuotientDesc>(r.certificate->quotient);
    CHECK(d.p == 3);
    CHECK(d.level == 1);
    CHECK(r.certificate->group_order == 6);
    CHECK(r.certificate->image_order == 2);
    CHECK(r.certificate->index == 3);
    CHECK(r.certificate->reason == "image has index 3 in the level quotient at p=3, l=1");
    CHECK(r.log.back() == "level p=3 l=1: proper image of index 3");
    CHECK(verify_certificate(g, gens, *r.certificate));
}

TEST_CASE("staged search falls through to the semidirect stage") {
    AscendingHnn g = triple2();
    std::vector<Word> gens = words(g, {"a1^2", "a2", "t"});
    SearchBudget b;
    b.primes = {Int(5)};
    b.max_level = 1;
    SearchResult r = certificate_search(g, gens, b);
    REQUIRE(r.certificate.has_value());
    REQUIRE(std::holds_alternative<SemidirectQuotientDesc>(r.certificate->quotient));
    const auto& d = std::get<SemidirectQuotientDesc>(r.certificate->quotient);
    CHECK(d.lattice.basis() == IntMatrix::of({{2, 0}, {0, 1}}));
    CHECK(r.certificate->group_order == 2);
    CHECK(r.certificate->image_order == 1);
    CHECK(r.certificate->index == 2);
    REQUIRE(r.log.size() == 3);
    CHECK(r.log[0] == "height: generator heights generate Z");
    CHECK(r.log[1] == "level p=5 l=1: image is the full group");
    CHECK(r.log[2] == "semidirect: proper image of index 2");
    CHECK(verify_certificate(g, gens, *r.certificate));
}

TEST_CASE("search on a generating set proves nothing") {
    AscendingHnn g = bs2();
    std::vector<Word> gens = words(g, {"a", "t"});
    SearchResult r = certificate_search(g, gens);
    CHECK_FALSE(r.certificate.has_value());
    REQUIRE(r.log.size() == 17);
    CHECK(r.log[0] == "height: generator heights generate Z");
    CHECK(r.log[1] == "level p=3 l=1: image is the full group");
    CHECK(r.log[12] == "level p=11 l=3: skipped, group order 1610510 exceeds the enumeration budget");
    CHECK(r.log[15] == "level p=13 l=3: skipped, group order 4455516 exceeds the enumeration budget");
    CHECK(r.log[16] == "semidirect: saturated kernel lattice is all of Z^n");
}

TEST_CASE("search respects the enumeration budget") {
    AscendingHnn g = bs2();
    SearchBudget b;
    b.primes = {Int(3)};
    b.max_level = 2;
    b.enumeration_budget = 5;
    SearchResult r = certificate_search(g, words(g, {"a", "t"}), b);
    CHECK_FALSE(r.certificate.has_value());
    REQUIRE(r.log.size() == 4);
    CHECK(r.log[1] == "level p=3 l=1: skipped, group order 6 exceeds the enumeration budget");
    CHECK(r.log[2] == "level p=3 l=2: skipped, group order 54 exceeds the enumeration budget");
}

TEST_CASE("search skips primes dividing the determinant") {
    AscendingHnn g = triple2();
    SearchBudget b;
    b.primes = {Int(3), Int(5)};
    b.max_level = 1;
    SearchResult r = certificate_search(g, words(g, {"a1", "a2", "t"}), b);
    CHECK_FALSE(r.certificate.has_value());
    CHECK(r.log[1] == "level p=3: skipped, p divides det");
    CHECK_THROWS_AS(certificate_search(g, words(g, {"a1", "a2", "t"}),
                                       SearchBudget{{Int(4)}, 1, 6, Int(1000)}),
                    prime_error);
}

TEST_CASE("certificate replay rejects tampering") {
    AscendingHnn g = bs2();
    std::vector<Word> gens = words(g, {"a^3", "t"});
    SearchResult r = certificate_search(g, gens);
    REQUIRE(r.certificate.has_value());
    Certificate good = *r.certificate;
    REQUIRE(verify_certificate(g, gens, good));

    Certificate bad = good;
    bad.index += 1;
    CHECK_FALSE(verify_certificate(g, gens, bad));

    bad = good;
    bad.image_order = 3;
    CHECK_FALSE(verify_certificate(g, gens, bad));

    bad = good;
    bad.group_order = 54;
    CHECK_FALSE(verify_certificate(g, gens, bad));

    bad = good;
    REQUIRE_FALSE(bad.generator_images.empty());
    bad.generator_images[0] = "(2;1)";
    CHECK_FALSE(verify_certificate(g, gens, bad));

    bad = good;
    bad.quotient = LevelQuotientDesc{Int(4), 1};
    CHECK_FALSE(verify_certificate(g, gens, bad));

    bad = good;
    bad.quotient = LevelQuotientDesc{Int(5), 1};
    CHECK_FALSE(verify_certificate(g, gens, bad));

    // height certificates get the same treatment
    auto hc = height_certificate(g, words(g, {"t^2"}));
    REQUIRE(hc.has_value());
    Certificate hbad = *hc;
    hbad.quotient = HeightQuotient{3};
    CHECK_FALSE(verify_certificate(g, words(g, {"t^2"}), hbad));
}
