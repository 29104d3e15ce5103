#include <benchmark/benchmark.h>

#include <gbsn/finite_quotient.hpp>
#include <gbsn/hnn.hpp>
#include <gbsn/lattice.hpp>
#include <gbsn/matrix.hpp>
#include <gbsn/monodromy.hpp>

#include <random>

namespace {

gbsn::IntMatrix random_matrix(std::size_t n, std::mt19937_64& rng, int span) {
    std::uniform_int_distribution<int> d(-span, span);
    gbsn::IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
    return m;
}

void bm_hnf(benchmark::State& state) {
    std::mt19937_64 rng(7);
    std::size_t n = static_cast<std::size_t>(state.range(0));
    std::vector<gbsn::IntMatrix> inputs;
    for (int i = 0; i < 64; ++i) inputs.push_back(random_matrix(n, rng, 50));
    std::size_t k = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gbsn::hnf(inputs[k++ % inputs.size()]));
    }
}
BENCHMARK(bm_hnf)->Arg(2)->Arg(4)->Arg(8);

void bm_snf(benchmark::State& state) {
    std::mt19937_64 rng(11);
    std::size_t n = static_cast<std::size_t>(state.range(0));
    std::vector<gbsn::IntMatrix> inputs;
    for (int i = 0; i < 64; ++i) inputs.push_back(random_matrix(n, rng, 50));
    std::size_t k = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gbsn::snf(inputs[k++ % inputs.size()]));
    }
}
BENCHMARK(bm_snf)->Arg(2)->Arg(4)->Arg(8);

void bm_normalize(benchmark::State& state) {
    gbsn::AscendingHnn g(gbsn::IntMatrix::of({{2, 1}, {0, 3}}));
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> coin(0, 3), coeff(-4, 4);
    std::vector<gbsn::Word> words;
    long len = state.range(0);
    for (int w = 0; w < 32; ++w) {
        std::vector<gbsn::Letter> ls;
        for (long i = 0; i < len; ++i) {
            if (coin(rng) == 0) {
                ls.push_back(gbsn::StableLetter{coin(rng) < 2 ? 1 : -1});
            } else {
                std::vector<gbsn::Int> v{gbsn::Int(coeff(rng)), gbsn::Int(coeff(rng))};
                ls.push_back(gbsn::Syllable{std::move(v)});
            }
        }
        words.push_back(gbsn::Word::from_letters(std::move(ls)));
    }
    std::size_t k = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gbsn::normalize(g, words[k++ % words.size()]));
    }
}
BENCHMARK(bm_normalize)->Arg(8)->Arg(32)->Arg(128);

void bm_monodromy_closure(benchmark::State& state) {
    gbsn::GraphOfGroups g;
    g.rank = 2;
    g.vertices.push_back({"v0"});
    g.edges.push_back({"e1", "v0", "v0", gbsn::IntMatrix::identity(2),
                       gbsn::IntMatrix::of({{0, -1}, {1, 0}})});
    auto gens = gbsn::monodromy_generators(g);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gbsn::classify_monodromy(gens, 2));
    }
}
BENCHMARK(bm_monodromy_closure);

void bm_subgroup_image(benchmark::State& state) {
    gbsn::AscendingHnn g(gbsn::IntMatrix::of({{2}}));
    gbsn::LevelQuotient lq = gbsn::build_level_quotient(g, 3, static_cast<unsigned long>(state.range(0)));
    std::vector<gbsn::Word> gens{gbsn::Word::syllable({gbsn::Int(1)}), gbsn::Word::stable(1)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(gbsn::subgroup_image(lq, gens, gbsn::Int(1000000)));
    }
}
BENCHMARK(bm_subgroup_image)->Arg(1)->Arg(2)->Arg(3);

void bm_lattice_intersection(benchmark::State& state) {
    std::mt19937_64 rng(17);
    std::size_t n = static_cast<std::size_t>(state.range(0));
    std::vector<std::pair<gbsn::Lattice, gbsn::Lattice>> inputs;
    for (int i = 0; i < 64; ++i) {
        gbsn::IntMatrix a = random_matrix(n, rng, 6), b = random_matrix(n, rng, 6);
        inputs.emplace_back(gbsn::Lattice::from_generators(n, a), gbsn::Lattice::from_generators(n, b));
    }
    std::size_t k = 0;
    for (auto _ : state) {
        const auto& [a, b] = inputs[k++ % inputs.size()];
        benchmark::DoNotOptimize(gbsn::lattice_intersection(a, b));
    }
}
BENCHMARK(bm_lattice_intersection)->Arg(2)->Arg(3)->Arg(5);

} // namespace

BENCHMARK_MAIN();
