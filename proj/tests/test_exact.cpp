#include "doctest.h"

#include <cstdint>
#include <vector>

#include "quadric/quadric.hpp"
#include "testutil.hpp"

using namespace quadric;

TEST_CASE("splitmix stream is deterministic") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    Rng c(43);
    bool all_equal = true;
    Rng a2(42);
    for (int i = 0; i < 10; ++i) all_equal = all_equal && (a2.next() == c.next());
    CHECK_FALSE(all_equal);
}

TEST_CASE("prime field matches 128-bit arithmetic") {
    const std::uint64_t p = kDefaultPrime;
    Rng rng(7);
    for (int t = 0; t < 200; ++t) {
        std::uint64_t a = rng.below(p), b = rng.below(p);
        CHECK(fp::add(a, b, p) == (a + b) % p);
        CHECK(fp::mul(a, b, p) ==
              static_cast<std::uint64_t>((unsigned __int128)a * b % p));
        if (a % p) CHECK(fp::mul(a, fp::inv(a, p), p) == 1);
    }
    CHECK(fp::is_prime(2));
    CHECK(fp::is_prime(kDefaultPrime));
    CHECK(fp::is_prime(1000003));
    CHECK_FALSE(fp::is_prime(1));
    CHECK_FALSE(fp::is_prime(1000004));
    CHECK_FALSE(fp::is_prime(3215031751ULL));  // strong pseudoprime to 2,3,5,7
}

TEST_CASE("rational parsing") {
    CHECK(parse_rational("3") == Rat(3));
    CHECK(parse_rational("-5") == Rat(-5));
    CHECK(parse_rational("3/4") == Rat(3, 4));
    CHECK(parse_rational("1.25") == Rat(5, 4));
    CHECK(parse_rational("-0.5") == Rat(-1, 2));
    CHECK_THROWS_AS(parse_rational("x"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
}

TEST_CASE("residues of rational coordinates") {
    const std::uint64_t p = 1000003;
    CHECK(residue(Rat(7), p) == 7);
    CHECK(residue(Rat(-1), p) == p - 1);
    // 3/4 mod p: 4 * r = 3
    std::uint64_t r = residue(Rat(3, 4), p);
    CHECK(fp::mul(4, r, p) == 3);
}

namespace {

// Random small-integer matrix; entries in [-9, 9].
std::vector<std::vector<Int>> random_int_matrix(Rng& rng, int rows, int cols) {
    std::vector<std::vector<Int>> m(rows, std::vector<Int>(cols));
    for (auto& row : m)
        for (auto& v : row)
            v = static_cast<long>(rng.below(19)) - 9;
    return m;
}

} // namespace

TEST_CASE("bareiss prefix ranks agree with rational gaussian elimination") {
    Rng rng(2024);
    for (int trial = 0; trial < 120; ++trial) {
        int rows = 1 + static_cast<int>(rng.below(8));
        int cols = 1 + static_cast<int>(rng.below(10));
        auto m = random_int_matrix(rng, rows, cols);
        // Sprinkle duplicate rows to force rank deficiency.
        if (rows >= 2 && rng.below(2) == 0) m[rows - 1] = m[0];
        std::vector<std::size_t> cuts;
        for (int c = 1; c <= cols; ++c)
            if (rng.below(2) == 0 || c == cols) cuts.push_back(c);
        std::vector<std::vector<Rat>> q(rows, std::vector<Rat>(cols));
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) q[r][c] = Rat(m[r][c]);
        auto got = prefix_ranks_bareiss(m, cuts);
        auto want = testfix::prefix_ranks_gauss_q(q, cuts);
        REQUIRE(got == want);
    }
}

TEST_CASE("mod-p prefix ranks agree with rational gaussian elimination") {
    // Entries are single digits and the matrices tiny, so minors stay far
    // below the modulus and the mod-p ranks are exact, not probabilistic.
    Rng rng(99);
    const std::uint64_t p = kDefaultPrime;
    for (int trial = 0; trial < 120; ++trial) {
        int rows = 1 + static_cast<int>(rng.below(8));
        int cols = 1 + static_cast<int>(rng.below(10));
        auto m = random_int_matrix(rng, rows, cols);
        std::vector<std::size_t> cuts{static_cast<std::size_t>(cols)};
        std::vector<std::vector<Rat>> q(rows, std::vector<Rat>(cols));
        std::vector<std::vector<std::uint64_t>> mp(
            rows, std::vector<std::uint64_t>(cols));
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) {
                q[r][c] = Rat(m[r][c]);
                long v = static_cast<long>(m[r][c].get_si());
                mp[r][c] = v >= 0 ? v : p + v;
            }
        auto got = prefix_ranks_fp(mp, p, cuts);
        auto want = testfix::prefix_ranks_gauss_q(q, cuts);
        REQUIRE(got == want);
    }
}

TEST_CASE("rank helpers on degenerate shapes") {
    CHECK(rank_bareiss({{Int(0), Int(0)}, {Int(0), Int(0)}}) == 0);
    CHECK(rank_bareiss({{Int(2)}}) == 1);
    CHECK(rank_fp({{0, 0}}, kDefaultPrime) == 0);
}
