#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sturmfsm/words.hpp"
#include "oracles.hpp"

#include <set>

using namespace sturmfsm;

TEST_CASE("recursive word seeds and known prefixes") {
    CfDigits g = CfDigits::golden(14);
    CHECK(recursive_word(g, 1).str() == "1");
    CHECK(recursive_word(g, 2).str() == "10");
    CHECK(recursive_word(g, 3).str() == "101");
    CHECK(recursive_word(g, 4).str() == "10110");
    CHECK(recursive_word(g, 13).size() == 377);

    auto apx = approximants(g, 14);
    for (int n = 1; n <= 14; ++n)
        CHECK(BigInt(recursive_word(g, n).size()) == apx[static_cast<std::size_t>(n)].q);

    // a_1 = 2: s_1 = s_0^{a_1 - 1} s_{-1} = "01"
    CHECK(recursive_word(CfDigits::silver(5), 1).str() == "01");
    CHECK_THROWS_AS(recursive_word(g, 15), InsufficientDigits);
}

TEST_CASE("sturmian_value at and around the origin") {
    CfDigits g = CfDigits::golden(20);
    CHECK(sturmian_value(g, 0) == 0);
    CHECK(sturmian_value(g, -1) == 1);
    CHECK(sturmian_value(g, 0, Variant::tilde) == 1);
    CHECK(sturmian_value(g, -1, Variant::tilde) == 0);
    std::vector<int> first{1, 0, 1, 1, 0};
    for (int n = 1; n <= 5; ++n) {
        CHECK(sturmian_value(g, n) == first[static_cast<std::size_t>(n - 1)]);
        CHECK(sturmian_value(g, n, Variant::tilde) == first[static_cast<std::size_t>(n - 1)]);
    }
}

TEST_CASE("sturmian_value agrees with the chi oracle at 256 bits") {
    CfDigits g = CfDigits::golden(21);  // q_21 = 17711 > 1e4
    BigRat alpha = alpha_value(CfDigits::golden(400), 256).value;
    for (std::int64_t n = -10000; n <= 10000; n += 7) {
        CHECK(sturmian_value(g, n) == oracles::chi_word_value(alpha, 0, n, false));
        CHECK(sturmian_value(g, n, Variant::tilde) == oracles::chi_word_value(alpha, 0, n, true));
    }
}

TEST_CASE("periodic word values in integer arithmetic") {
    PeriodicWordSpec half(1, 2);
    CHECK(periodic_word_value(half, 1) == 1);
    CHECK(periodic_word_value(half, 2) == 0);
    for (std::int64_t n = -8; n <= 8; ++n)
        CHECK(periodic_word_value(half, n) == periodic_word_value(half, n + 2));

    PeriodicWordSpec zero(0, 1);
    for (std::int64_t n = -4; n <= 4; ++n) CHECK(periodic_word_value(zero, n) == 0);

    PeriodicWordSpec two_thirds(2, 3);
    CHECK(periodic_word_value(two_thirds, 1) == 1);
    CHECK(periodic_word_value(two_thirds, 2) == 1);
    CHECK(periodic_word_value(two_thirds, 3) == 0);
    // agreement with the golden word stops after k = q_3 - 2 = 1 (m = 3 odd)
    CfDigits g = CfDigits::golden(20);
    CHECK(periodic_word_value(two_thirds, 1) == sturmian_value(g, 1));
    CHECK(periodic_word_value(two_thirds, 2) != sturmian_value(g, 2));
}

TEST_CASE("periodic word with rational theta") {
    // theta = 1/3 on slope 1/2: chi_{[1/2,1)}(n/2 + 1/3)
    PeriodicWordSpec spec(1, 2);
    spec.theta = BigRat(1, 3);
    BigRat alpha(1, 2);
    for (std::int64_t n = -6; n <= 6; ++n)
        CHECK(periodic_word_value(spec, n) == oracles::chi_word_value(alpha, BigRat(1, 3), n));
}

TEST_CASE("subword enumeration") {
    CfDigits g = CfDigits::golden(20);
    auto s1 = enumerate_subwords(g, 1);
    REQUIRE(s1.size() == 2);
    CHECK(s1[0].str() == "0");
    CHECK(s1[1].str() == "1");

    auto s2 = enumerate_subwords(g, 2);
    REQUIRE(s2.size() == 3);
    CHECK(s2[0].str() == "01");
    CHECK(s2[1].str() == "10");
    CHECK(s2[2].str() == "11");

    CHECK(enumerate_subwords(g, 201).size() == 202);
    CHECK_THROWS_AS(enumerate_subwords(CfDigits::golden(13), 201), InsufficientDigits);
}

TEST_CASE("subword complexity L+1") {
    CfDigits g = CfDigits::golden(18);
    for (std::int64_t L = 1; L <= 60; ++L)
        CHECK(enumerate_subwords(g, L).size() == static_cast<std::size_t>(L) + 1);
}

TEST_CASE("subword sets are reversal closed") {
    CfDigits g = CfDigits::golden(16);
    for (std::int64_t L : {2, 5, 11, 17, 23, 30}) {
        auto words = enumerate_subwords(g, L);
        std::set<Word> set(words.begin(), words.end());
        for (const Word& w : words) CHECK(set.count(w.reversed()) == 1);
    }
}

TEST_CASE("Bellissard recurrence and mirror identities") {
    CfDigits g = CfDigits::golden(16);
    auto apx = approximants(g, 12);
    for (int m = 2; m <= 10; ++m) {
        std::int64_t qm = apx[static_cast<std::size_t>(m)].q.convert_to<std::int64_t>();
        std::int64_t qm1 = apx[static_cast<std::size_t>(m) + 1].q.convert_to<std::int64_t>();
        for (std::int64_t k = 1; k <= qm1 - 2; ++k) {
            CHECK(sturmian_value(g, qm + k) == sturmian_value(g, k));
            CHECK(sturmian_value(g, qm + k, Variant::tilde) == sturmian_value(g, k, Variant::tilde));
        }
    }
    for (std::int64_t k = 2; k <= 500; ++k) {
        CHECK(sturmian_value(g, -k) == sturmian_value(g, k - 1));
        CHECK(sturmian_value(g, -k, Variant::tilde) == sturmian_value(g, k - 1, Variant::tilde));
    }
}

TEST_CASE("periodic agreement ranges") {
    CfDigits g = CfDigits::golden(16);
    auto apx = approximants(g, 11);
    for (int m = 2; m <= 9; ++m) {
        std::int64_t qm = apx[static_cast<std::size_t>(m)].q.convert_to<std::int64_t>();
        std::int64_t qm1 = apx[static_cast<std::size_t>(m) + 1].q.convert_to<std::int64_t>();
        PeriodicWordSpec plain(apx[static_cast<std::size_t>(m)].p, apx[static_cast<std::size_t>(m)].q);
        PeriodicWordSpec tilde = plain;
        tilde.variant = Variant::tilde;

        std::int64_t lo = (m % 2 == 0) ? -qm + 1 : -qm1 - 1;
        std::int64_t hi = (m % 2 == 0) ? qm1 - 2 : qm - 2;
        for (std::int64_t k = lo; k <= hi; ++k)
            CHECK(periodic_word_value(plain, k) == sturmian_value(g, k));

        std::int64_t lo_t = (m % 2 == 0) ? -qm1 - 1 : -qm + 1;
        std::int64_t hi_t = (m % 2 == 0) ? qm - 2 : qm1 - 2;
        for (std::int64_t k = lo_t; k <= hi_t; ++k)
            CHECK(periodic_word_value(tilde, k) == sturmian_value(g, k, Variant::tilde));
    }
}

TEST_CASE("shift invariance for even m") {
    CfDigits g = CfDigits::golden(16);
    auto apx = approximants(g, 11);
    for (int m = 2; m <= 10; m += 2) {
        std::int64_t qm = apx[static_cast<std::size_t>(m)].q.convert_to<std::int64_t>();
        std::int64_t qm1 = apx[static_cast<std::size_t>(m) + 1].q.convert_to<std::int64_t>();
        for (std::int64_t k = 1; k <= qm1; ++k)
            CHECK(sturmian_value(g, k) == sturmian_value(g, k - qm));
    }
}

TEST_CASE("palindromic decomposition") {
    CfDigits g = CfDigits::golden(14);
    auto split4 = palindromic_decomposition(g, 4);
    CHECK(split4.palindrome.str() == "101");
    CHECK(split4.suffix.str() == "10");

    auto split3 = palindromic_decomposition(g, 3);
    CHECK(split3.palindrome.str() == "1");
    CHECK(split3.suffix.str() == "01");

    auto split2 = palindromic_decomposition(CfDigits({1, 1}), 2);
    CHECK(split2.palindrome.empty());
    CHECK(split2.suffix.str() == "10");

    CHECK_THROWS_AS(palindromic_decomposition(g, 1), std::invalid_argument);

    for (int n = 2; n <= 13; ++n) {
        auto split = palindromic_decomposition(g, n);
        CHECK(split.palindrome.is_palindrome());
        CHECK(split.palindrome.size() + 2 == recursive_word(g, n).size());
    }
    // non-golden digits as well
    CfDigits mixed({2, 1, 3, 1, 2, 1, 1, 1});
    for (int n = 2; n <= 8; ++n) CHECK(palindromic_decomposition(mixed, n).palindrome.is_palindrome());
}

TEST_CASE("orbit-theta values via the agreement lemma") {
    CfDigits g = CfDigits::golden(30);
    BigRat alpha = alpha_value(CfDigits::golden(400), 256).value;
    auto apx = approximants(g, 9);
    for (int n : {4, 5, 6, 7}) {
        std::int64_t qn = apx[static_cast<std::size_t>(n)].q.convert_to<std::int64_t>();
        std::int64_t qn_prev = apx[static_cast<std::size_t>(n) - 1].q.convert_to<std::int64_t>();
        BigRat alpha_n = apx[static_cast<std::size_t>(n)].value();
        for (std::int64_t k0 : std::vector<std::int64_t>{1, -1, qn_prev / 2 + 1, -(qn_prev / 2 + 1), qn_prev, -qn_prev}) {
            if (k0 == 0 || std::abs(k0) > qn_prev) continue;
            BigRat theta = mod1(alpha * k0);
            for (std::int64_t k = -qn + 1; k <= qn - 2; ++k) {
                int expected = oracles::chi_word_value(alpha_n, theta, k);
                CHECK(periodic_value_orbit_theta(g, n, k0, k) == expected);
            }
        }
        CHECK_THROWS_AS(periodic_value_orbit_theta(g, n, qn_prev + 1, 0), std::domain_error);
        CHECK_THROWS_AS(periodic_value_orbit_theta(g, n, 1, qn - 1), std::domain_error);
    }
}

TEST_CASE("word container behaviour") {
    Word w("10110", 1);
    CHECK(w.size() == 5);
    CHECK(w[0] == 1);
    CHECK(w[1] == 0);
    CHECK(w.origin() == 1);
    CHECK(w.reversed().str() == "01101");
    CHECK(w.subword(1, 3).str() == "011");
    CHECK(w.subword(1, 3).origin() == 2);
    CHECK(Word("101").is_palindrome());
    CHECK(!Word("10").is_palindrome());
    // origin is metadata, not identity
    CHECK(Word("10", 0) == Word("10", 5));
    CHECK(Word("01") < Word("10"));
    CHECK(Word("1") < Word("00"));
    CHECK_THROWS_AS(Word("012"), std::invalid_argument);
}
