#include "doctest.h"

#include "shtuka/field.hpp"

using namespace shtuka;

namespace {

// Independent brute-force multiplication oracle: dense polynomial product
// reduced by the modulus, all in plain ints.
int oracle_mul(const FieldPtr& f, int a, int b) {
    int p = f->p(), e = f->e();
    std::vector<int> pa(e), pb(e);
    for (int i = 0; i < e; ++i, a /= p) pa[i] = a % p;
    for (int i = 0; i < e; ++i, b /= p) pb[i] = b % p;
    std::vector<int> prod(2 * e - 1, 0);
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p;
    const auto& m = f->modulus();
    for (int d = 2 * e - 2; d >= e; --d) {
        int lead = prod[d];
        if (!lead) continue;
        for (int i = 0; i <= e; ++i)
            prod[d - e + i] = ((prod[d - e + i] - lead * m[i]) % p + p) % p;
    }
    int code = 0;
    for (int i = e - 1; i >= 0; --i) code = code * p + prod[i];
    return code;
}

}  // namespace

TEST_CASE("prime field basics") {
    auto f3 = FieldParams::make(3);
    CHECK((FqElem::from_int(f3, 1) + FqElem::from_int(f3, 2)).is_zero());
    auto f5 = FieldParams::make(5);
    CHECK(FqElem::from_int(f5, 3) + FqElem::from_int(f5, 4) == FqElem::from_int(f5, 2));
    CHECK(FqElem::from_int(f3, 2).inv() == FqElem::from_int(f3, 2));
    CHECK(FqElem::from_int(f5, 2).pow(5) == FqElem::from_int(f5, 2));
}

TEST_CASE("extension field arithmetic") {
    auto f4 = FieldParams::make(2, 2);  // modulus x^2 + x + 1
    FqElem x = FqElem::from_coeffs(f4, {0, 1});
    FqElem xp1 = FqElem::from_coeffs(f4, {1, 1});
    CHECK((x + x).is_zero());
    CHECK(x * xp1 == FqElem::one(f4));
    // cross-check against the independent table
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            CHECK(int((FqElem(f4, uint16_t(a)) * FqElem(f4, uint16_t(b))).code()) ==
                  oracle_mul(f4, a, b));
}

TEST_CASE("construction rejects bad parameters") {
    CHECK_THROWS_AS(FieldParams(4), Error);                      // not prime
    CHECK_THROWS_AS(FieldParams(2, 2, {1, 0, 1}), Error);        // x^2+1 = (x+1)^2 over F_2
    CHECK_THROWS_AS(FqElem::from_int(FieldParams::make(3), 0).inv(), NotInvertibleError);
}

TEST_CASE("a^q = a exhaustively for q <= 16") {
    for (auto [p, e] : {std::pair{2, 1}, {3, 1}, {5, 1}, {7, 1}, {11, 1}, {13, 1},
                        {2, 2}, {2, 3}, {2, 4}, {3, 2}}) {
        auto f = FieldParams::make(p, e);
        if (f->q() > 16) continue;
        for (int a = 0; a < f->q(); ++a)
            CHECK(FqElem(f, uint16_t(a)).pow(f->q()) == FqElem(f, uint16_t(a)));
    }
}

TEST_CASE("field axioms on random triples") {
    std::mt19937_64 rng(12345);
    for (auto [p, e] : {std::pair{2, 1}, {3, 1}, {2, 2}, {5, 1}, {3, 2}, {2, 4}}) {
        auto f = FieldParams::make(p, e);
        for (int t = 0; t < 1000; ++t) {
            FqElem a = random_fq(f, rng), b = random_fq(f, rng), c = random_fq(f, rng);
            CHECK(a + b == b + a);
            CHECK((a + b) + c == a + (b + c));
            CHECK(a * b == b * a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + FqElem::zero(f) == a);
            CHECK(a * FqElem::one(f) == a);
            CHECK((a - a).is_zero());
            if (!a.is_zero()) CHECK(a * a.inv() == FqElem::one(f));
        }
    }
}

TEST_CASE("mismatched fields are rejected") {
    auto f3 = FieldParams::make(3);
    auto f5 = FieldParams::make(5);
    CHECK_THROWS_AS(FqElem::from_int(f3, 1) + FqElem::from_int(f5, 1), RingMismatchError);
}
