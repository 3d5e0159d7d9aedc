#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "test_support.hpp"
#include "wchaos/families.hpp"
#include "wchaos/oracle.hpp"

using namespace wchaos;
using wtest::random_kernel;
using wtest::random_point;
using wtest::rel_err;

TEST_CASE("to_polynomial pinned expansions") {
    const Polynomial p = to_polynomial(make_chaos(fixed_point(1)));
    REQUIRE(p.terms.size() == 2);
    CHECK(p.terms.at({2}) == 1.0);
    CHECK(p.terms.at({0}) == -1.0);

    SymTensor h = zero_tensor(1, 2);  // e1 + 2 e2
    add_entry(h, {1}, 1.0);
    add_entry(h, {2}, 2.0);
    const Polynomial q = to_polynomial(make_chaos(h));
    CHECK(q.terms.at({1, 0}) == 1.0);
    CHECK(q.terms.at({0, 1}) == 2.0);

    // prop41(m=2, nu=1, k=1) = (1/2) e1^{(x)4}: I_4 of it is (1/2) He_4(z1)
    const Polynomial r = to_polynomial(make_chaos(prop41_family(2, 1, 1)));
    CHECK(r.terms.at({4}) == Catch::Approx(0.5).margin(1e-15));
    CHECK(r.terms.at({2}) == Catch::Approx(-3.0).margin(1e-15));
    CHECK(r.terms.at({0}) == Catch::Approx(1.5).margin(1e-15));
}

TEST_CASE("to_polynomial matches evaluate at random points") {
    std::mt19937_64 gen(21);
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 1 + static_cast<int>(gen() % 4);
        const int d = 1 + static_cast<int>(gen() % 4);
        const ChaosElement F = make_chaos(random_kernel(gen, n, d, 10));
        const Polynomial p = to_polynomial(F);
        for (int i = 0; i < 10; ++i) {
            const GaussPoint z = random_point(gen, d);
            CHECK(rel_err(poly_eval(p, z), evaluate(F, z)) < 1e-10);
        }
    }
}

TEST_CASE("gaussian expectation by moment factorization") {
    Polynomial p = poly_zero(2);
    poly_add_term(p, {2, 0}, 1.0);
    CHECK(gaussian_expectation(p) == 1.0);

    Polynomial q = poly_zero(2);
    poly_add_term(q, {4, 2}, 1.0);
    CHECK(gaussian_expectation(q) == 3.0);

    Polynomial r = poly_zero(1);
    poly_add_term(r, {3}, 1.0);
    CHECK(gaussian_expectation(r) == 0.0);
}

TEST_CASE("oracle moments, pinned") {
    const ChaosElement F = make_chaos(fixed_point(1));
    CHECK(oracle_moment(F, 3) == Catch::Approx(8.0).margin(1e-12));
    CHECK(oracle_moment(F, 4) == Catch::Approx(60.0).margin(1e-12));
    CHECK(oracle_moment(make_chaos(basis_vector(1, 1)), 4) == Catch::Approx(3.0).margin(1e-12));
}

TEST_CASE("oracle mixed moments, pinned") {
    const ChaosElement F = make_chaos(fixed_point(1));
    CHECK(oracle_mixed(F, 0) == Catch::Approx(4.0).margin(1e-12));  // E||DF||^2 = n E F^2 = 4
    CHECK(oracle_mixed(F, 1) == Catch::Approx(8.0).margin(1e-12));  // (n/2) E F^3
    CHECK(oracle_mixed(make_chaos(basis_vector(1, 1)), 0) == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("mixed-moment identity suite on random kernels") {
    std::mt19937_64 gen(22);
    for (int rep = 0; rep < 15; ++rep) {
        const int n = 2 + static_cast<int>(gen() % 3);
        const ChaosElement F = make_chaos(random_kernel(gen, n, 3, 6));
        // E(F^s ||DF||^2) = n/(s+1) E(F^{s+2}), both sides brute force
        for (int s = 0; s <= 2; ++s)
            CHECK(rel_err(oracle_mixed(F, s),
                          double(n) / (s + 1) * oracle_moment(F, s + 2)) < 1e-9);
        // E[F^4] = (3/n) E[F^2 ||DF||^2]
        CHECK(rel_err(oracle_moment(F, 4), 3.0 / n * oracle_mixed(F, 2)) < 1e-9);
    }
}

TEST_CASE("oracle gradient matches grad_sq pointwise") {
    std::mt19937_64 gen(23);
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 1 + static_cast<int>(gen() % 4);
        const ChaosElement F = make_chaos(random_kernel(gen, n, 3, 8));
        long long budget = 0;
        const Polynomial g = gradient_square_polynomial(F, budget);
        for (int i = 0; i < 10; ++i) {
            const GaussPoint z = random_point(gen, 3);
            CHECK(rel_err(poly_eval(g, z), grad_sq(F, z)) < 1e-10);
        }
    }
}

TEST_CASE("budget exhaustion fails loudly") {
    // chained budget: a nearly-spent budget refuses the next multiply up front
    Polynomial p = poly_zero(1);
    poly_add_term(p, {0}, 1.0);
    poly_add_term(p, {1}, 2.0);
    poly_add_term(p, {2}, 3.0);
    long long budget = kOracleBudget - 5;  // next 3x3 multiply needs 9
    CHECK_THROWS_AS(poly_mul(p, p, budget), oracle_budget_error);

    // a real kernel whose second oracle moment is infeasible at the fixed cap
    const ChaosElement big = make_chaos(prop41_family(2, 2, 64));
    CHECK_THROWS_AS(oracle_moment(big, 2), oracle_budget_error);
}
