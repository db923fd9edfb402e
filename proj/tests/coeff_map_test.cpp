#include <doctest.h>

#include <random>

#include <lcmident/coeff_map.hpp>

#include "support/reference_models.hpp"

using lcmident::CoeffLayout;
using lcmident::CompartmentModel;
using lcmident::Digraph;
using lcmident::Dual;
using lcmident::Matrix;
using lcmident::Param;
using lcmident::ParameterPoint;
using lcmident::Polynomial;
using lcmident::Rational;
using lcmident::char_poly;
using lcmident::char_poly_cycle_oracle;
using lcmident::coefficient_layout;
using lcmident::coefficient_map;
using lcmident::compartmental_matrix;
using lcmident::io_equation;
using lcmident::io_equation_at;
using lcmident::minor_det_poly;
using lcmident::random_point;
using namespace testsupport;

namespace {

Matrix<Rational> from_rows(const std::vector<std::vector<long>>& rows) {
    Matrix<Rational> m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = Rational(rows[i][j]);
    return m;
}

}  // namespace

TEST_CASE("characteristic polynomial basics") {
    CHECK(char_poly(from_rows({{-3}})) ==
          Polynomial<Rational>(std::vector<Rational>{Rational(3), Rational(1)}));

    std::mt19937_64 rng(61);
    for (int t = 0; t < 20; ++t) {
        const Rational p(static_cast<long>(rng() % 19) - 9);
        const Rational q(static_cast<long>(rng() % 19) - 9);
        const Rational r(static_cast<long>(rng() % 19) - 9);
        const Rational s(static_cast<long>(rng() % 19) - 9);
        Matrix<Rational> m(2, 2);
        m.at(0, 0) = p;
        m.at(0, 1) = q;
        m.at(1, 0) = r;
        m.at(1, 1) = s;
        const auto cp = char_poly(m);
        CHECK(cp.coeff(2) == Rational(1));
        CHECK(cp.coeff(1) == -(p + s));
        CHECK(cp.coeff(0) == p * s - q * r);
    }
}

TEST_CASE("three-compartment characteristic coefficients are the symmetric-function forms") {
    const CompartmentModel m = fig1();
    const ParameterPoint pt = random_point(m, 5);
    const Matrix<Rational> a = compartmental_matrix(m, pt);
    const auto cp = char_poly(a);

    const Rational d1 = a.at(0, 0), d2 = a.at(1, 1), d3 = a.at(2, 2);
    const Rational a12 = pt.edge_rates.at({2, 1});
    const Rational a21 = pt.edge_rates.at({1, 2});
    const Rational a13 = pt.edge_rates.at({3, 1});
    const Rational a32 = pt.edge_rates.at({2, 3});
    const Rational e1 = d1 + d2 + d3;
    const Rational e2 = d1 * d2 + d1 * d3 + d2 * d3;
    const Rational e3 = d1 * d2 * d3;
    CHECK(cp.coeff(3) == Rational(1));
    CHECK(cp.coeff(2) == -e1);
    CHECK(cp.coeff(1) == e2 - a12 * a21);
    CHECK(cp.coeff(0) == -(e3 - a12 * a21 * d3 + a21 * a13 * a32));
}

TEST_CASE("cycle-collection oracle special cases") {
    // no edges, all leaks: product of (s + leak rate)
    const CompartmentModel diag(Digraph(3, {}), {1}, {1}, {1, 2, 3});
    const ParameterPoint pt = random_point(diag, 3);
    Polynomial<Rational> expected = Polynomial<Rational>::constant(Rational(1));
    for (int v = 1; v <= 3; ++v)
        expected = expected *
                   Polynomial<Rational>(std::vector<Rational>{pt.leak_rates.at(v), Rational(1)});
    CHECK(char_poly_cycle_oracle(diag, pt) == expected);

    // directed 2-cycle with no leaks: s (s + a12 + a21)
    const CompartmentModel cyc(Digraph(2, {{1, 2}, {2, 1}}), {1}, {1}, {});
    const ParameterPoint pc = random_point(cyc, 4);
    const Rational s1 = pc.edge_rates.at({1, 2}) + pc.edge_rates.at({2, 1});
    CHECK(char_poly_cycle_oracle(cyc, pc) ==
          Polynomial<Rational>(std::vector<Rational>{Rational(0), s1, Rational(1)}));

    const CompartmentModel big(Digraph(9, {}), {1}, {1}, {});
    CHECK_THROWS_WITH_AS(char_poly_cycle_oracle(big, random_point(big, 1)),
                         "oracle limited to small models", lcmident::Error);
}

TEST_CASE("characteristic polynomial equals the cycle-collection oracle") {
    std::mt19937_64 rng(67);
    for (int t = 0; t < 25; ++t) {
        const int n = static_cast<int>(rng() % 4) + 2;
        const CompartmentModel m(random_sc_graph(n, rng()), {1}, {1}, random_subset(n, rng()));
        for (int p = 0; p < 3; ++p) {
            const ParameterPoint pt = random_point(m, rng());
            CHECK(char_poly(compartmental_matrix(m, pt)) == char_poly_cycle_oracle(m, pt));
        }
    }
}

TEST_CASE("minor determinant examples") {
    Matrix<Rational> a(2, 2);
    a.at(0, 0) = Rational(-7);
    a.at(1, 1) = Rational(-4);
    a.at(1, 0) = Rational(7);
    // deleting row 1, column 1 leaves s - A22
    CHECK(minor_det_poly(a, 1, 1) ==
          Polynomial<Rational>(std::vector<Rational>{Rational(4), Rational(1)}));

    // three-compartment model, row 1 column 1: s^2 - E1(a22,a33) s + E2(a22,a33)
    const CompartmentModel m = fig1();
    const ParameterPoint pt = random_point(m, 9);
    const Matrix<Rational> full = compartmental_matrix(m, pt);
    const auto minor = minor_det_poly(full, 1, 1);
    const Rational d2 = full.at(1, 1), d3 = full.at(2, 2);
    CHECK(minor.coeff(2) == Rational(1));
    CHECK(minor.coeff(1) == -(d2 + d3));
    CHECK(minor.coeff(0) == d2 * d3);
}

TEST_CASE("minor determinant equals the seeded-entry derivative of the augmented matrix") {
    // det(A_ji) == -(-1)^{i+j} * d/d a_ji of char(s, A~), with A~ carrying a
    // fresh independent entry in position (j, i)
    std::mt19937_64 rng(71);
    for (int t = 0; t < 25; ++t) {
        const int n = static_cast<int>(rng() % 4) + 2;
        const CompartmentModel m(random_sc_graph(n, rng()), {1}, {1}, random_subset(n, rng()));
        const ParameterPoint pt = random_point(m, rng());
        const Matrix<Rational> a = compartmental_matrix(m, pt);
        const int j = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        const int i = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));

        Matrix<Dual> augmented(a.rows(), a.cols());
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < a.cols(); ++c) augmented.at(r, c) = Dual(a.at(r, c));
        augmented.at(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(i - 1)) =
            Dual::seeded(Rational(static_cast<long>(rng() % 1000000) + 1));

        const auto char_dual = char_poly(augmented);
        std::vector<Rational> deriv_coeffs;
        for (int k = 0; k <= char_dual.degree(); ++k)
            deriv_coeffs.push_back(char_dual.coeff(static_cast<std::size_t>(k)).der);
        Polynomial<Rational> deriv(deriv_coeffs);
        if ((i + j) % 2 == 0) deriv = -deriv;

        CHECK(minor_det_poly(a, j, i) == deriv);
    }
}

TEST_CASE("three-compartment io equation matches the published shape") {
    const CompartmentModel m = fig1();
    const auto [eq, pt] = io_equation(m, 15, 1);
    CHECK(eq.gcd_degree == 0);
    CHECK(eq.lhs.degree() == 3);
    CHECK(eq.lhs.coeff(3) == Rational(1));
    REQUIRE(eq.rhs.size() == 1);
    CHECK(eq.rhs[0].first == 1);
    CHECK(eq.rhs[0].second.degree() == 2);
    CHECK(eq.rhs[0].second.coeff(2) == Rational(1));  // monic when i = j
    CHECK(eq.warnings.empty());
    // five nonconstant coefficients: three on the left, two on the right
}

TEST_CASE("strongly connected models with a leak have coprime io polynomials") {
    std::mt19937_64 rng(73);
    for (int t = 0; t < 15; ++t) {
        const int n = static_cast<int>(rng() % 4) + 2;
        std::set<int> leaks = random_subset(n, rng());
        if (leaks.empty()) leaks.insert(1);
        const CompartmentModel m(random_sc_graph(n, rng()), {1}, {1}, leaks);
        const auto [eq, pt] = io_equation(m, rng(), 1);
        CHECK(eq.gcd_degree == 0);
    }
}

TEST_CASE("the disconnected two-compartment model reduces by its common factor") {
    const CompartmentModel m = degenerate_gcd_model();
    const auto [eq, pt] = io_equation(m, 1, 1);
    CHECK(eq.gcd_degree == 1);
    // lhs s^2 and rhs s, reduced to lhs s and rhs 1
    CHECK(eq.lhs == Polynomial<Rational>(std::vector<Rational>{Rational(0), Rational(1)}));
    REQUIRE(eq.rhs.size() == 1);
    CHECK(eq.rhs[0].second == Polynomial<Rational>::constant(Rational(1)));
    REQUIRE(eq.warnings.size() == 1);
    CHECK(eq.warnings[0].find("common factor of degree 1") != std::string::npos);
}

TEST_CASE("io equation errors") {
    const CompartmentModel m = fig1();
    CHECK_THROWS_AS(io_equation(m, 1, 2), lcmident::Error);  // 2 is not an output
    const CompartmentModel no_in(three_cycle_graph(), {}, {1}, {1});
    CHECK_THROWS_AS(io_equation(no_in, 1, 1), lcmident::Error);
}

TEST_CASE("coefficient layout is value-independent and sized by shape") {
    const CompartmentModel m1 = fig1();
    const CoeffLayout layout = coefficient_layout(m1);
    CHECK(layout.size() == 6);  // 3 lhs + 3 rhs slots

    const auto cv_a = coefficient_map(m1, random_point(m1, 21));
    const auto cv_b = coefficient_map(m1, random_point(m1, 22));
    REQUIRE(cv_a.layout.size() == cv_b.layout.size());
    for (std::size_t k = 0; k < cv_a.layout.size(); ++k) {
        CHECK(cv_a.layout.slots[k].output == cv_b.layout.slots[k].output);
        CHECK(cv_a.layout.slots[k].input == cv_b.layout.slots[k].input);
        CHECK(cv_a.layout.slots[k].power == cv_b.layout.slots[k].power);
    }

    const CompartmentModel m3 = fig3();
    CHECK(coefficient_layout(m3).size() == 12);  // two outputs, one input
}

TEST_CASE("output-2 lead coefficient of the two-output model is the shortest-path monomial") {
    const CompartmentModel m = fig3();
    const ParameterPoint pt = random_point(m, 31);
    const auto cv = coefficient_map(m, pt);
    // slot (output 2, input 1, power n-1-d(2,1)) with d(2,1) = 1
    bool found = false;
    for (std::size_t k = 0; k < cv.layout.size(); ++k) {
        const auto& slot = cv.layout.slots[k];
        if (slot.output == 2 && slot.input == 1 && slot.power == 1) {
            CHECK(cv.values[k] == pt.edge_rates.at({1, 2}));
            found = true;
        }
        if (slot.output == 2 && slot.input == 1 && slot.power == 2)
            CHECK(cv.values[k] == Rational(0));  // beyond the generic degree
    }
    CHECK(found);
}

TEST_CASE("lead coefficients of cross terms are shortest-path sums on full-leak models") {
    std::mt19937_64 rng(79);
    for (int t = 0; t < 10; ++t) {
        const int n = static_cast<int>(rng() % 3) + 3;
        std::set<int> all;
        for (int v = 1; v <= n; ++v) all.insert(v);
        const int extra_out = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
        const CompartmentModel m(random_sc_graph(n, rng()), {1}, {1, extra_out}, all);
        const ParameterPoint pt = random_point(m, rng());
        const std::vector<Rational> values = pt.aligned(m);

        const auto eq = io_equation_at<Rational>(m, values, extra_out);
        const auto paths = lcmident::shortest_paths(m.graph(), 1, extra_out);
        Rational expected(0);
        for (const auto& path : paths.paths)
            expected += lcmident::path_monomial<Rational>(m, values, path);
        const int lead_power = n - 1 - paths.length;
        REQUIRE(eq.rhs.size() == 1);
        CHECK(eq.rhs[0].second.degree() == lead_power);
        CHECK(eq.rhs[0].second.coeff(static_cast<std::size_t>(lead_power)) == expected);
    }
}

TEST_CASE("cycle map values on the reference models") {
    const CompartmentModel m = fig1();
    const ParameterPoint pt = random_point(m, 41);
    const auto f = lcmident::cycle_map(m, pt);
    REQUIRE(f.size() == 5);  // |E| + 1
    const Matrix<Rational> a = compartmental_matrix(m, pt);
    CHECK(f[0] == a.at(0, 0));
    CHECK(f[1] == a.at(1, 1));
    CHECK(f[2] == a.at(2, 2));
    const Rational c12 = pt.edge_rates.at({1, 2}) * pt.edge_rates.at({2, 1});
    const Rational c123 =
        pt.edge_rates.at({1, 2}) * pt.edge_rates.at({2, 3}) * pt.edge_rates.at({3, 1});
    CHECK(((f[3] == c12 && f[4] == c123) || (f[3] == c123 && f[4] == c12)));

    const CompartmentModel two(Digraph(2, {{1, 2}, {2, 1}}), {1}, {1}, {1, 2});
    CHECK(lcmident::cycle_map(two, random_point(two, 1)).size() == 3);

    std::mt19937_64 rng(83);
    for (int t = 0; t < 10; ++t) {
        const int n = static_cast<int>(rng() % 4) + 2;
        const CompartmentModel rm(random_sc_graph(n, rng()), {1}, {1}, random_subset(n, rng()));
        CHECK(lcmident::cycle_map(rm, random_point(rm, rng())).size() == rm.edge_count() + 1);
    }

    const CompartmentModel disconnected(Digraph(2, {{1, 2}}), {1}, {1}, {1});
    CHECK_THROWS_AS(lcmident::cycle_map(disconnected, random_point(disconnected, 1)),
                    lcmident::Error);
}

TEST_CASE("sum-of-paths map") {
    const CompartmentModel m3 = fig3();
    const ParameterPoint pt = random_point(m3, 43);
    const auto g = lcmident::sum_of_paths_map(m3, pt);
    REQUIRE(g.size() == 1);
    CHECK(g[0] == pt.edge_rates.at({1, 2}));

    const CompartmentModel m1 = fig1();
    CHECK(lcmident::sum_of_paths_map(m1, random_point(m1, 1)).empty());

    const CompartmentModel diamond(Digraph(4, {{1, 2}, {1, 3}, {2, 4}, {3, 4}}), {1}, {1, 4},
                                   {1, 2, 3, 4});
    const ParameterPoint pd = random_point(diamond, 44);
    const auto gd = lcmident::sum_of_paths_map(diamond, pd);
    REQUIRE(gd.size() == 1);
    CHECK(gd[0] == pd.edge_rates.at({1, 2}) * pd.edge_rates.at({2, 4}) +
                       pd.edge_rates.at({1, 3}) * pd.edge_rates.at({3, 4}));

    const CompartmentModel off(three_cycle_graph(), {2}, {2}, {1});
    CHECK_THROWS_AS(lcmident::sum_of_paths_map(off, random_point(off, 1)), lcmident::Error);
}

TEST_CASE("two disjoint blocks reduce to the observable block, duals included") {
    // 1 <-> 2 with a leak at 1, plus an invisible 3 <-> 4 with a leak at 3
    const CompartmentModel m(Digraph(4, {{1, 2}, {2, 1}, {3, 4}, {4, 3}}), {1}, {1}, {1, 3});
    const ParameterPoint pt = random_point(m, 47);
    const std::vector<Rational> values = pt.aligned(m);
    const auto eq = io_equation_at<Rational>(m, values, 1);
    CHECK(eq.gcd_degree == 2);
    CHECK(eq.lhs.degree() == 2);

    // the reduced equation no longer involves the second block: every dual
    // pass against a block-two parameter must vanish
    const CoeffLayout layout = coefficient_layout(m);
    for (const Param p : {Param::edge(3, 4), Param::edge(4, 3), Param::leak(3)}) {
        const auto seeded = lcmident::seeded_values(m, pt, m.param_index(p));
        const auto coeffs = lcmident::coefficient_values<Dual>(m, seeded, layout);
        for (const auto& c : coeffs) CHECK(c.der == Rational(0));
    }
    // and a block-one parameter must not
    const auto seeded = lcmident::seeded_values(m, pt, m.param_index(Param::leak(1)));
    const auto coeffs = lcmident::coefficient_values<Dual>(m, seeded, layout);
    bool any_nonzero = false;
    for (const auto& c : coeffs)
        if (!c.der.is_zero()) any_nonzero = true;
    CHECK(any_nonzero);
}
