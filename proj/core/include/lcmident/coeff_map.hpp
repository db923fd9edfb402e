#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lcmident/model.hpp"
#include "lcmident/polynomial.hpp"

namespace lcmident {

/// Characteristic polynomial det(sI - A), monic of degree n, computed by
/// Faddeev-LeVerrier.  The only divisions are by the integers 1..n, so the
/// same code runs over Rational and Dual.
template <typename R>
Polynomial<R> char_poly(const Matrix<R>& a) {
    if (a.rows() != a.cols()) throw Error("characteristic polynomial of a non-square matrix");
    const std::size_t n = a.rows();
    std::vector<R> coeffs(n + 1, R(0));
    coeffs[n] = R(1);
    if (n == 0) return Polynomial<R>(std::move(coeffs));

    Matrix<R> m = a;
    R c = -m.trace();
    coeffs[n - 1] = c;
    for (std::size_t k = 2; k <= n; ++k) {
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) += c;
        m = a * m;
        c = -(m.trace() / R(static_cast<long>(k)));
        coeffs[n - k] = c;
    }
    return Polynomial<R>(std::move(coeffs));
}

/// det of the (n-1)x(n-1) submatrix of (sI - A) with row j and column i
/// removed (1-indexed), as a polynomial in s.  Evaluated at the integer
/// nodes 0..n-1 and recovered by Lagrange interpolation; degree <= n-1,
/// monic of degree exactly n-1 when i == j.
template <typename R>
Polynomial<R> minor_det_poly(const Matrix<R>& a, int row_j, int col_i) {
    if (a.rows() != a.cols()) throw Error("minor of a non-square matrix");
    const std::size_t n = a.rows();
    if (row_j < 1 || col_i < 1 || static_cast<std::size_t>(row_j) > n ||
        static_cast<std::size_t>(col_i) > n)
        throw Error("minor indices out of range");
    if (n == 1) return Polynomial<R>::constant(R(1));  // empty determinant

    std::vector<Rational> nodes;
    std::vector<R> values;
    nodes.reserve(n);
    values.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Rational node(static_cast<long>(k));
        Matrix<R> shifted(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                shifted.at(i, j) = -a.at(i, j);
                if (i == j) shifted.at(i, j) += R(node);
            }
        nodes.push_back(node);
        values.push_back(det_exact(shifted.minor_removed(static_cast<std::size_t>(row_j - 1),
                                                         static_cast<std::size_t>(col_i - 1))));
    }
    return lagrange_interpolate(nodes, values);
}

/// One reduced input-output equation for a single output:
///   lhs * y_i = sum_j rhs[j] * u_j
/// with lhs = det(sI-A)/g_i monic, rhs[j] = (-1)^{i+j} det(A_ji)/g_i, and
/// g_i the monic gcd of the lot.
template <typename R>
struct IoEquationT {
    int output = 0;
    Polynomial<R> lhs;
    std::vector<std::pair<int, Polynomial<R>>> rhs;  // (input j, polynomial), ascending j
    int gcd_degree = 0;
    std::vector<std::string> warnings;
};

/// Single evaluation at the given parameter values.  A positive gcd degree
/// while the model is strongly connected with at least one leak is a
/// measure-zero specialization accident and raises DegeneratePointError so
/// the caller can redraw; otherwise the common factor is structural and is
/// removed with a warning.
template <typename R>
IoEquationT<R> io_equation_at(const CompartmentModel& model, const std::vector<R>& values,
                              int output);

/// Seeded front-end: evaluates at random_point(seed), redrawing up to five
/// times when the point turns out degenerate.
struct IoEquationResult {
    IoEquationT<Rational> equation;
    ParameterPoint point;
};
IoEquationResult io_equation(const CompartmentModel& model, std::uint64_t seed, int output);
IoEquationResult io_equation(const CompartmentModel& model, const ParameterPoint& point,
                             int output);

/// Fixed slot layout of the coefficient map: for each output (ascending), n
/// left-hand coefficients (powers 0..n-1, the monic lead excluded), then for
/// each input (ascending) n right-hand coefficients (powers 0..n-1, lead
/// included).  The layout depends only on the model shape, never on values;
/// slots beyond a polynomial's degree hold constants and contribute zero
/// Jacobian rows.
struct CoeffSlot {
    int output = 0;
    int input = 0;  // 0 marks a left-hand slot
    int power = 0;
};
struct CoeffLayout {
    std::vector<CoeffSlot> slots;
    std::size_t size() const { return slots.size(); }
};
CoeffLayout coefficient_layout(const CompartmentModel& model);

/// All coefficients of all input-output equations, in layout order.
template <typename R>
std::vector<R> coefficient_values(const CompartmentModel& model, const std::vector<R>& values,
                                  const CoeffLayout& layout);

/// Spec-facing bundle of the evaluated coefficient map.
struct CoefficientVector {
    CoeffLayout layout;
    std::vector<Rational> values;
};
CoefficientVector coefficient_map(const CompartmentModel& model, const ParameterPoint& point);

/// Independent characteristic-polynomial oracle: the coefficient of s^{n-k}
/// is (-1)^k times the signed sum over vertex-disjoint collections of cycles
/// (diagonal self-cycles included) covering exactly k edges, with sign +1 for
/// odd and -1 for even cycle length.  Exponential; guarded to n <= 8.
Polynomial<Rational> char_poly_cycle_oracle(const CompartmentModel& model,
                                            const ParameterPoint& point);

/// Monomial value of one directed cycle (vertex sequence) at given values.
template <typename R>
R cycle_monomial(const CompartmentModel& model, const std::vector<R>& values,
                 const std::vector<int>& cycle) {
    R prod(1);
    for (std::size_t t = 0; t < cycle.size(); ++t) {
        const int from = cycle[t];
        const int to = cycle[(t + 1) % cycle.size()];
        prod = prod * values[model.param_index(Param::edge(from, to))];
    }
    return prod;
}

/// Monomial value of one directed path (vertex sequence) at given values.
template <typename R>
R path_monomial(const CompartmentModel& model, const std::vector<R>& values,
                const std::vector<int>& path) {
    R prod(1);
    for (std::size_t t = 0; t + 1 < path.size(); ++t)
        prod = prod * values[model.param_index(Param::edge(path[t], path[t + 1]))];
    return prod;
}

/// The cycle map f: the |V| diagonal entries of A(G) (self-cycles) followed
/// by the monomials of a cycle-space basis; |E|+1 components in total.
/// Requires strong connectivity.
std::vector<Rational> cycle_map(const CompartmentModel& model, const ParameterPoint& point);

/// The sum-of-paths map g: for each extra output i the sum over shortest
/// paths 1->i of the path monomials, then for each extra input j the same for
/// j->1.  Requires 1 to be both an input and an output.
std::vector<Rational> sum_of_paths_map(const CompartmentModel& model, const ParameterPoint& point);

}  // namespace lcmident
