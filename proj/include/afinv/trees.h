/** \file trees.h
    Exact tree-diagram calculus for the Hamilton-Jacobi layers Q^[m] of the
    inverse-map potential Q_t = sum_m t^m Q^[m], Q^[0] = P, with

        m Q^[m] = 1/2 sum_{i+j=m-1} <grad Q^[i], grad Q^[j]>.

    A layer is a multiset of unlabeled trees on m+1 vertices with exact
    rational coefficients.  Evaluating a tree on an arrangement sums over
    all labelings of its vertices by hyperplanes: a vertex h carries a
    factor lambda_h, an edge (h, k) carries <u_h, u_k> / (f_h(z) f_k(z)),
    so a vertex of degree d contributes f_h^{-d} overall.

    The gradient dot product is realized combinatorially by grafting: a new
    edge between a vertex of degree d1 in one tree and a vertex of degree d2
    in another, with the coefficient factor eps(d1) eps(d2), where eps(0) = +1
    (differentiating the logarithmic vertex of P) and eps(d) = -d for d >= 1
    (differentiating a vertex factor f^{-d}).
*/
#pragma once

#include "afinv/arrangement.h"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace trees {

using num::Rational;
using num::Real;
using num::Vec;

using Edge = std::pair<int, int>;

struct TreeShape {
    int vertices = 1;
    std::vector<Edge> edges;  // vertex labels 0..vertices-1
    std::string code;         // canonical form; equal iff isomorphic
};

/// Centroid-rooted canonical code over the alphabet "()"; children sorted,
/// bicentroidal trees take the lexicographically smaller rooting.  Throws
/// std::invalid_argument unless the edge list is a tree on the label set.
std::string canonical_code(int vertices, const std::vector<Edge>& edges);

/// Rebuilds the canonical representative (vertices numbered in DFS order).
TreeShape decode(const std::string& code);

int degree(const TreeShape& shape, int v);
std::vector<int> degree_profile(const TreeShape& shape);  // sorted descending

struct TreeTerm {
    Rational coeff;
    TreeShape shape;
};

/// Joins t1 at vertex v1 with t2 at vertex v2 by a new edge; multiplies the
/// coefficients and the eps factors of the two marked degrees.
TreeTerm graft(const TreeTerm& t1, int v1, const TreeTerm& t2, int v2);

/// Q^[m] as canonical code -> term; order 0 is the single-vertex P term.
struct QLayer {
    int order = 0;
    std::map<std::string, TreeTerm> terms;
};

int layer_cap();
void set_layer_cap(int cap);

/// Memoized layer table up to the cap (default 8).
const QLayer& q_layer(int m);

Rational coefficient_sum(const QLayer& layer);

std::uint64_t labeling_budget();
void set_labeling_budget(std::uint64_t budget);

/// Numeric value of Q^[m](z) on the arrangement (m >= 1; the m = 0 layer is
/// the logarithmic potential, see hyper::potential).  Cost |A|^{m+1}
/// labelings; throws when that exceeds the budget.
Real evaluate_layer(const QLayer& layer, const hyper::Arrangement& arr, const Vec& z);

/// grad Q^[m](z), differentiated exactly per labeling.
Vec evaluate_layer_gradient(const QLayer& layer, const hyper::Arrangement& arr, const Vec& z);

/// Hessian of Q^[m](z), exact per labeling (used by the Burgers check).
std::vector<Vec> evaluate_layer_hessian(const QLayer& layer, const hyper::Arrangement& arr,
                                        const Vec& z);

struct TableRow {
    int order;
    std::string code;
    Rational coeff;
    std::vector<int> degrees;
};

/// Full coefficient table for layers 1..m_max, sorted by (order, code).
std::vector<TableRow> coefficient_table(int m_max);

/// One undirected DOT graph per shape, coefficient in the graph label.
std::string to_dot(const QLayer& layer);

}  // namespace trees
