#pragma once

#include "tsd/cyclotomic.hpp"
#include "tsd/design.hpp"
#include "tsd/numeric.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tsd {

using IntMat = std::vector<std::vector<Int>>;
using RatMat = std::vector<std::vector<Rat>>;

// Full-rank lattice described by a symmetric positive-definite Gram matrix,
// optionally carrying an explicit basis (rows, ambient rational coordinates).
class Lattice {
public:
    explicit Lattice(RatMat gram, std::optional<RatMat> basis = std::nullopt);

    long rank() const { return static_cast<long>(gram_.size()); }
    const RatMat& gram() const { return gram_; }
    const std::optional<RatMat>& basis() const { return basis_; }

    bool integral() const;
    bool even() const; // integral with even diagonal
    const Rat& det() const { return det_; }

private:
    RatMat gram_;
    std::optional<RatMat> basis_;
    Rat det_;
};

// row-style Hermite reduction of an integer matrix; pivots walk the columns
// left to right taking the smallest nonzero entry in absolute value
IntMat hnf(IntMat rows);

// design coordinates as exact rationals; irrational entries are unsupported
RatMat rational_vectors(const Design& dsg);

// lattice spanned by the given vectors (any number >= rank); the stored basis
// is the Hermite-reduced one
Lattice lattice_from_vectors(const RatMat& vectors);

RatMat dual_gram(const Lattice& L);

struct ParityInfo {
    bool integral = false;
    bool even = false;
    Rat det;
    bool det_odd = false; // integral lattices only
};
ParityInfo parity_and_det(const Lattice& L);

struct SmithForm {
    std::vector<Int> diag; // nonnegative, divisibility chain
    IntMat U, V;           // U * A * V = diag(diag)
};
SmithForm smith_form(IntMat A);

// full diagonal of the Smith form of the Gram matrix (integral lattices)
std::vector<Int> snf_invariants(const Lattice& L);

// discriminant group L*/L with its torsion bilinear form b (mod 1) and, for
// even lattices, the quadratic form q (mod 2)
struct DiscGroup {
    std::vector<Int> orders;       // invariant factors > 1
    std::vector<std::vector<Rat>> gens; // generator coords in the lattice basis
    Int group_order;               // |L*/L| = |det|
    bool form_is_even = false;     // q defined iff the lattice is even

    struct Element {
        std::vector<Int> index;  // coefficients against gens
        std::vector<Rat> coords; // coset representative in [0,1)^n
        Rat q;                   // (x,x) mod 2, even lattices only
    };
    std::vector<Element> elements; // lexicographic in index
    RatMat gen_bilinear;           // b(g_i, g_j) mod 1
    std::vector<Rat> gen_q;        // q(g_i), even lattices only
};

// enumerates the group; throws BoundExceeded when |det| > bound
DiscGroup discriminant_form(const Lattice& L, const Int& bound);

struct GaussSumReport {
    long conductor = 8;
    Cyclo total = Cyclo(8);
    std::vector<std::pair<long, Cyclo>> sylow; // per-prime partial sums
    bool sylow_product_ok = false;             // product of partial sums == total
    bool magnitude_ok = false;                 // total * conj(total) == |group|
    std::optional<int> eighth_root;            // u with total == zeta_8^u * sqrt|group|
    Int group_order;
};
GaussSumReport gauss_sum(const DiscGroup& G);

struct MilgramReport {
    int expected = 0; // rank mod 8
    std::optional<int> got;
    bool pass = false;
    GaussSumReport sum;
};
MilgramReport milgram_check(const Lattice& L, const Int& bound);

// even sublattice of an odd integral lattice and its halved rescaling
struct EvenSplit {
    IntMat coords; // basis of the even sublattice in L's basis coordinates
    Lattice lambda_plus;
    Lattice gamma; // Gram of lambda_plus halved
    bool index_two = false;
    bool gamma_integral = false;
    bool gamma_even = false;
    bool plus_in_two_dual = false; // lambda_plus inside 2 L*

    EvenSplit(Lattice lp, Lattice g) : lambda_plus(std::move(lp)), gamma(std::move(g)) {}
};
EvenSplit even_sublattice(const Lattice& L);

struct CharVector {
    std::vector<Int> coords; // 0/1 lift in the lattice basis
    Int norm;
    int norm_mod8 = 0;
};
// solves (alpha, x) = (x, x) mod 2 for all x; unique mod 2L iff det is odd
CharVector characteristic_vector(const Lattice& L);

// class of an odd 2-adic unit modulo squares, represented by x mod 8
long two_adic_square_class(const Int& x);

} // namespace tsd
