#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsd/mpoly.hpp"

namespace tsd {

// Counting argument for a hypothetical tight 7-design with odd d.  With
// n = 3d^2-4 and a characteristic vector of norm N = n + delta - 8a, the
// number n_k of antipodal pairs {x,-x} with |(x,alpha)| = k satisfies four
// linear conditions; eliminating the unknowns leaves two quantities that
// must be integers for every integer pair (a, d's residue data).

// P0, P2, P4, P6 as polynomials in the variables a, d.
std::array<MPoly, 4> moment_polys(int delta);

// A = (P4 - 10 P2 + 9 P0)/2^7 and B = (P6 - 35 P4 + 259 P2 - 225 P0)/2^10.
std::pair<MPoly, MPoly> integrality_combos(int delta);

// 2-adic summary of one coefficient-of-a^j, itself a polynomial in b after
// the substitution d = 16b + r.  Valuations of the b^0 and b^1 coefficients
// are kept separately; `rest` is the minimum over b^2 and higher.  Zero
// coefficients report the +infinity sentinel from v2().
struct CoefficientShape {
    char source = 'A';
    int a_power = 0;
    long v2_const = 0;
    long v2_linear = 0;
    long v2_rest = 0;

    bool integral() const;    // lies in Z[b]
    bool half_shifted() const;  // lies in 1/2 + Z[b]
};

enum class CellConclusion { Contradiction, BEven };

struct CongruenceCase {
    int r = 0;
    int delta = 0;
    std::string label;  // a1, a2, b1, b2, c0, c1, c2
    CellConclusion conclusion = CellConclusion::Contradiction;
    std::vector<CoefficientShape> diagnostics;
};

// Classifies one cell of the (r, delta) table.  Exactly one of the seven
// case shapes must match; anything else throws std::logic_error, which is a
// defect in the table argument, not an input error.
CongruenceCase classify(int r, int delta);

// Test hook: adds `amount * a^a_power * b^b_power` to combo A or B of one
// cell before classification, to confirm the table check cannot pass on
// corrupted coefficients.
struct Perturbation {
    int r = 0;
    int delta = 0;
    char source = 'A';
    int a_power = 0;
    int b_power = 0;
    Rat amount;
};

struct CellReport {
    int r = 0;
    int delta = 0;
    std::string expected;
    std::string label;  // empty when classification failed
    bool ok = false;
    std::string detail;
    std::vector<CoefficientShape> diagnostics;
};

struct TableReport {
    bool pass = false;
    std::vector<CellReport> cells;
    std::vector<std::string> conclusions;
};

TableReport verify_table(const std::vector<Perturbation>& perturb = {});

// Residue pairs (a mod 32, b mod 32) at which both combos take 2-integral
// values; empty for every contradiction cell, only even b for the rest.
std::vector<std::pair<int, int>> scan_clearances(int r, int delta);

}  // namespace tsd
