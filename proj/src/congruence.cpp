#include "tsd/congruence.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tsd {

namespace {

void check_delta(int delta) {
    if (delta != 0 && delta != 2 && delta != 4 && delta != 6)
        throw std::invalid_argument("delta must be one of 0, 2, 4, 6");
}

void check_residue(int r) {
    if (r != 3 && r != 5 && r != 7 && r != -3 && r != -5 && r != -7)
        throw std::invalid_argument("r must be one of +-3, +-5, +-7");
}

const std::vector<std::string> kVarsAD = {"a", "d"};

MPoly ad_const(long c) { return MPoly::constant(Rat(c)).with_vars(kVarsAD); }

}  // namespace

std::array<MPoly, 4> moment_polys(int delta) {
    check_delta(delta);
    const MPoly a = MPoly::var("a").with_vars(kVarsAD);
    const MPoly d = MPoly::var("d").with_vars(kVarsAD);
    const MPoly d2 = d * d;
    const MPoly n = 3 * d2 - ad_const(4);
    const MPoly N = n + ad_const(delta) - 8 * a;
    const MPoly u = 3 * d2 - ad_const(2);  // n + 2
    const MPoly w = d2 - ad_const(1);
    const Rat half(1, 2);

    return {
        half * (n * u * w),
        half * (u * w * d * N),
        Rat(3) * half * (w * d2 * N * N),
        Rat(5) * half * (w * d * N * N * N),
    };
}

std::pair<MPoly, MPoly> integrality_combos(int delta) {
    const auto P = moment_polys(delta);
    MPoly A = P[2] - 10 * P[1] + 9 * P[0];
    MPoly B = P[3] - 35 * P[2] + 259 * P[1] - 225 * P[0];
    A *= Rat(1, 128);
    B *= Rat(1, 1024);
    return {A, B};
}

bool CoefficientShape::integral() const {
    return v2_const >= 0 && v2_linear >= 0 && v2_rest >= 0;
}

bool CoefficientShape::half_shifted() const {
    return v2_const == -1 && v2_linear >= 0 && v2_rest >= 0;
}

namespace {

CoefficientShape shape_of(char source, int a_power, const MPoly& combo) {
    CoefficientShape s;
    s.source = source;
    s.a_power = a_power;
    s.v2_const = v2(Rat(0));
    s.v2_linear = s.v2_const;
    s.v2_rest = s.v2_const;
    const MPoly c = combo.coeff_in("a", static_cast<unsigned>(a_power));
    for (const auto& [e, coeff] : c.terms()) {
        const unsigned bdeg = e.empty() ? 0u : e[0];
        const long val = v2(coeff);
        if (bdeg == 0)
            s.v2_const = val;
        else if (bdeg == 1)
            s.v2_linear = val;
        else
            s.v2_rest = std::min(s.v2_rest, val);
    }
    return s;
}

// want == 0 asks only for 2-integrality; a negative want is an exact
// valuation (the "x odd" part of the case shapes).
bool const_matches(const CoefficientShape& c, long want_const, long want_linear) {
    const bool const_ok = want_const == 0 ? c.v2_const >= 0 : c.v2_const == want_const;
    const bool linear_ok = want_linear == 0 ? c.v2_linear >= 0 : c.v2_linear == want_linear;
    return const_ok && linear_ok && c.v2_rest >= 0;
}

std::pair<MPoly, MPoly> substituted_combos(int r, int delta) {
    auto [A, B] = integrality_combos(delta);
    const MPoly d_of_b =
        16 * MPoly::var("b") + MPoly::constant(Rat(r)).with_vars({"b"});
    return {A.substitute("d", d_of_b), B.substitute("d", d_of_b)};
}

CongruenceCase classify_combos(int r, int delta, const MPoly& A, const MPoly& B) {
    const CoefficientShape A0 = shape_of('A', 0, A);
    const CoefficientShape A1 = shape_of('A', 1, A);
    const CoefficientShape A2 = shape_of('A', 2, A);
    const CoefficientShape B0 = shape_of('B', 0, B);
    const CoefficientShape B1 = shape_of('B', 1, B);
    const CoefficientShape B2 = shape_of('B', 2, B);
    const CoefficientShape B3 = shape_of('B', 3, B);

    const bool family_a = A1.integral() && A2.integral();
    const bool family_b = B1.integral() && B2.integral() && B3.integral();
    const bool family_c =
        B3.integral() && B1.half_shifted() && B2.half_shifted();

    std::vector<std::string> matches;
    if (family_a && const_matches(A0, -2, -1)) matches.push_back("a1");
    if (family_a && const_matches(A0, -3, -1)) matches.push_back("a2");
    if (family_b && const_matches(B0, -1, 0)) matches.push_back("b1");
    if (family_b && const_matches(B0, -2, -1)) matches.push_back("b2");
    if (family_c && const_matches(B0, 0, -1)) matches.push_back("c0");
    if (family_c && const_matches(B0, -3, 0)) matches.push_back("c1");
    if (family_c && const_matches(B0, -2, -1)) matches.push_back("c2");

    if (matches.size() != 1) {
        std::ostringstream msg;
        msg << "cell r=" << r << " delta=" << delta << " matches "
            << matches.size() << " case shapes";
        for (const auto& m : matches) msg << " " << m;
        throw std::logic_error(msg.str());
    }

    CongruenceCase out;
    out.r = r;
    out.delta = delta;
    out.label = matches.front();
    out.conclusion = out.label == "c0" ? CellConclusion::BEven
                                       : CellConclusion::Contradiction;
    out.diagnostics = {A0, A1, A2, B0, B1, B2, B3};
    return out;
}

}  // namespace

CongruenceCase classify(int r, int delta) {
    check_residue(r);
    check_delta(delta);
    const auto [A, B] = substituted_combos(r, delta);
    return classify_combos(r, delta, A, B);
}

namespace {

constexpr int kResidues[6] = {3, 5, 7, -7, -5, -3};
constexpr const char* kExpected[4][6] = {
    {"c0", "a2", "b1", "a1", "c2", "a2"},
    {"a2", "c2", "a1", "b1", "a2", "c0"},
    {"c1", "a2", "b2", "a1", "c1", "a2"},
    {"a2", "c1", "a1", "b2", "a2", "c1"},
};

CongruenceCase classify_perturbed(int r, int delta,
                                  const std::vector<const Perturbation*>& hits) {
    auto [A, B] = substituted_combos(r, delta);
    const std::vector<std::string> ab = {"a", "b"};
    for (const Perturbation* p : hits) {
        MPoly& target = p->source == 'B' ? B : A;
        const MPoly bump =
            MPoly::var("a").with_vars(ab).pow(static_cast<unsigned>(p->a_power)) *
            MPoly::var("b").with_vars(ab).pow(static_cast<unsigned>(p->b_power)) *
            p->amount;
        target += bump;
    }
    return classify_combos(r, delta, A, B);
}

}  // namespace

TableReport verify_table(const std::vector<Perturbation>& perturb) {
    TableReport report;
    report.pass = true;
    std::vector<std::pair<int, int>> survivors;
    for (int row = 0; row < 4; ++row) {
        const int delta = 2 * row;
        for (int col = 0; col < 6; ++col) {
            const int r = kResidues[col];
            CellReport cr;
            cr.r = r;
            cr.delta = delta;
            cr.expected = kExpected[row][col];
            try {
                std::vector<const Perturbation*> hits;
                for (const auto& p : perturb)
                    if (p.r == r && p.delta == delta) hits.push_back(&p);
                const CongruenceCase c = hits.empty()
                                             ? classify(r, delta)
                                             : classify_perturbed(r, delta, hits);
                cr.label = c.label;
                cr.diagnostics = c.diagnostics;
                cr.ok = c.label == cr.expected;
                if (!cr.ok)
                    cr.detail = "classified as " + c.label + ", table says " + cr.expected;
                else if (c.conclusion == CellConclusion::BEven)
                    survivors.emplace_back(r, delta);
            } catch (const std::logic_error& e) {
                cr.ok = false;
                cr.detail = e.what();
            }
            report.pass = report.pass && cr.ok;
            report.cells.push_back(cr);
        }
    }

    const bool expected_survivors =
        survivors == std::vector<std::pair<int, int>>{{3, 0}, {-3, 2}};
    report.pass = report.pass && expected_survivors;
    if (report.pass) {
        report.conclusions = {
            "22 of 24 cells are contradictory; only r=3 delta=0 and r=-3 "
            "delta=2 admit integer solutions, and then b must be even",
            "with b even, d = 16b + r lies in 3 + 32Z or 29 + 32Z",
        };
    }
    return report;
}

std::vector<std::pair<int, int>> scan_clearances(int r, int delta) {
    const auto [A, B] = substituted_combos(r, delta);
    std::vector<std::pair<int, int>> clear;
    for (int a = 0; a < 32; ++a) {
        for (int b = 0; b < 32; ++b) {
            const std::map<std::string, Rat> point = {{"a", Rat(a)},
                                                      {"b", Rat(b)}};
            if (v2(A.eval(point)) >= 0 && v2(B.eval(point)) >= 0)
                clear.emplace_back(a, b);
        }
    }
    return clear;
}

}  // namespace tsd
