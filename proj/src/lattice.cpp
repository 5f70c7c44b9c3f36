#include "tsd/lattice.hpp"

#include "tsd/errors.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tsd {

namespace {

void check_square_symmetric(const RatMat& g) {
    size_t n = g.size();
    if (n == 0) throw std::invalid_argument("empty Gram matrix");
    for (const auto& row : g)
        if (row.size() != n) throw std::invalid_argument("Gram matrix is not square");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (g[i][j] != g[j][i])
                throw std::invalid_argument("Gram matrix is not symmetric");
}

// determinant via symmetric elimination; pivots certify positive definiteness
Rat definite_det(RatMat g) {
    size_t n = g.size();
    Rat det(1);
    for (size_t k = 0; k < n; ++k) {
        if (g[k][k] <= 0)
            throw std::invalid_argument("Gram matrix is not positive definite");
        det *= g[k][k];
        for (size_t i = k + 1; i < n; ++i) {
            if (g[i][k] == 0) continue;
            Rat f = g[i][k] / g[k][k];
            for (size_t j = k; j < n; ++j) g[i][j] -= f * g[k][j];
        }
    }
    return det;
}

RatMat rat_inverse(RatMat a) {
    size_t n = a.size();
    RatMat inv(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw std::invalid_argument("matrix is singular");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rat p = a[col][col];
        for (size_t j = 0; j < n; ++j) {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col] == 0) continue;
            Rat f = a[i][col];
            for (size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

IntMat gram_to_int(const Lattice& L, const char* who) {
    if (!L.integral())
        throw std::invalid_argument(std::string(who) + " requires an integral lattice");
    size_t n = static_cast<size_t>(L.rank());
    IntMat g(n, std::vector<Int>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) g[i][j] = L.gram()[i][j].get_num();
    return g;
}

} // namespace

Lattice::Lattice(RatMat gram, std::optional<RatMat> basis)
    : gram_(std::move(gram)), basis_(std::move(basis)) {
    check_square_symmetric(gram_);
    det_ = definite_det(gram_);
    if (basis_) {
        if (basis_->size() != gram_.size())
            throw std::invalid_argument("basis row count does not match the Gram rank");
    }
}

bool Lattice::integral() const {
    for (const auto& row : gram_)
        for (const Rat& x : row)
            if (!is_integer(x)) return false;
    return true;
}

bool Lattice::even() const {
    if (!integral()) return false;
    for (size_t i = 0; i < gram_.size(); ++i)
        if (mpz_odd_p(gram_[i][i].get_num().get_mpz_t())) return false;
    return true;
}

IntMat hnf(IntMat rows) {
    if (rows.empty()) return rows;
    size_t m = rows.size(), n = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != n) throw std::invalid_argument("ragged matrix");

    size_t r = 0; // next pivot row
    for (size_t col = 0; col < n && r < m; ++col) {
        // clear the column below r with euclidean steps, smallest pivot first
        while (true) {
            size_t best = m;
            for (size_t i = r; i < m; ++i) {
                if (rows[i][col] == 0) continue;
                if (best == m || cmp(abs(rows[i][col]), abs(rows[best][col])) < 0) best = i;
            }
            if (best == m) break; // column is zero from r down
            std::swap(rows[r], rows[best]);
            bool clean = true;
            for (size_t i = r + 1; i < m; ++i) {
                if (rows[i][col] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[r][col].get_mpz_t());
                if (q != 0)
                    for (size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
                if (rows[i][col] != 0) clean = false;
            }
            if (clean) {
                if (rows[r][col] < 0)
                    for (size_t j = 0; j < n; ++j) rows[r][j] = -rows[r][j];
                // canonical reduction of the entries above the pivot
                for (size_t i = 0; i < r; ++i) {
                    Int q;
                    mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(),
                               rows[r][col].get_mpz_t());
                    if (q != 0)
                        for (size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
                }
                ++r;
                break;
            }
        }
    }
    rows.resize(r);
    return rows;
}

RatMat rational_vectors(const Design& dsg) {
    RatMat out;
    out.reserve(dsg.reps().size());
    for (const auto& v : dsg.reps()) {
        std::vector<Rat> row;
        row.reserve(v.size());
        for (const Scalar& e : v) {
            if (!e.is_rational())
                throw UnsupportedInput("design has irrational coordinates; "
                                       "lattice operations need rational vectors");
            row.push_back(e.rational_part());
        }
        out.push_back(std::move(row));
    }
    return out;
}

Lattice lattice_from_vectors(const RatMat& vectors) {
    if (vectors.empty()) throw std::invalid_argument("no spanning vectors");
    size_t n = vectors[0].size();
    Int scale(1);
    for (const auto& v : vectors) {
        if (v.size() != n) throw std::invalid_argument("vectors of mixed lengths");
        for (const Rat& x : v) {
            Int den = x.get_den();
            Int g;
            mpz_gcd(g.get_mpz_t(), scale.get_mpz_t(), den.get_mpz_t());
            scale = scale / g * den;
        }
    }
    IntMat rows(vectors.size(), std::vector<Int>(n));
    for (size_t i = 0; i < vectors.size(); ++i)
        for (size_t j = 0; j < n; ++j) {
            Rat v = vectors[i][j] * Rat(scale);
            rows[i][j] = v.get_num();
        }
    IntMat h = hnf(std::move(rows));
    if (h.size() != n)
        throw std::invalid_argument("vectors span rank " + std::to_string(h.size()) +
                                    " < " + std::to_string(n));
    RatMat basis(n, std::vector<Rat>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) basis[i][j] = make_rat(h[i][j], scale);
    RatMat gram(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            Rat s(0);
            for (size_t k = 0; k < n; ++k) s += basis[i][k] * basis[j][k];
            gram[i][j] = gram[j][i] = s;
        }
    return Lattice(std::move(gram), std::move(basis));
}

RatMat dual_gram(const Lattice& L) {
    return rat_inverse(L.gram());
}

ParityInfo parity_and_det(const Lattice& L) {
    ParityInfo p;
    p.integral = L.integral();
    p.even = L.even();
    p.det = L.det();
    if (p.integral) p.det_odd = mpz_odd_p(p.det.get_num().get_mpz_t());
    return p;
}

SmithForm smith_form(IntMat A) {
    size_t m = A.size();
    if (m == 0) throw std::invalid_argument("empty matrix");
    size_t n = A[0].size();
    SmithForm out;
    out.U.assign(m, std::vector<Int>(m, Int(0)));
    out.V.assign(n, std::vector<Int>(n, Int(0)));
    for (size_t i = 0; i < m; ++i) out.U[i][i] = 1;
    for (size_t j = 0; j < n; ++j) out.V[j][j] = 1;

    auto row_sub = [&](size_t dst, size_t src, const Int& q) {
        for (size_t j = 0; j < n; ++j) A[dst][j] -= q * A[src][j];
        for (size_t j = 0; j < m; ++j) out.U[dst][j] -= q * out.U[src][j];
    };
    auto col_sub = [&](size_t dst, size_t src, const Int& q) {
        for (size_t i = 0; i < m; ++i) A[i][dst] -= q * A[i][src];
        for (size_t i = 0; i < n; ++i) out.V[i][dst] -= q * out.V[i][src];
    };

    size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        while (true) {
            size_t bi = m, bj = n;
            for (size_t i = t; i < m; ++i)
                for (size_t j = t; j < n; ++j) {
                    if (A[i][j] == 0) continue;
                    if (bi == m || cmp(abs(A[i][j]), abs(A[bi][bj])) < 0) {
                        bi = i;
                        bj = j;
                    }
                }
            if (bi == m) goto done; // remaining block is zero
            if (bi != t) {
                std::swap(A[bi], A[t]);
                std::swap(out.U[bi], out.U[t]);
            }
            if (bj != t) {
                for (size_t i = 0; i < m; ++i) std::swap(A[i][bj], A[i][t]);
                for (size_t i = 0; i < n; ++i) std::swap(out.V[i][bj], out.V[i][t]);
            }
            bool clean = true;
            for (size_t i = t + 1; i < m; ++i) {
                if (A[i][t] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), A[i][t].get_mpz_t(), A[t][t].get_mpz_t());
                if (q != 0) row_sub(i, t, q);
                if (A[i][t] != 0) clean = false;
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (A[t][j] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), A[t][j].get_mpz_t(), A[t][t].get_mpz_t());
                if (q != 0) col_sub(j, t, q);
                if (A[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            // divisibility fix-up: the pivot must divide the rest of the block
            bool fixed = true;
            for (size_t i = t + 1; i < m && fixed; ++i)
                for (size_t j = t + 1; j < n && fixed; ++j)
                    if (!mpz_divisible_p(A[i][j].get_mpz_t(), A[t][t].get_mpz_t())) {
                        row_sub(t, i, Int(-1)); // fold row i into the pivot row
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (A[t][t] < 0) {
            for (size_t j = 0; j < n; ++j) A[t][j] = -A[t][j];
            for (size_t j = 0; j < m; ++j) out.U[t][j] = -out.U[t][j];
        }
    }
done:
    out.diag.resize(std::min(m, n), Int(0));
    for (size_t i = 0; i < out.diag.size(); ++i) out.diag[i] = A[i][i];
    return out;
}

std::vector<Int> snf_invariants(const Lattice& L) {
    return smith_form(gram_to_int(L, "snf_invariants")).diag;
}

namespace {

// coset representative with coordinates in [0,1)
std::vector<Rat> frac_coords(const std::vector<Rat>& v) {
    std::vector<Rat> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = mod_rat(v[i], 1);
    return out;
}

Rat form_value(const RatMat& gram, const std::vector<Rat>& x, const std::vector<Rat>& y) {
    Rat s(0);
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (size_t j = 0; j < y.size(); ++j) s += x[i] * gram[i][j] * y[j];
    }
    return s;
}

} // namespace

DiscGroup discriminant_form(const Lattice& L, const Int& bound) {
    IntMat g = gram_to_int(L, "discriminant_form");
    size_t n = g.size();
    SmithForm sf = smith_form(g);
    DiscGroup out;
    out.form_is_even = L.even();
    out.group_order = 1;
    for (const Int& d : sf.diag) out.group_order *= d;
    out.group_order = abs(out.group_order);
    if (out.group_order > bound)
        throw BoundExceeded("discriminant group of order " + out.group_order.get_str() +
                            " exceeds bound " + bound.get_str());

    for (size_t i = 0; i < sf.diag.size(); ++i) {
        if (sf.diag[i] <= 1) continue;
        std::vector<Rat> gen(n);
        for (size_t k = 0; k < n; ++k) gen[k] = make_rat(sf.V[k][i], sf.diag[i]);
        out.orders.push_back(sf.diag[i]);
        out.gens.push_back(frac_coords(gen));
    }

    size_t k = out.orders.size();
    out.gen_bilinear.assign(k, std::vector<Rat>(k, Rat(0)));
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < k; ++j)
            out.gen_bilinear[i][j] = mod_rat(form_value(L.gram(), out.gens[i], out.gens[j]), 1);
        if (out.form_is_even)
            out.gen_q.push_back(mod_rat(form_value(L.gram(), out.gens[i], out.gens[i]), 2));
    }

    // lexicographic enumeration over the generator indices
    std::vector<Int> idx(k, Int(0));
    while (true) {
        DiscGroup::Element el;
        el.index = idx;
        std::vector<Rat> coords(n, Rat(0));
        for (size_t i = 0; i < k; ++i)
            for (size_t c = 0; c < n; ++c) coords[c] += Rat(idx[i]) * out.gens[i][c];
        el.coords = frac_coords(coords);
        if (out.form_is_even) el.q = mod_rat(form_value(L.gram(), el.coords, el.coords), 2);
        out.elements.push_back(std::move(el));

        size_t pos = k;
        while (pos > 0) {
            --pos;
            idx[pos] += 1;
            if (idx[pos] < out.orders[pos]) break;
            idx[pos] = 0;
            if (pos == 0) return out;
        }
        if (k == 0) return out;
    }
}

namespace {

// q(sum c_i h_i) from the generator data: sum c_i^2 q(h_i) + 2 sum_{i<j} c_i c_j b(h_i,h_j)
Rat q_of_combination(const std::vector<long>& c, const std::vector<Rat>& hq,
                     const RatMat& hb) {
    Rat q(0);
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        q += Rat(c[i]) * Rat(c[i]) * hq[i];
        for (size_t j = i + 1; j < c.size(); ++j)
            q += 2 * Rat(c[i]) * Rat(c[j]) * hb[i][j];
    }
    return mod_rat(q, 2);
}

} // namespace

GaussSumReport gauss_sum(const DiscGroup& G) {
    if (!G.form_is_even)
        throw UnsupportedInput("gauss_sum needs the quadratic refinement of an even lattice");
    // exp(pi i q) with q of denominator v lands in conductor 2v
    Int den_lcm = 1;
    for (const auto& el : G.elements)
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), el.q.get_den().get_mpz_t());
    Int cond = 2 * den_lcm;
    mpz_lcm_ui(cond.get_mpz_t(), cond.get_mpz_t(), 8);
    long N = cond.get_si();

    GaussSumReport rep;
    rep.conductor = N;
    rep.group_order = G.group_order;
    auto phase = [&](const Rat& q) {
        Rat e = q * Rat(N) / 2;
        return Cyclo::root(N, e.get_num().get_si()); // integral by conductor choice
    };
    Cyclo total(N);
    for (const auto& el : G.elements) total += phase(el.q);
    rep.total = total;

    std::map<long, int> primes;
    for (const Int& d : G.orders)
        for (const auto& [p, e] : factor_trial(d, 1 << 20)) primes[p] += e;

    Cyclo prod = Cyclo::integer(N, 1);
    for (const auto& [p, ptot] : primes) {
        // p-part generators h_i = (d_i / p^e_i) g_i of order p^e_i
        std::vector<long> sub_orders;
        std::vector<Rat> hq;
        std::vector<size_t> which;
        std::vector<long> mult;
        for (size_t i = 0; i < G.orders.size(); ++i) {
            Int d = G.orders[i];
            long pe = 1;
            while (mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(p))) {
                d /= p;
                pe *= p;
            }
            if (pe == 1) continue;
            long m = d.get_si();
            sub_orders.push_back(pe);
            which.push_back(i);
            mult.push_back(m);
            hq.push_back(mod_rat(Rat(m) * Rat(m) * G.gen_q[i], 2));
        }
        RatMat hb(which.size(), std::vector<Rat>(which.size(), Rat(0)));
        for (size_t i = 0; i < which.size(); ++i)
            for (size_t j = 0; j < which.size(); ++j)
                hb[i][j] = mod_rat(Rat(mult[i]) * Rat(mult[j]) *
                                       G.gen_bilinear[which[i]][which[j]],
                                   1);
        Cyclo sp(N);
        std::vector<long> idx(sub_orders.size(), 0);
        while (true) {
            sp += phase(q_of_combination(idx, hq, hb));
            size_t pos = idx.size();
            bool carried_out = true;
            while (pos > 0) {
                --pos;
                if (++idx[pos] < sub_orders[pos]) {
                    carried_out = false;
                    break;
                }
                idx[pos] = 0;
            }
            if (carried_out) break;
        }
        rep.sylow.emplace_back(p, sp);
        prod = prod * sp;
    }
    rep.sylow_product_ok = prod == total;

    auto mag = (total * total.conj()).as_integer();
    rep.magnitude_ok = mag.has_value() && *mag == G.group_order;

    // normalized eighth root: total == zeta_8^u * c * sqrt(f), |group| = c^2 f
    Int c = 1;
    long f = 1;
    std::vector<long> f_odd_primes;
    for (const auto& [p, e] : factor_trial(G.group_order, 1 << 20)) {
        for (int i = 0; i < e / 2; ++i) c *= p;
        if (e % 2) {
            f *= p;
            if (p != 2) f_odd_primes.push_back(p);
        }
    }
    Int mm(N);
    for (long p : f_odd_primes)
        mpz_lcm_ui(mm.get_mpz_t(), mm.get_mpz_t(), static_cast<unsigned long>(p));
    long M = mm.get_si();
    Cyclo sq = sqrt_as_cyclo(f, M);
    sq *= c;
    Cyclo lifted = total.lifted(M);
    for (int u = 0; u < 8; ++u) {
        if (lifted == Cyclo::root(M, u * (M / 8)) * sq) {
            rep.eighth_root = u;
            break;
        }
    }
    return rep;
}

MilgramReport milgram_check(const Lattice& L, const Int& bound) {
    if (!L.even())
        throw UnsupportedInput("milgram_check applies to even integral lattices");
    DiscGroup G = discriminant_form(L, bound);
    MilgramReport rep;
    rep.expected = static_cast<int>(L.rank() % 8);
    rep.sum = gauss_sum(G);
    rep.got = rep.sum.eighth_root;
    rep.pass = rep.got.has_value() && *rep.got == rep.expected;
    return rep;
}

EvenSplit even_sublattice(const Lattice& L) {
    IntMat g = gram_to_int(L, "even_sublattice");
    if (L.even()) throw std::invalid_argument("lattice is already even");
    size_t n = g.size();
    size_t pivot = n;
    std::vector<int> parity(n);
    for (size_t i = 0; i < n; ++i) {
        parity[i] = mpz_odd_p(g[i][i].get_mpz_t()) ? 1 : 0;
        if (parity[i] && pivot == n) pivot = i;
    }
    IntMat C(n, std::vector<Int>(n, Int(0)));
    for (size_t i = 0; i < n; ++i) {
        if (i == pivot) {
            C[i][i] = 2;
        } else if (parity[i]) {
            C[i][i] = 1;
            C[i][pivot] = 1;
        } else {
            C[i][i] = 1;
        }
    }
    // gram of the sublattice: C G C^T
    RatMat plus(n, std::vector<Rat>(n, Rat(0)));
    IntMat cg(n, std::vector<Int>(n, Int(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Int s = 0;
            for (size_t k = 0; k < n; ++k) s += C[i][k] * g[k][j];
            cg[i][j] = s;
        }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Int s = 0;
            for (size_t k = 0; k < n; ++k) s += cg[i][k] * C[j][k];
            plus[i][j] = Rat(s);
        }
    RatMat half(n, std::vector<Rat>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) half[i][j] = Rat(plus[i][j] / 2);

    std::optional<RatMat> plus_basis;
    if (L.basis()) {
        RatMat pb(n, std::vector<Rat>(static_cast<size_t>((*L.basis())[0].size()), Rat(0)));
        for (size_t i = 0; i < n; ++i)
            for (size_t k = 0; k < n; ++k) {
                if (C[i][k] == 0) continue;
                for (size_t j = 0; j < pb[i].size(); ++j)
                    pb[i][j] += Rat(C[i][k]) * (*L.basis())[k][j];
            }
        plus_basis = std::move(pb);
    }

    EvenSplit out(Lattice(plus, std::move(plus_basis)), Lattice(half));
    out.coords = std::move(C);
    out.index_two = out.lambda_plus.det() == 4 * L.det();
    out.gamma_integral = out.gamma.integral();
    out.gamma_even = out.gamma.even();
    out.plus_in_two_dual = true;
    for (size_t i = 0; i < n && out.plus_in_two_dual; ++i)
        for (size_t j = 0; j < n; ++j)
            if (mpz_odd_p(cg[i][j].get_mpz_t())) {
                out.plus_in_two_dual = false;
                break;
            }
    return out;
}

CharVector characteristic_vector(const Lattice& L) {
    IntMat g = gram_to_int(L, "characteristic_vector");
    if (mpz_even_p(L.det().get_num().get_mpz_t()))
        throw std::invalid_argument("characteristic vector needs an odd determinant");
    size_t n = g.size();
    // solve (G mod 2) c = diag(G) mod 2
    std::vector<std::vector<int>> a(n, std::vector<int>(n + 1));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j)
            a[i][j] = mpz_odd_p(g[i][j].get_mpz_t()) ? 1 : 0;
        a[i][n] = a[i][i];
    }
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && !a[piv][col]) ++piv;
        if (piv == n) throw std::logic_error("Gram matrix singular mod 2 despite odd det");
        std::swap(a[piv], a[col]);
        for (size_t i = 0; i < n; ++i) {
            if (i == col || !a[i][col]) continue;
            for (size_t j = col; j <= n; ++j) a[i][j] ^= a[col][j];
        }
    }
    CharVector cv;
    cv.coords.resize(n);
    for (size_t i = 0; i < n; ++i) cv.coords[i] = a[i][n];
    Int norm = 0;
    for (size_t i = 0; i < n; ++i) {
        if (cv.coords[i] == 0) continue;
        for (size_t j = 0; j < n; ++j)
            if (cv.coords[j] != 0) norm += g[i][j];
    }
    cv.norm = norm;
    cv.norm_mod8 = static_cast<int>(mpz_fdiv_ui(norm.get_mpz_t(), 8));
    return cv;
}

long two_adic_square_class(const Int& x) {
    if (mpz_even_p(x.get_mpz_t()))
        throw std::invalid_argument("two_adic_square_class needs an odd argument");
    return static_cast<long>(mpz_fdiv_ui(x.get_mpz_t(), 8));
}

} // namespace tsd
