#include "tsd/design.hpp"

#include "tsd/errors.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace tsd {

namespace {

Scalar scalar_int(long v) { return Scalar(Rat(v)); }

void validate_disc(long disc) {
    if (disc == 0) return;
    try {
        // Scalar's constructor owns the squarefree check
        Scalar probe(Rat(0), Rat(1), disc);
        (void)probe;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("D must be 0 or a squarefree integer > 1, got " +
                                    std::to_string(disc));
    }
}

} // namespace

Scalar inner(const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("inner product of vectors of different lengths");
    Scalar total(Rat(0));
    for (size_t i = 0; i < x.size(); ++i) total += x[i] * y[i];
    return total;
}

Scalar abs_value(const Scalar& s) {
    return s.less(Scalar(Rat(0))) ? -s : s;
}

Design::Design(long n, Scalar d, long disc, std::vector<std::vector<Scalar>> reps,
               std::string label)
    : n_(n), d_(std::move(d)), disc_(disc), reps_(std::move(reps)), label_(std::move(label)) {
    if (n_ < 1) throw std::invalid_argument("dimension must be at least 1");
    if (reps_.empty()) throw std::invalid_argument("design needs at least one vector");
    validate_disc(disc_);
    if (d_.less(Scalar(Rat(0))) || d_.is_zero())
        throw std::invalid_argument("squared radius d must be positive");
    if (d_.disc() != 0 && d_.disc() != disc_)
        throw std::invalid_argument("d lies outside the declared quadratic field");
    for (size_t r = 0; r < reps_.size(); ++r) {
        const auto& v = reps_[r];
        if (static_cast<long>(v.size()) != n_)
            throw std::invalid_argument("vector " + std::to_string(r + 1) +
                                        " has wrong length");
        for (const Scalar& e : v)
            if (e.disc() != 0 && e.disc() != disc_)
                throw std::invalid_argument("vector " + std::to_string(r + 1) +
                                            " lies outside the declared quadratic field");
        Scalar nrm = inner(v, v);
        if (nrm != d_)
            throw std::invalid_argument("vector " + std::to_string(r + 1) +
                                        " has squared norm " + nrm.to_string() +
                                        ", expected " + d_.to_string());
    }
    for (size_t i = 0; i < reps_.size(); ++i) {
        for (size_t j = i + 1; j < reps_.size(); ++j) {
            bool same = true, anti = true;
            for (long k = 0; k < n_; ++k) {
                if (reps_[i][static_cast<size_t>(k)] != reps_[j][static_cast<size_t>(k)])
                    same = false;
                if (reps_[i][static_cast<size_t>(k)] != -reps_[j][static_cast<size_t>(k)])
                    anti = false;
                if (!same && !anti) break;
            }
            if (same || anti)
                throw std::invalid_argument(
                    "vectors " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                    (same ? " coincide" : " are antipodal"));
        }
    }
}

const std::vector<std::string>& Design::builtin_names() {
    static const std::vector<std::string> names = {"e8", "e7dual", "icosahedron"};
    return names;
}

Design Design::builtin(const std::string& name) {
    if (name == "e8") {
        std::vector<std::vector<Scalar>> reps;
        for (long i = 0; i < 8; ++i) {
            for (long j = i + 1; j < 8; ++j) {
                for (int sign : {+1, -1}) {
                    std::vector<Scalar> v(8, scalar_int(0));
                    v[static_cast<size_t>(i)] = scalar_int(1);
                    v[static_cast<size_t>(j)] = scalar_int(sign);
                    reps.push_back(std::move(v));
                }
            }
        }
        Rat half(1, 2);
        for (unsigned mask = 0; mask < 128; ++mask) {
            if (__builtin_popcount(mask) % 2) continue;
            std::vector<Scalar> v(8, Scalar(half));
            for (unsigned b = 0; b < 7; ++b)
                if (mask & (1u << b)) v[b + 1] = Scalar(Rat(-half));
            reps.push_back(std::move(v));
        }
        return Design(8, scalar_int(2), 0, std::move(reps), "e8");
    }
    if (name == "e7dual") {
        static const int lines[7][3] = {{0, 1, 3}, {1, 2, 4}, {2, 3, 5}, {3, 4, 6},
                                        {4, 5, 0}, {5, 6, 1}, {6, 0, 2}};
        static const int patterns[4][3] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
        std::vector<std::vector<Scalar>> reps;
        for (const auto& line : lines) {
            for (const auto& pat : patterns) {
                std::vector<Scalar> v(7, scalar_int(0));
                for (int k = 0; k < 3; ++k)
                    v[static_cast<size_t>(line[k])] = scalar_int(pat[k]);
                reps.push_back(std::move(v));
            }
        }
        return Design(7, scalar_int(3), 0, std::move(reps), "e7dual");
    }
    if (name == "icosahedron") {
        Scalar zero(Rat(0)), one(Rat(1));
        Scalar phi(Rat(1, 2), Rat(1, 2), 5);
        std::vector<std::vector<Scalar>> reps = {
            {zero, one, phi},  {zero, one, -phi}, {one, phi, zero},
            {one, -phi, zero}, {phi, zero, one},  {phi, zero, -one}};
        return Design(3, Scalar(Rat(5, 2), Rat(1, 2), 5), 5, std::move(reps), "icosahedron");
    }
    throw std::invalid_argument("unknown builtin design '" + name + "'");
}

namespace {

struct HeaderSpec {
    long n = 0, disc = 0, s = 0;
    Scalar d;
};

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

Design load_design(std::istream& in) {
    static const char* keys[4] = {"n", "d", "D", "s"};
    HeaderSpec h;
    int header_idx = 0;
    std::string d_text;
    int d_line = 0;
    std::vector<std::vector<Scalar>> reps;
    std::string line;
    int lineno = 0;
    long expect_rows = -1;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = strip(line);
        if (t.empty() || t[0] == '#') continue;
        if (header_idx < 4) {
            auto eq = t.find('=');
            std::string key = eq == std::string::npos ? "" : strip(t.substr(0, eq));
            if (key != keys[header_idx])
                throw ParseError("expected header '" + std::string(keys[header_idx]) + "=...'",
                                 lineno);
            std::string val = strip(t.substr(eq + 1));
            auto as_long = [&]() {
                try {
                    size_t used = 0;
                    long x = std::stol(val, &used);
                    if (used != val.size()) throw std::invalid_argument(val);
                    return x;
                } catch (const std::exception&) {
                    throw ParseError("bad integer '" + val + "'", lineno);
                }
            };
            switch (header_idx) {
            case 0:
                h.n = as_long();
                if (h.n < 1) throw ParseError("n must be positive", lineno);
                break;
            case 1:
                d_text = val; // parsed once D is known
                d_line = lineno;
                break;
            case 2:
                h.disc = as_long();
                if (h.disc < 0) throw ParseError("D must be nonnegative", lineno);
                break;
            case 3:
                h.s = as_long();
                if (h.s < 1) throw ParseError("s must be positive", lineno);
                try {
                    h.d = Scalar::parse(d_text, h.disc);
                } catch (const ParseError& e) {
                    throw ParseError(std::string("in d header: ") + e.what(), d_line);
                }
                expect_rows = h.s;
                break;
            }
            ++header_idx;
            continue;
        }
        if (expect_rows == 0) throw ParseError("unexpected content after vector rows", lineno);
        std::istringstream ss(t);
        std::vector<Scalar> row;
        std::string tok;
        while (ss >> tok) {
            try {
                row.push_back(Scalar::parse(tok, h.disc));
            } catch (ParseError& e) {
                throw ParseError(e.what(), lineno);
            }
        }
        if (static_cast<long>(row.size()) != h.n)
            throw ParseError("expected " + std::to_string(h.n) + " coordinates, found " +
                                 std::to_string(row.size()),
                             lineno);
        reps.push_back(std::move(row));
        --expect_rows;
    }
    if (header_idx < 4) throw ParseError("missing header '" + std::string(keys[header_idx]) + "='");
    if (expect_rows != 0)
        throw ParseError("expected " + std::to_string(h.s) + " vector rows, found " +
                         std::to_string(reps.size()));
    try {
        return Design(h.n, h.d, h.disc, std::move(reps));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

Design load_design_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open design file '" + path + "'");
    return load_design(in);
}

void save_design(const Design& dsg, std::ostream& out) {
    out << "n=" << dsg.dim() << "\n";
    out << "d=" << dsg.norm().to_string() << "\n";
    out << "D=" << dsg.disc() << "\n";
    out << "s=" << dsg.rep_count() << "\n";
    for (const auto& v : dsg.reps()) {
        for (size_t i = 0; i < v.size(); ++i) {
            if (i) out << " ";
            out << v[i].to_string();
        }
        out << "\n";
    }
}

void save_design_file(const Design& dsg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    save_design(dsg, out);
    if (!out.good()) throw ParseError("write failure on '" + path + "'");
}

Scalar moment_sum(const Design& dsg, const std::vector<Scalar>& alpha, unsigned k) {
    if (static_cast<long>(alpha.size()) != dsg.dim())
        throw std::invalid_argument("alpha has wrong length");
    if (k % 2) return Scalar(Rat(0)); // x and -x cancel
    Scalar total(Rat(0));
    for (const auto& x : dsg.reps()) total += inner(x, alpha).pow(k);
    return Scalar(Rat(2)) * total;
}

namespace {

// enumerate exponent vectors of fixed total degree, sharing partial products
void tensor_walk(const Design& dsg, size_t i, unsigned remaining,
                 std::vector<unsigned>& exps, std::vector<Scalar> partials,
                 std::map<std::vector<unsigned>, Scalar>& out) {
    size_t n = static_cast<size_t>(dsg.dim());
    if (i + 1 == n) {
        exps[i] = remaining;
        Scalar total(Rat(0));
        for (size_t r = 0; r < partials.size(); ++r)
            total += partials[r] * dsg.reps()[r][i].pow(remaining);
        if (!total.is_zero())
            out[exps] = Scalar(Rat(2)) * Scalar(Rat(multinomial(exps))) * total;
        exps[i] = 0;
        return;
    }
    for (unsigned e = 0;; ++e) {
        exps[i] = e;
        tensor_walk(dsg, i + 1, remaining - e, exps, partials, out);
        exps[i] = 0;
        if (e == remaining) break;
        for (size_t r = 0; r < partials.size(); ++r) partials[r] *= dsg.reps()[r][static_cast<size_t>(i)];
    }
}

Rat rat_of(const Int& x) { return Rat(x); }

} // namespace

SymmetricMomentTensor moment_tensor(const Design& dsg, unsigned degree) {
    SymmetricMomentTensor t;
    t.n = dsg.dim();
    t.degree = degree;
    if (degree == 0) {
        t.coeff[std::vector<unsigned>(static_cast<size_t>(dsg.dim()), 0u)] =
            Scalar(Rat(dsg.size()));
        return t;
    }
    if (degree % 2) return t; // antipodal cancellation
    std::vector<unsigned> exps(static_cast<size_t>(dsg.dim()), 0u);
    std::vector<Scalar> partials(dsg.reps().size(), Scalar(Rat(1)));
    tensor_walk(dsg, 0, degree, exps, std::move(partials), t.coeff);
    return t;
}

namespace {

void power_walk(long n, size_t i, unsigned remaining_half, std::vector<unsigned>& halves,
                const Scalar& c, std::map<std::vector<unsigned>, Scalar>& out) {
    size_t nn = static_cast<size_t>(n);
    if (i + 1 == nn) {
        halves[i] = remaining_half;
        std::vector<unsigned> exps(halves.size());
        for (size_t k = 0; k < halves.size(); ++k) exps[k] = 2 * halves[k];
        Scalar v = c * Scalar(rat_of(multinomial(halves)));
        if (!v.is_zero()) out[exps] = v;
        halves[i] = 0;
        return;
    }
    for (unsigned e = 0; e <= remaining_half; ++e) {
        halves[i] = e;
        power_walk(n, i + 1, remaining_half - e, halves, c, out);
        halves[i] = 0;
    }
}

} // namespace

SymmetricMomentTensor power_tensor(long n, unsigned degree, const Scalar& c) {
    if (degree % 2) throw std::invalid_argument("power_tensor needs an even degree");
    SymmetricMomentTensor t;
    t.n = n;
    t.degree = degree;
    if (c.is_zero()) return t;
    std::vector<unsigned> halves(static_cast<size_t>(n), 0u);
    power_walk(n, 0, degree / 2, halves, c, t.coeff);
    return t;
}

SymmetricMomentTensor laplacian(const SymmetricMomentTensor& t) {
    if (t.degree < 2) throw std::invalid_argument("laplacian needs degree >= 2");
    SymmetricMomentTensor out;
    out.n = t.n;
    out.degree = t.degree - 2;
    for (const auto& [e, c] : t.coeff) {
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 2) continue;
            std::vector<unsigned> ne = e;
            ne[i] -= 2;
            Scalar add = c * Scalar(Rat(static_cast<long>(e[i]) * (e[i] - 1)));
            auto [it, fresh] = out.coeff.emplace(std::move(ne), add);
            if (!fresh) it->second += add;
        }
    }
    for (auto it = out.coeff.begin(); it != out.coeff.end();)
        it = it->second.is_zero() ? out.coeff.erase(it) : std::next(it);
    return out;
}

SymmetricMomentTensor scaled(SymmetricMomentTensor t, const Scalar& c) {
    if (c.is_zero()) {
        t.coeff.clear();
        return t;
    }
    for (auto& [e, v] : t.coeff) v *= c;
    return t;
}

Scalar moment_constant(const Design& dsg, unsigned degree) {
    long n = dsg.dim();
    Scalar s(Rat(dsg.size()));
    const Scalar& d = dsg.norm();
    switch (degree) {
    case 2: return s * d * Scalar(Rat(1, n));
    case 4: return s * d * d * Scalar(make_rat(3, Int(n) * (n + 2)));
    case 6: return s * d * d * d * Scalar(make_rat(15, Int(n) * (n + 2) * (n + 4)));
    default: throw std::invalid_argument("moment constant defined for degrees 2, 4, 6");
    }
}

StrengthCertificate strength_certificate(const Design& dsg, int t) {
    if (t < 1 || t > 7 || t % 2 == 0)
        throw std::invalid_argument("strength certificate supports odd t in 1..7");
    StrengthCertificate cert;
    cert.t = t;
    cert.pass = true;
    for (unsigned k = 1; 2 * k <= static_cast<unsigned>(t - 1); ++k) {
        SymmetricMomentTensor lhs = moment_tensor(dsg, 2 * k);
        SymmetricMomentTensor rhs = power_tensor(dsg.dim(), 2 * k, moment_constant(dsg, 2 * k));
        if (lhs == rhs) continue;
        cert.pass = false;
        // first differing exponent vector in lex order
        auto li = lhs.coeff.begin();
        auto ri = rhs.coeff.begin();
        StrengthCertificate::Mismatch m;
        m.degree = 2 * k;
        while (true) {
            if (li == lhs.coeff.end() && ri == rhs.coeff.end()) break;
            bool take_l = ri == rhs.coeff.end() ||
                          (li != lhs.coeff.end() && li->first <= ri->first);
            bool take_r = li == lhs.coeff.end() ||
                          (ri != rhs.coeff.end() && ri->first <= li->first);
            const std::vector<unsigned>& e = take_l ? li->first : ri->first;
            Scalar lv = take_l ? li->second : Scalar(Rat(0));
            Scalar rv = take_r ? ri->second : Scalar(Rat(0));
            if (lv != rv) {
                m.exponents = e;
                m.lhs = lv;
                m.rhs = rv;
                break;
            }
            if (take_l) ++li;
            if (take_r) ++ri;
        }
        cert.witness = std::move(m);
        return cert;
    }
    return cert;
}

namespace {

Scalar mixed_sum(const Design& dsg, const std::vector<Scalar>& alpha,
                 const std::vector<Scalar>& beta, unsigned p, unsigned q) {
    Scalar total(Rat(0));
    for (const auto& x : dsg.reps())
        total += inner(x, alpha).pow(p) * inner(x, beta).pow(q);
    // p + q even in every identity used here
    return Scalar(Rat(2)) * total;
}

} // namespace

MixedMomentReport mixed_moment_report(const Design& dsg, const std::vector<Scalar>& alpha,
                                      const std::vector<Scalar>& beta) {
    if (static_cast<long>(alpha.size()) != dsg.dim() ||
        static_cast<long>(beta.size()) != dsg.dim())
        throw std::invalid_argument("direction vector has wrong length");
    int strength = 0;
    if (strength_certificate(dsg, 7).pass) strength = 7;
    else if (strength_certificate(dsg, 5).pass) strength = 5;
    else throw std::invalid_argument("mixed moment identities need a 5-design");

    Scalar aa = inner(alpha, alpha), bb = inner(beta, beta), ab = inner(alpha, beta);
    Scalar c2 = moment_constant(dsg, 2);
    Scalar c4 = moment_constant(dsg, 4);

    MixedMomentReport rep;
    rep.strength = strength;
    auto add = [&](const std::string& label, unsigned p, unsigned q, const Scalar& rhs) {
        Scalar lhs = mixed_sum(dsg, alpha, beta, p, q);
        rep.entries.push_back({label, lhs, rhs, lhs == rhs});
    };
    add("D11", 1, 1, c2 * ab);
    add("D13", 1, 3, c4 * ab * bb);
    add("D22", 2, 2, c4 / Scalar(Rat(3)) * (Scalar(Rat(2)) * ab * ab + aa * bb));
    if (strength == 7) {
        Scalar c6 = moment_constant(dsg, 6);
        add("D15", 1, 5, c6 * bb * bb * ab);
        add("D24", 2, 4,
            c6 / Scalar(Rat(5)) * (bb * bb * aa + Scalar(Rat(4)) * ab * ab * bb));
        add("D33", 3, 3,
            c6 / Scalar(Rat(5)) *
                (Scalar(Rat(2)) * ab.pow(3) + Scalar(Rat(3)) * aa * bb * ab));
    }
    rep.all_ok = true;
    for (const auto& e : rep.entries)
        if (!e.ok) rep.all_ok = false;
    return rep;
}

Int tight_cardinality(long n, int t) {
    if (n < 2 || t < 1) throw std::invalid_argument("tight_cardinality needs n >= 2, t >= 1");
    if (t % 2) {
        long m = (t - 1) / 2;
        return 2 * binomial(static_cast<unsigned long>(n - 1 + m),
                            static_cast<unsigned long>(m));
    }
    long m = t / 2;
    return binomial(static_cast<unsigned long>(n - 1 + m), static_cast<unsigned long>(m)) +
           binomial(static_cast<unsigned long>(n - 2 + m), static_cast<unsigned long>(m - 1));
}

InnerProductSpectrum inner_product_spectrum(const Design& dsg) {
    InnerProductSpectrum sp;
    const auto& reps = dsg.reps();
    for (size_t i = 0; i < reps.size(); ++i)
        for (size_t j = i + 1; j < reps.size(); ++j)
            sp.counts[abs_value(inner(reps[i], reps[j]))] += 1;
    Scalar zero(Rat(0)), one(Rat(1));
    sp.tight5_compatible = true;
    sp.tight7_compatible = true;
    for (const auto& [v, cnt] : sp.counts) {
        if (v != one) sp.tight5_compatible = false;
        if (v != one && v != zero) sp.tight7_compatible = false;
    }
    return sp;
}

MomentProfile moment_profile(const Design& dsg, const std::vector<Scalar>& alpha) {
    if (static_cast<long>(alpha.size()) != dsg.dim())
        throw std::invalid_argument("alpha has wrong length");
    MomentProfile prof;
    for (const auto& x : dsg.reps()) {
        Scalar ip = abs_value(inner(x, alpha));
        if (!ip.is_integer())
            throw UnsupportedInput("inner product " + ip.to_string() +
                                   " is not a rational integer");
        prof.counts[ip.rational_part().get_num()] += 1;
    }
    prof.tight7_shape = Int(dsg.size()) == tight_cardinality(dsg.dim(), 7);
    if (prof.tight7_shape && dsg.norm().is_rational()) {
        Rat d = dsg.norm().rational_part();
        Scalar aa = inner(alpha, alpha);
        if (aa.is_rational()) {
            Rat N = aa.rational_part();
            Rat d2 = d * d;
            std::array<Rat, 4> target = {
                Rat((3 * d2 - 4) * (3 * d2 - 2) * (d2 - 1) / 2),
                Rat((3 * d2 - 2) * (d2 - 1) * d * N / 2),
                Rat(3 * (d2 - 1) * d2 * N * N / 2),
                Rat(5 * (d2 - 1) * d * N * N * N / 2),
            };
            std::array<Rat, 4> sums = {Rat(0), Rat(0), Rat(0), Rat(0)};
            for (const auto& [k, cnt] : prof.counts) {
                Rat kq(k);
                Rat k2 = kq * kq;
                sums[0] += cnt;
                sums[1] += k2 * cnt;
                sums[2] += k2 * k2 * cnt;
                sums[3] += k2 * k2 * k2 * cnt;
            }
            std::array<Rat, 4> res;
            for (int i = 0; i < 4; ++i) res[i] = sums[i] - target[i];
            prof.residuals = res;
        }
    }
    return prof;
}

} // namespace tsd
