#include "tsd/sieve.hpp"

#include <algorithm>
#include <exception>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "tsd/errors.hpp"

namespace tsd {

namespace {

// Half-set moment constants: sum of (x,alpha)^2k over one point per
// antipodal pair equals c_2k times the matching power of (alpha,alpha).
Rat c2_of(long n, const Rat& d, const Rat& s) { return s * d / Rat(n); }

Rat c4_of(long n, const Rat& d, const Rat& s) {
    return 3 * s * d * d / Rat(n * (n + 2));
}

Rat c6_of(long n, const Rat& d, const Rat& s) {
    return 15 * s * d * d * d / Rat(n * (n + 2) * (n + 4));
}

}  // namespace

CheckPair check_D4mD2(long n, const Rat& d, const Rat& s, const Rat& norm_aa,
                      const Rat& ip_ab) {
    if (n < 1) throw std::invalid_argument("dimension must be positive");
    const Rat c2 = c2_of(n, d, s);
    const Rat c4 = c4_of(n, d, s);
    // (1/12) sum (x,a)^4 - (x,a)^2  and  (1/6) sum (x,b)((x,a)^3 - (x,a)).
    const Rat first = (c4 * norm_aa * norm_aa - c2 * norm_aa) / 12;
    const Rat second = (c4 * norm_aa - c2) * ip_ab / 6;
    return {is_integer(first), is_integer(second)};
}

CheckPair check_D15(long n, const Rat& d, const Rat& s, const Rat& norm_aa,
                    const Rat& norm_bb, const Rat& ip_ab) {
    if (n < 1) throw std::invalid_argument("dimension must be positive");
    const Rat c2 = c2_of(n, d, s);
    const Rat c4 = c4_of(n, d, s);
    const Rat c6 = c6_of(n, d, s);
    const Rat first =
        ip_ab * (c6 * norm_aa * norm_aa - 5 * c4 * norm_aa + 4 * c2) / 120;
    const Rat second =
        ip_ab *
        (c4 * (d / Rat(n + 4) * (2 * ip_ab * ip_ab + 3 * norm_aa * norm_bb) -
               norm_aa - norm_bb) +
         c2) /
        36;
    return {is_integer(first), is_integer(second)};
}

CheckPair check_div(const Rat& d, const Rat& norm_aa, const Rat& ip_ab) {
    const Rat k = d * d * d - d;
    const Rat first =
        k * ip_ab * (12 * d * d - 8 - 15 * d * norm_aa + 5 * norm_aa * norm_aa) /
        240;
    return {is_integer(first), check_div_pair(d, norm_aa, norm_aa, ip_ab)};
}

bool check_div_pair(const Rat& d, const Rat& norm_aa, const Rat& norm_bb,
                    const Rat& ip_ab) {
    const Rat k = d * d * d - d;
    const Rat value = k * ip_ab *
                      (3 * norm_aa * norm_bb - 3 * d * (norm_aa + norm_bb) +
                       2 * ip_ab * ip_ab + 3 * d * d - 2) /
                      72;
    return is_integer(value);
}

bool check_div3(long m, const Rat& norm_aa) {
    if (m < 1) throw std::invalid_argument("m must be positive");
    const Rat value =
        Rat(m) * Rat(m + 1) * norm_aa * (3 * norm_aa - (2 * m + 1)) / 6;
    return is_integer(value);
}

long CubicValuations::v2() const {
    auto it = valuations.find(2);
    return it == valuations.end() ? 0 : it->second;
}

long CubicValuations::v3() const {
    auto it = valuations.find(3);
    return it == valuations.end() ? 0 : it->second;
}

long CubicValuations::max_vp_ge5() const {
    long best = 0;
    for (const auto& [p, e] : valuations)
        if (p >= 5) best = std::max(best, e);
    return best;
}

CubicValuations cubic_valuations(long d, long factor_bound) {
    if (d < 2) throw std::invalid_argument("d must be at least 2");
    CubicValuations out;
    out.d = d;
    // d-1, d, d+1 are pairwise coprime up to the shared factor 2 of the two
    // even neighbours of an odd d; exponents merge additively either way.
    for (long part : {d - 1, d, d + 1}) {
        if (part < 2) continue;
        for (const auto& [p, e] : factor_trial(Int(part), factor_bound))
            out.valuations[p] += e;
    }
    out.v2_of_d = (d % 2 == 0) ? padic_val(Rat(d), Int(2)).value : 0;
    return out;
}

bool DualIntegrality::all_norm_p_integral() const {
    return std::all_of(norm_p_integral.begin(), norm_p_integral.end(),
                       [](const auto& pr) { return pr.second; });
}

DualIntegrality kdiv_guarantees(long d, long factor_bound) {
    DualIntegrality out;
    out.cubic = cubic_valuations(d, factor_bound);
    for (const auto& [p, e] : out.cubic.valuations)
        if (p >= 5) out.norm_p_integral.emplace_back(p, e <= 2);
    out.norm_3_integral = out.cubic.v3() <= 4;
    out.norm_2_integral = out.cubic.v2() <= 6;
    const bool even = d % 2 == 0;
    out.norm_2_positive = even && d % 8 != 0;
    out.ip_2_integral_even = even && d % 32 != 0;
    // For odd d, v2(d^2-1) = v2(d^3-d).
    out.ip_2_integral_odd = !even && out.cubic.v2() <= 4;
    return out;
}

std::string to_string(Status s) {
    switch (s) {
        case Status::Excluded: return "Excluded";
        case Status::Open: return "Open";
        case Status::KnownExists: return "KnownExists";
    }
    return "?";
}

Registry Registry::prior_work() {
    Registry r;
    r.add(5, 3, "BMV");
    r.add(5, 4, "BMV");
    r.add(7, 4, "BMV");
    r.add(7, 5, "BMV");
    return r;
}

void Registry::add(int t, long param, const std::string& tag) {
    if (t != 5 && t != 7) throw std::invalid_argument("registry t must be 5 or 7");
    if (param < 1) throw std::invalid_argument("registry parameter must be positive");
    if (tag.empty()) throw std::invalid_argument("registry source tag is empty");
    const bool known = (t == 7 && (param == 2 || param == 3)) ||
                       (t == 5 && (param == 1 || param == 2));
    if (known) {
        std::ostringstream msg;
        msg << "registry entry t=" << t << " param=" << param
            << " conflicts with a known design";
        throw std::invalid_argument(msg.str());
    }
    entries_[{t, param}].push_back(tag);
    ++count_;
}

std::vector<std::string> Registry::tags(int t, long param) const {
    auto it = entries_.find({t, param});
    return it == entries_.end() ? std::vector<std::string>{} : it->second;
}

Registry Registry::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open registry file: " + path);
    Registry r;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream row(line);
        std::string first;
        if (!(row >> first) || first[0] == '#') continue;
        std::string second, third, extra;
        if (!(row >> second >> third) || (row >> extra))
            throw ParseError("expected `t=<5|7> param=<int> source=<tag>`", lineno);
        auto value_of = [&](const std::string& token, const std::string& key) {
            if (token.rfind(key + "=", 0) != 0)
                throw ParseError("expected `" + key + "=...`, got `" + token + "`", lineno);
            return token.substr(key.size() + 1);
        };
        const std::string t_text = value_of(first, "t");
        const std::string param_text = value_of(second, "param");
        const std::string tag = value_of(third, "source");
        try {
            r.add(std::stoi(t_text), std::stol(param_text), tag);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), lineno);
        } catch (const std::out_of_range&) {
            throw ParseError("registry parameter out of range", lineno);
        }
    }
    return r;
}

namespace {

std::string odd_part_summary(const CubicValuations& c) {
    std::ostringstream s;
    s << "v3(d^3-d)=" << c.v3();
    long worst_p = 0, worst_e = 0;
    for (const auto& [p, e] : c.valuations)
        if (p >= 5 && e > worst_e) worst_p = p, worst_e = e;
    if (worst_p)
        s << ", max v_p(d^3-d) for p>=5 is " << worst_e << " at p=" << worst_p;
    else
        s << ", no prime p>=5 divides d^3-d";
    return s.str();
}

void apply_registry(Verdict& v, const Registry& registry) {
    for (const auto& tag : registry.tags(v.t, v.param)) {
        std::ostringstream hyp;
        hyp << "t=" << v.t << " param=" << v.param << " source=" << tag;
        v.reasons.push_back({"REGISTRY:" + tag,
                             "excluded by prior work", hyp.str()});
        v.registry_hits.push_back(tag);
    }
}

}  // namespace

Verdict verdict7(long d, const Registry& registry, long factor_bound) {
    if (d < 2) throw std::invalid_argument("d must be at least 2");
    Verdict v;
    v.t = 7;
    v.param = d;
    v.dim = 3LL * d * d - 4;
    if (d == 2 || d == 3) {
        v.status = Status::KnownExists;
        v.notes.push_back(d == 2 ? "realized by the 240 minimal vectors of the E8 lattice"
                                 : "realized by 4600 norm-3 vectors of the shorter Leech lattice");
        return v;
    }
    const CubicValuations cubic = cubic_valuations(d, factor_bound);
    const long r16 = ((d % 16) + 16) % 16;
    const long r32 = ((d % 32) + 32) % 32;
    const bool odd = d % 2 != 0;

    if (!odd && cubic.v2_of_d >= 2 && cubic.v2_of_d <= 4 && cubic.odd_part_small()) {
        std::ostringstream hyp;
        hyp << "v2(d)=" << cubic.v2_of_d << ", " << odd_part_summary(cubic);
        v.reasons.push_back(
            {"T-v2deq3",
             "no tight 7-design exists when v2(d) is 2, 3 or 4 and the odd part "
             "of d^3-d has v3 <= 4 and v_p <= 2 for p >= 5",
             hyp.str()});
    }
    if (odd && r16 != 1 && r16 != 15 && r32 != 3 && r32 != 29) {
        std::ostringstream hyp;
        hyp << "d mod 16 = " << r16 << ", d mod 32 = " << r32;
        v.reasons.push_back(
            {"T-oddd-a",
             "for odd d the determinant class of the design lattice forces "
             "d = +-1 mod 16 or d = +-3 mod 32",
             hyp.str()});
    }
    if (odd && r16 == 13 && cubic.odd_part_small()) {
        std::ostringstream hyp;
        hyp << "d mod 16 = 13, " << odd_part_summary(cubic);
        v.reasons.push_back(
            {"T-oddd-b",
             "odd d = -3 mod 16 is excluded when the odd part of d^3-d has "
             "v3 <= 4 and v_p <= 2 for p >= 5",
             hyp.str()});
    }
    apply_registry(v, registry);
    v.status = v.reasons.empty() ? Status::Open : Status::Excluded;

    if (v.status == Status::Open) {
        if (odd && r32 == 3)
            v.notes.push_back("any example must have det(Lambda) in (Z_2^*)^2");
        if (odd && r32 == 29) {
            v.notes.push_back("any example must have det(Lambda) in 3*(Z_2^*)^2");
            v.notes.push_back("escapes exclusion because the odd part of d^3-d "
                              "is not small enough: " + odd_part_summary(cubic));
        }
        if (!odd && cubic.v2_of_d >= 2 && cubic.v2_of_d <= 4)
            v.notes.push_back("escapes exclusion because the odd part of d^3-d "
                              "is not small enough: " + odd_part_summary(cubic));
    }
    return v;
}

Verdict verdict5(long m, const Registry& registry, long factor_bound) {
    if (m < 1) throw std::invalid_argument("m must be at least 1");
    Verdict v;
    v.t = 5;
    v.param = m;
    const long long dd = 2LL * m + 1;
    v.dim = dd * dd - 2;
    if (m == 1 || m == 2) {
        v.status = Status::KnownExists;
        v.notes.push_back(m == 1 ? "realized by the 56 minimal vectors of the dual of E7"
                                 : "realized by the 552 minimal vectors of a 23-dimensional lattice");
        return v;
    }

    std::map<long, long> mm1;  // prime -> v_p(m(m+1))
    for (long part : {m, m + 1})
        for (const auto& [p, e] : factor_trial(Int(part), factor_bound))
            mm1[p] += e;
    long odd_square = 0;
    for (const auto& [p, e] : mm1)
        if (p >= 3 && e >= 2) { odd_square = p; break; }
    const bool even = m % 2 == 0;
    const bool v2_ok = even && m % 8 != 0;
    const long r3 = m % 3;

    if (even && v2_ok && odd_square == 0 && r3 != 2) {
        std::ostringstream hyp;
        hyp << "v2(m)=" << (even ? padic_val(Rat(m), Int(2)).value : 0)
            << ", m(m+1)=" << m * (m + 1)
            << " has no odd square factor, m mod 3 = " << r3;
        v.reasons.push_back(
            {"T-5even",
             "for even m with 8 not dividing m and m(m+1) free of odd square "
             "factors, the discriminant form forces m = -1 mod 3",
             hyp.str()});
    }
    apply_registry(v, registry);
    v.status = v.reasons.empty() ? Status::Open : Status::Excluded;

    if (v.status == Status::Open && even) {
        if (!v2_ok)
            v.notes.push_back("escapes exclusion: 8 divides m");
        else if (odd_square != 0)
            v.notes.push_back("escapes exclusion: m(m+1) is divisible by " +
                              std::to_string(odd_square) + "^2");
        else
            v.notes.push_back("m = -1 mod 3, consistent with the discriminant "
                              "form of any example");
    }
    return v;
}

std::vector<Verdict> run_sieve(int t, long lo, long hi,
                               const Registry& registry, long factor_bound,
                               int jobs) {
    if (t != 5 && t != 7) throw std::invalid_argument("t must be 5 or 7");
    if (lo < 2 || lo > hi || hi > 1000000)
        throw std::invalid_argument("need 2 <= lo <= hi <= 10^6");

    std::vector<Verdict> out(static_cast<std::size_t>(hi - lo + 1));
    auto compute = [&](std::size_t i) {
        const long param = lo + static_cast<long>(i);
        out[i] = (t == 7) ? verdict7(param, registry, factor_bound)
                          : verdict5(param, registry, factor_bound);
    };

    const std::size_t total = out.size();
    std::size_t workers = jobs < 1 ? 1 : static_cast<std::size_t>(jobs);
    workers = std::min(workers, total);
    if (workers <= 1) {
        for (std::size_t i = 0; i < total; ++i) compute(i);
        return out;
    }

    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < total; i += workers) compute(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
    return out;
}

}  // namespace tsd
