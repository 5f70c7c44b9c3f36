#include "tsd/numeric.hpp"

#include "tsd/errors.hpp"

#include <stdexcept>

namespace tsd {

Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Rat parse_rat(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    auto slash = text.find('/');
    auto check_int = [&](const std::string& s) {
        if (s.empty()) throw ParseError("bad rational literal '" + text + "'");
        size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw ParseError("bad rational literal '" + text + "'");
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9')
                throw ParseError("bad rational literal '" + text + "'");
    };
    if (slash == std::string::npos) {
        check_int(text);
        return Rat(Int(text));
    }
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    check_int(num);
    check_int(den);
    Int d(den);
    if (d == 0) throw ParseError("zero denominator in '" + text + "'");
    return make_rat(Int(num), d);
}

std::string rat_to_string(const Rat& x) {
    return x.get_str();
}

bool is_integer(const Rat& x) {
    return x.get_den() == 1;
}

Rat mod_rat(const Rat& x, long m) {
    if (m <= 0) throw std::invalid_argument("modulus must be positive");
    // x - m*floor(x/m)
    Rat q = x / m;
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    Rat r = x - Rat(fl) * m;
    r.canonicalize();
    return r;
}

bool is_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

PadicValuation padic_val(const Rat& x, const Int& p) {
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("p must be prime");
    PadicValuation out;
    out.prime = p;
    if (x == 0) {
        out.infinite = true;
        return out;
    }
    Int num = x.get_num();
    Int den = x.get_den();
    Int tmp;
    unsigned long vn = mpz_remove(tmp.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
    unsigned long vd = mpz_remove(tmp.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    out.value = static_cast<long>(vn) - static_cast<long>(vd);
    return out;
}

long v2(const Rat& x) {
    if (x == 0) return kValuationInfinity;
    return padic_val(x, 2).value;
}

std::map<long, int> factor_trial(const Int& n, long bound) {
    if (n <= 0) throw std::invalid_argument("factor_trial expects n > 0");
    std::map<long, int> out;
    Int rest = n;
    auto strip = [&](long p) {
        int e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++e;
        }
        if (e) out[p] = e;
    };
    strip(2);
    strip(3);
    for (long p = 5; p <= bound && rest > 1; p += (p % 6 == 5) ? 2 : 4) {
        if (Int(p) * p > rest) break;
        strip(p);
    }
    if (rest > 1) {
        if (is_prime(rest)) {
            if (!rest.fits_slong_p())
                throw BoundExceeded("prime factor too large to tabulate");
            long p = rest.get_si();
            out[p] += 1;
        } else if (Int(bound) * bound >= rest) {
            // composite below bound^2 with no prime factor <= bound is impossible;
            // defensive, can only mean a logic error upstream
            throw BoundExceeded("factorization inconsistency");
        } else {
            throw BoundExceeded("composite cofactor above factorization bound " +
                                std::to_string(bound));
        }
    }
    return out;
}

Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Int multinomial(const std::vector<unsigned>& e) {
    unsigned long total = 0;
    for (unsigned x : e) total += x;
    Int r = 1;
    Int fact;
    mpz_fac_ui(r.get_mpz_t(), total);
    for (unsigned x : e) {
        mpz_fac_ui(fact.get_mpz_t(), x);
        mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), fact.get_mpz_t());
    }
    return r;
}

} // namespace tsd
