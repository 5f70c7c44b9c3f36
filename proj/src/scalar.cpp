#include "tsd/scalar.hpp"

#include "tsd/errors.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace tsd {

namespace {

bool is_squarefree(long d) {
    long n = d;
    for (long p = 2; p * p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return false;
        }
    }
    // n now has at most two prime factors
    Int rest(n);
    return mpz_perfect_square_p(rest.get_mpz_t()) == 0 || n == 1;
}

// sign of a + b*sqrt(D), D > 0
int sign_of(const Rat& a, const Rat& b, long disc) {
    int sa = sgn(a);
    int sb = sgn(b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 with b^2 D
    int cmpsq = cmp(a * a, b * b * Rat(disc));
    if (cmpsq == 0) return 0; // impossible for squarefree D > 1, kept for safety
    return cmpsq > 0 ? sa : sb;
}

} // namespace

Scalar::Scalar(const Rat& a, const Rat& b, long disc) : a_(a), b_(b), disc_(disc) {
    if (b_ == 0) {
        disc_ = 0;
        return;
    }
    if (disc_ <= 1) throw std::invalid_argument("radical discriminant must exceed 1");
    if (!is_squarefree(disc_))
        throw std::invalid_argument("radical discriminant must be squarefree");
}

void Scalar::merge_field(const Scalar& o) {
    if (disc_ == o.disc_ || o.disc_ == 0) return;
    if (disc_ == 0) {
        disc_ = o.disc_;
        return;
    }
    throw std::invalid_argument("cannot combine scalars from distinct quadratic fields");
}

Scalar& Scalar::operator+=(const Scalar& o) {
    merge_field(o);
    a_ += o.a_;
    b_ += o.b_;
    if (b_ == 0) disc_ = 0;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    merge_field(o);
    a_ -= o.a_;
    b_ -= o.b_;
    if (b_ == 0) disc_ = 0;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    merge_field(o);
    Rat na = a_ * o.a_ + b_ * o.b_ * Rat(disc_);
    Rat nb = a_ * o.b_ + b_ * o.a_;
    a_ = na;
    b_ = nb;
    if (b_ == 0) disc_ = 0;
    return *this;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero scalar");
    if (b_ == 0) return Scalar(Rat(1 / a_));
    Rat nrm = field_norm(); // nonzero: sqrt(D) is irrational
    return Scalar(Rat(a_ / nrm), Rat(-b_ / nrm), disc_);
}

Scalar& Scalar::operator/=(const Scalar& o) {
    return *this *= o.inverse();
}

bool Scalar::less(const Scalar& o) const {
    if (disc_ == o.disc_ || disc_ == 0 || o.disc_ == 0) {
        long d = std::max(disc_, o.disc_);
        return sign_of(a_ - o.a_, b_ - o.b_, d == 0 ? 2 : d) < 0;
    }
    // distinct fields: fall back to a stable structural order
    if (disc_ != o.disc_) return disc_ < o.disc_;
    return false;
}

Scalar Scalar::pow(unsigned long k) const {
    Scalar acc(Rat(1));
    Scalar base = *this;
    while (k) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

std::string Scalar::to_string() const {
    if (b_ == 0) return rat_to_string(a_);
    std::string rad = rat_to_string(abs(b_)) + "*sqrt(" + std::to_string(disc_) + ")";
    if (a_ == 0) return (b_ < 0 ? "-" : "") + rad;
    return rat_to_string(a_) + (b_ < 0 ? "-" : "+") + rad;
}

Scalar Scalar::parse(const std::string& raw, long expected_disc) {
    std::string text;
    text.reserve(raw.size());
    for (char c : raw)
        if (c != ' ' && c != '\t') text.push_back(c);
    if (text.empty()) throw ParseError("empty scalar literal");

    // split into at most two terms at a '+'/'-' that is not leading and not
    // inside sqrt(...)
    std::vector<std::string> terms;
    size_t start = 0;
    int depth = 0;
    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '(') ++depth;
        else if (c == ')') --depth;
        else if ((c == '+' || c == '-') && i > start && depth == 0) {
            terms.push_back(text.substr(start, i - start));
            start = i; // sign stays with the next term
        }
    }
    terms.push_back(text.substr(start));
    if (terms.size() > 2) throw ParseError("too many terms in scalar '" + raw + "'");

    Rat a(0), b(0);
    long disc = 0;
    bool saw_rat = false, saw_rad = false;
    for (std::string term : terms) {
        bool neg = false;
        if (!term.empty() && (term[0] == '+' || term[0] == '-')) {
            neg = term[0] == '-';
            term.erase(0, 1);
        }
        auto sq = term.find("sqrt(");
        if (sq == std::string::npos) {
            if (saw_rat) throw ParseError("two rational terms in scalar '" + raw + "'");
            a = parse_rat(term);
            if (neg) a = -a;
            saw_rat = true;
            continue;
        }
        if (saw_rad) throw ParseError("two radical terms in scalar '" + raw + "'");
        if (term.back() != ')') throw ParseError("bad radical in scalar '" + raw + "'");
        std::string inner = term.substr(sq + 5, term.size() - sq - 6);
        if (inner.empty() || inner.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("bad radicand in scalar '" + raw + "'");
        long d = std::stol(inner);
        Rat coeff(1);
        if (sq > 0) {
            if (term[sq - 1] != '*') throw ParseError("bad radical in scalar '" + raw + "'");
            coeff = parse_rat(term.substr(0, sq - 1));
        }
        if (neg) coeff = -coeff;
        b = coeff;
        disc = d;
        saw_rad = true;
    }
    if (saw_rad && expected_disc > 0 && disc != expected_disc)
        throw ParseError("radicand " + std::to_string(disc) + " does not match declared D=" +
                         std::to_string(expected_disc));
    if (saw_rad && b != 0) {
        if (disc <= 1) throw ParseError("radicand must exceed 1 in '" + raw + "'");
        if (!is_squarefree(disc)) throw ParseError("radicand must be squarefree in '" + raw + "'");
        return Scalar(a, b, disc);
    }
    return Scalar(a);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    return os << s.to_string();
}

} // namespace tsd
