#pragma once

#include "tsd/numeric.hpp"

#include <iosfwd>
#include <string>

namespace tsd {

// Exact element a + b*sqrt(D) of Q(sqrt(D)), D a squarefree integer > 1.
// Rationals carry D == 0 and combine freely with scalars of any field;
// mixing two distinct irrational fields throws std::invalid_argument.
class Scalar {
public:
    Scalar() : a_(0), b_(0), disc_(0) {}
    Scalar(const Rat& a) : a_(a), b_(0), disc_(0) {}
    Scalar(long a) : a_(a), b_(0), disc_(0) {}
    Scalar(const Rat& a, const Rat& b, long disc);

    const Rat& rational_part() const { return a_; }
    const Rat& radical_part() const { return b_; }
    long disc() const { return disc_; }

    bool is_rational() const { return b_ == 0; }
    bool is_integer() const { return b_ == 0 && tsd::is_integer(a_); }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    // a - b*sqrt(D)
    Scalar conjugate() const { return Scalar(a_, -b_, disc_); }
    // field norm a^2 - b^2 D
    Rat field_norm() const { return Rat(a_ * a_ - b_ * b_ * disc_); }
    Scalar inverse() const;

    Scalar operator-() const { return Scalar(Rat(-a_), Rat(-b_), disc_); }
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
    friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
    friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
    friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }

    friend bool operator==(const Scalar& x, const Scalar& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.disc_ == y.disc_;
    }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

    // total order used for deterministic containers: numeric order within a
    // field (compares via conjugate-free squaring), lexicographic fallback
    bool less(const Scalar& o) const;

    Scalar pow(unsigned long k) const;

    // "p/q", "p/q+r/s*sqrt(D)", "p/q-r/s*sqrt(D)", "r/s*sqrt(D)"
    std::string to_string() const;

    // Inverse of to_string.  expected_disc > 0 pins the field; literals with
    // a radical part must then use exactly that D.
    static Scalar parse(const std::string& text, long expected_disc = 0);

private:
    void merge_field(const Scalar& o);

    Rat a_, b_;
    long disc_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

struct ScalarLess {
    bool operator()(const Scalar& x, const Scalar& y) const { return x.less(y); }
};

} // namespace tsd
